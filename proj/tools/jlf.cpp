// jlf: Fourier coefficients of Jacobi-Eisenstein and Jacobi-Poincare series of lattice index.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jlf/jlf.hpp"
#include "jlf/verify.hpp"

using namespace jlf;
using json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, VerifyFailed = 1, Validation = 2, Computation = 3 };

struct Options {
    std::string lattice;
    int k = 0;
    std::string r, x;
    std::string D;
    std::string n_max = "3";
    std::int64_t c_max = 1000;
    std::int64_t B = 5000;
    bool B_given = false;
    std::string mode = "exact";
    std::string output;
    std::string format = "json";
    std::string suite = "all";
};

std::vector<std::int64_t> parse_coords(const std::string& text)
{
    std::vector<std::int64_t> out;
    if (text.empty())
        return out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "malformed coordinate '" + item + "'");
        }
    }
    return out;
}

/// Discriminant-group element from comma-separated coordinates; empty means 0.
std::size_t element_from(const EvenLattice& L, const std::string& text)
{
    auto coords = parse_coords(text);
    if (coords.empty())
        coords.assign(L.factor_orders().size(), 0);
    return L.index_of(coords);
}

json coords_of(const EvenLattice& L, std::size_t x) { return coords_json(L, x); }

std::string render_double(double v)
{
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

std::string render_value(const Coefficient& c)
{
    if (const auto* q = std::get_if<Rational>(&c))
        return to_string(*q);
    const auto z = std::get<std::complex<double>>(c);
    return render_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + render_double(std::abs(z.imag())) + "i";
}

std::string render_coords(const json& j)
{
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i)
        s += (i ? "," : "") + std::to_string(j[i].get<std::int64_t>());
    return s + ")";
}

std::string expansion_table(const FourierExpansion& e)
{
    auto entries = e.entries;
    std::stable_sort(entries.begin(), entries.end(), [](const ExpansionEntry& a, const ExpansionEntry& b) {
        return a.index.n != b.index.n ? a.index.n < b.index.n : a.index.x < b.index.x;
    });
    std::ostringstream s;
    s << std::left << std::setw(10) << "n" << std::setw(12) << "x" << std::setw(12) << "D" << "coefficient\n";
    for (const auto& entry : entries)
        s << std::left << std::setw(10) << to_string(entry.index.n) << std::setw(12)
          << render_coords(coords_of(e.lattice, entry.index.x)) << std::setw(12) << to_string(entry.index.D)
          << render_value(entry.value) << "\n";
    if (e.tail_estimate)
        s << "tail_estimate " << render_double(*e.tail_estimate) << "\n";
    return s.str();
}

/// Writes to a sibling temporary file and renames it into place, so failures leave no partial output.
void emit(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << "\n";
        return;
    }
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        out << text;
        if (!text.empty() && text.back() != '\n')
            out << "\n";
        if (!out.flush())
            throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot rename onto " + target.string());
    }
}

std::string render_expansion(const FourierExpansion& e, const Options& o)
{
    return o.format == "table" ? expansion_table(e) : to_json(e).dump(2);
}

int cmd_info(const Options& o)
{
    const auto L = load_lattice(o.lattice);
    json j;
    j["name"] = L.name();
    j["gram"] = L.gram();
    j["rank"] = L.rank();
    j["det"] = L.det();
    j["level"] = L.level();
    j["delta"] = L.delta();
    j["factor_orders"] = L.factor_orders();
    auto iso = json::array();
    for (const auto& e : isotropy_set(L))
        iso.push_back({{"coords", coords_of(L, e.index)}, {"order", e.order}, {"beta", to_string(L.min_beta(e.index))}});
    j["iso"] = iso;
    if (o.format == "table") {
        std::ostringstream s;
        s << "name    " << L.name() << "\nrank    " << L.rank() << "\ndet     " << L.det() << "\nlevel   " << L.level()
          << "\ndelta   " << L.delta() << "\norders  " << j["factor_orders"].dump() << "\niso\n";
        for (const auto& e : iso)
            s << "  " << render_coords(e["coords"]) << "  order " << e["order"].get<std::int64_t>() << "  beta "
              << e["beta"].get<std::string>() << "\n";
        emit(s.str(), o.output);
    } else {
        emit(j.dump(2), o.output);
    }
    return Ok;
}

int cmd_eisenstein(const Options& o)
{
    const auto L = load_lattice(o.lattice);
    const Rational n_max = parse_rational(o.n_max);
    const std::size_t r = element_from(L, o.r);
    const auto spec = make_eisenstein_spec(L, o.k, r);
    const Mode mode = o.mode == "exact" ? Mode::Exact : Mode::Numeric;
    FourierExpansion e;
    if (mode == Mode::Numeric && o.B_given) {
        // trivial coefficients from the representation-number series truncated at B
        if (r != 0)
            throw Error(ErrorKind::InvalidArgument, "-B selects the representation-number series, which needs r = 0");
        e = singular_term(spec, n_max);
        e.mode = Mode::Numeric;
        for (auto& entry : e.entries)
            entry.value = as_complex(entry.value);
        for (const auto& f : enumerate_supp(L, n_max))
            if (f.D != 0)
                e.entries.push_back({f, std::complex<double>(trivial_coefficient_series(L, o.k, f.D, f.x, o.B), 0.0)});
        std::stable_sort(e.entries.begin(), e.entries.end(), [](const ExpansionEntry& a, const ExpansionEntry& b) {
            return a.index.n != b.index.n ? a.index.n < b.index.n : a.index.x < b.index.x;
        });
    } else {
        e = eisenstein_expansion(spec, n_max, mode, o.c_max);
    }
    emit(render_expansion(e, o), o.output);
    return Ok;
}

int cmd_poincare(const Options& o)
{
    const auto L = load_lattice(o.lattice);
    if (o.D.empty())
        throw Error(ErrorKind::InvalidArgument, "poincare needs -D");
    const Rational n_max = parse_rational(o.n_max);
    const Rational D = parse_rational(o.D);
    const auto spec = make_poincare_spec(L, o.k, D, element_from(L, o.r));
    emit(render_expansion(poincare_expansion(spec, n_max, o.c_max), o), o.output);
    return Ok;
}

json matrix_json(const RepMatrix& m)
{
    auto rows = json::array();
    for (std::size_t i = 0; i < m.n; ++i) {
        auto row = json::array();
        for (std::size_t j = 0; j < m.n; ++j)
            row.push_back({{"re", m(i, j).real()}, {"im", m(i, j).imag()}});
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_rep(const Options& o)
{
    const auto L = load_lattice(o.lattice);
    json j;
    j["lattice"] = L.name();
    auto legend = json::array();
    for (std::size_t i = 0; i < L.group_size(); ++i)
        legend.push_back({{"index", i}, {"coords", coords_of(L, i)}, {"beta", to_string(L.element(i).beta_mod1)}});
    j["legend"] = legend;
    json mats;
    mats["rho(T)"] = matrix_json(rho_generator(L, Generator::T));
    mats["rho(S)"] = matrix_json(rho_generator(L, Generator::S));
    if (!o.x.empty()) {
        const std::size_t x = element_from(L, o.x);
        j["x"] = coords_of(L, x);
        mats["sigma_x(1,0,0)"] = matrix_json(schrodinger_matrix(L, x, 1, 0, 0));
        mats["sigma_x(0,1,0)"] = matrix_json(schrodinger_matrix(L, x, 0, 1, 0));
        mats["sigma_x(0,0,1)"] = matrix_json(schrodinger_matrix(L, x, 0, 0, 1));
        if (L.element(x).beta_mod1 == 0)
            mats["Av_x"] = matrix_json(averaging_matrix(L, x));
    }
    j["matrices"] = mats;
    emit(j.dump(2), o.output);
    return Ok;
}

int cmd_verify(const Options& o)
{
    if (!verify::is_suite(o.suite))
        throw Error(ErrorKind::InvalidArgument, "unknown suite '" + o.suite + "'");
    const auto results = verify::run_suite(o.suite, [](const verify::CheckResult& r) {
        std::cout << verify::format_line(r) << std::endl;
    });
    long passed = 0;
    for (const auto& r : results)
        passed += r.pass;
    std::cout << "summary: " << passed << " passed, " << results.size() - passed << " failed" << std::endl;
    return passed == static_cast<long>(results.size()) ? Ok : VerifyFailed;
}

int report(ErrorKind kind, const std::string& message)
{
    json j;
    j["error"] = std::string(to_string(kind));
    j["message"] = message;
    std::cerr << j.dump() << std::endl;
    return is_validation_error(kind) ? Validation : Computation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fourier coefficients of Jacobi-Eisenstein and Jacobi-Poincare series of lattice index"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--lattice", o.lattice, "lattice JSON file")->required();
        c->add_option("-o", o.output, "output file (written atomically)");
        c->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    };
    auto add_series = [&](CLI::App* c) {
        add_common(c);
        c->add_option("-k", o.k, "weight")->required();
        c->add_option("-r", o.r, "discriminant coordinates a,b,... of r (default 0)");
        c->add_option("--n-max", o.n_max, "largest q-exponent, p/q (default 3)");
        c->add_option("--c-max", o.c_max, "c-series truncation (default 1000)")->check(CLI::PositiveNumber);
    };

    auto* info = app.add_subcommand("info", "lattice invariants and isotropic classes");
    add_common(info);

    auto* eis = app.add_subcommand("eisenstein", "Jacobi-Eisenstein expansion");
    add_series(eis);
    eis->add_option("--mode", o.mode, "exact or numeric (default exact)")->check(CLI::IsMember({"exact", "numeric"}));
    eis->add_option("-B", o.B, "numeric mode, r = 0: use the representation-number series up to B")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { o.B_given = true; });

    auto* poi = app.add_subcommand("poincare", "Jacobi-Poincare expansion");
    add_series(poi);
    poi->add_option("-D", o.D, "index D < 0 of the Poincare series, p/q")->required();

    auto* rep = app.add_subcommand("rep", "Weil and Schrodinger representation matrices");
    add_common(rep);
    rep->add_option("-x", o.x, "discriminant coordinates of x for sigma_x and Av_x");

    auto* ver = app.add_subcommand("verify", "run the acceptance checks");
    ver->add_option("suite", o.suite, "all, exp_sums, eisenstein, poincare or weil (default all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(ErrorKind::InvalidArgument, e.what());
    }

    try {
        if (*info)
            return cmd_info(o);
        if (*eis)
            return cmd_eisenstein(o);
        if (*poi)
            return cmd_poincare(o);
        if (*rep)
            return cmd_rep(o);
        return cmd_verify(o);
    } catch (const Error& e) {
        return report(e.kind(), e.what());
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << std::endl;
        return Computation;
    }
}
