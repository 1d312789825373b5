#pragma once

// Acceptance checks shared by the jlf_acceptance binary and `jlf verify`.
// Every check returns one pass/fail record with a short detail line and its runtime.

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jlf/eisenstein.hpp"
#include "jlf/error.hpp"
#include "jlf/exp_sums.hpp"
#include "jlf/expansion.hpp"
#include "jlf/lattice.hpp"
#include "jlf/number_theory.hpp"
#include "jlf/poincare.hpp"
#include "jlf/weil.hpp"

namespace jlf::verify {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Check {
    int id;
    std::string name;
    std::string suite;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

namespace detail {

using C = std::complex<double>;

inline std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline std::vector<EvenLattice> test_lattices()
{
    return {make_lattice({{2}}, "A1"), make_lattice({{8}}, "L8"), make_lattice({{2, 1}, {1, 2}}, "A2"),
            make_lattice({{2, 0}, {0, 2}}, "Z2")};
}

inline DualVector negated(DualVector v)
{
    for (auto& q : v)
        q = -q;
    return v;
}

/// Cohen's H(r, N) built from Bernoulli-type L-values via the fundamental decomposition of -N.
inline Rational cohen_h(int r, std::int64_t N)
{
    const auto fd = fundamental_decomposition(-N);
    const QuadChar chi{fd.f};
    Rational s = 0;
    for (std::int64_t d : divisors(fd.d))
        s += moebius(d) * chi(d) * pow(Rational(d), r - 1) * sigma_twisted(QuadChar{1}, 2 * r - 1, fd.d / d);
    return dirichlet_L_nonpositive(r - 1, chi) * s;
}

/// Index-one coefficient H(k-1, N) / zeta(3-2k) with N = 4n - r^2.
inline Rational index_one_coefficient(int k, std::int64_t N)
{
    return cohen_h(k - 1, N) / dirichlet_L_nonpositive(2 * k - 3, QuadChar{1});
}

/// P_{k,[[2m]],D,r}(tau, z) summed from the coset sum over Gamma_inf \ SL2(Z), truncated at |c tau + d| <= R.
inline C poincare_defining_series(int m, int k, double D, double r, C tau, C z, double R)
{
    auto e = [](C w) { return std::exp(C(0, 2 * std::numbers::pi) * w); };
    const double v = tau.imag();
    C total = 0;
    const int c_max = static_cast<int>(R / v);
    for (int c = -c_max; c <= c_max; ++c) {
        const double centre = -c * tau.real();
        for (int d = static_cast<int>(std::floor(centre - R)); d <= static_cast<int>(std::ceil(centre + R)); ++d) {
            if (std::gcd(c, d) != 1)
                continue;
            const C j = C(c) * tau + C(d);
            if (std::abs(j) > R)
                continue;
            int a = 0, b = 0;
            for (int t = -std::abs(c) - std::abs(d) - 1; t <= std::abs(c) + std::abs(d) + 1; ++t) {
                if (c == 0) {
                    a = d, b = 0;
                    break;
                }
                if ((t * d - 1) % c == 0) {
                    a = t, b = (t * d - 1) / c;
                    break;
                }
            }
            const C atau = (C(a) * tau + C(b)) / j;
            const C w = z / j;
            const double im_a = atau.imag();
            const double shift = -w.imag() / im_a;
            const double half = std::sqrt(40.0 / (2 * std::numbers::pi * m * im_a)) + 2;
            C theta = 0;
            for (int lam = static_cast<int>(std::floor(shift - r - half)); lam <= static_cast<int>(std::ceil(shift - r + half));
                 ++lam) {
                const double s = lam + r;
                theta += e(atau * (m * s * s) + 2.0 * m * s * w);
            }
            total += std::pow(j, -k) * e(-C(c) * (m * 1.0) * z * z / j) * e(-D * atau) * theta;
        }
    }
    return total;
}

/// Coefficient at q^n zeta^j recovered by a 2-D DFT over a 256 x 8 grid at Im tau = 2, Im z = 0.1.
inline C defining_series_coefficient(int m, int k, double D, double r, int n, int j)
{
    auto e = [](double w) { return std::exp(C(0, 2 * std::numbers::pi * w)); };
    const int nu = 256, nx = 8;
    const double v = 2.0, y = 0.1;
    C acc = 0;
    for (int s = 0; s < nu; ++s)
        for (int t = 0; t < nx; ++t) {
            const double u = static_cast<double>(s) / nu, x = static_cast<double>(t) / nx;
            acc += poincare_defining_series(m, k, D, r, C(u, v), C(x, y), 25.0) * e(-(n * u + j * x));
        }
    acc /= nu * nx;
    return acc / (std::exp(-2 * std::numbers::pi * n * v) * std::exp(-2 * std::numbers::pi * j * y));
}

/// Tracks the worst violation of |a - b| <= max(abs_tol, rel_tol |b|).
struct Worst {
    double ratio = 0;
    std::string where;
    long count = 0;

    void add(double a, double b, double rel_tol, double abs_tol, const std::string& at)
    {
        ++count;
        const double r = std::abs(a - b) / std::max(abs_tol, rel_tol * std::abs(b));
        if (r > ratio) {
            ratio = r;
            where = at;
        }
    }
    bool ok() const { return ratio <= 1; }
    std::string summary() const
    {
        return std::to_string(count) + " comparisons, worst error/tolerance " + fmt(ratio) + (where.empty() ? "" : " at " + where);
    }
};

} // namespace detail

// 1. index-one exact values against the Cohen H-function oracle
inline bool check_index_one(std::string& detail)
{
    auto a1 = make_lattice({{2}});
    const auto x_half = a1.class_of({make_rational(1, 2)});
    const Rational g0 = trivial_coefficient_exact(a1, 4, -1, 0);
    const Rational g1 = trivial_coefficient_exact(a1, 4, make_rational(-3, 4), x_half);
    const Rational o0 = detail::index_one_coefficient(4, 4);
    const Rational o1 = detail::index_one_coefficient(4, 3);
    long mismatches = 0, total = 0;
    for (int k : {4, 6, 8, 10, 12})
        for (const auto& f : enumerate_supp(a1, 4)) {
            if (f.D == 0)
                continue;
            ++total;
            const std::int64_t N = to_int64(Rational(-4 * f.D).get_num());
            if (trivial_coefficient_exact(a1, k, f.D, f.x) != detail::index_one_coefficient(k, N))
                ++mismatches;
        }
    detail = "G(n=1,x=0)=" + to_string(g0) + " G(n=1,x=1/2)=" + to_string(g1) + ", oracle " + to_string(o0) + ", "
        + to_string(o1) + "; " + std::to_string(total - mismatches) + "/" + std::to_string(total) + " oracle matches for k<=12";
    return g0 == 126 && g1 == 56 && o0 == 126 && o1 == 56 && mismatches == 0;
}

// 2. exact closed form against the representation-number series
inline bool check_dual_path(std::string& detail)
{
    detail::Worst w;
    for (const auto& L : detail::test_lattices()) {
        const int rk = static_cast<int>(L.rank());
        for (int k = rk + 2; k <= 10; ++k) {
            if (k % 2 != 0)
                continue;
            for (const auto& f : enumerate_supp(L, 3)) {
                if (f.D == 0)
                    continue;
                const double exact = trivial_coefficient_exact(L, k, f.D, f.x).get_d();
                const double series = trivial_coefficient_series(L, k, f.D, f.x, 5000);
                w.add(series, exact, 1e-4, 1e-6, L.name() + " k=" + std::to_string(k) + " D=" + to_string(f.D));
            }
        }
    }
    detail = w.summary();
    return w.ok();
}

// 3. odd weight: every trivial coefficient vanishes
inline bool check_odd_weight(std::string& detail)
{
    double worst = 0;
    long exact_nonzero = 0, count = 0;
    for (const auto& L : detail::test_lattices())
        for (int k : {5, 7, 9}) {
            const auto spec = make_eisenstein_spec(L, k, 0);
            for (const auto& f : enumerate_supp(L, 2)) {
                if (f.D == 0)
                    continue;
                ++count;
                if (trivial_coefficient_exact(L, k, f.D, f.x) != 0)
                    ++exact_nonzero;
                worst = std::max(worst, std::abs(eisenstein_coefficient_numeric(spec, f.D, f.x, 200).value));
            }
            for (const auto& e : eisenstein_expansion(spec, 2, Mode::Exact, 0).entries)
                if (std::get<Rational>(e.value) != 0)
                    ++exact_nonzero;
        }
    detail = std::to_string(count) + " coefficients, " + std::to_string(exact_nonzero) + " nonzero exact, max |numeric| "
        + detail::fmt(worst);
    return exact_nonzero == 0 && worst <= 1e-9;
}

// 4. H-sum against its Kloosterman decomposition
inline bool check_kloosterman(std::string& detail)
{
    std::mt19937 rng(20261016);
    double worst = 0;
    long instances = 0;
    for (const IntMatrix& g : {IntMatrix{{2}}, IntMatrix{{2, 1}, {1, 2}}}) {
        auto L = make_lattice(g);
        std::vector<FourierIndex> neg;
        for (const auto& f : enumerate_supp(L, 3))
            if (f.D < 0)
                neg.push_back(f);
        std::uniform_int_distribution<std::size_t> pick(0, neg.size() - 1);
        for (int trial = 0; trial < 50; ++trial) {
            const auto& p = neg[pick(rng)];
            const auto& pp = neg[pick(rng)];
            const auto& r = L.representative(p.x);
            const auto& rp = L.representative(pp.x);
            ++instances;
            for (std::int64_t c = 1; c <= 20; ++c) {
                const auto h = h_poincare(L, p.D, r, pp.D, rp, c);
                worst = std::max(worst, std::abs(h - kloosterman_decomposition(L, p.D, r, pp.D, rp, c)));
                worst = std::max(worst, std::abs(h - h_poincare_fast(L, p.D, r, pp.D, rp, c)));
            }
        }
    }
    detail = std::to_string(instances) + " instances x c<=20, max defect " + detail::fmt(worst);
    return worst <= 1e-9;
}

// 5. multiplicativity of R_b and the good-prime local factors
inline bool check_rep_numbers(std::string& detail)
{
    long mult = 0, mult_bad = 0, closed = 0, closed_bad = 0;
    for (const IntMatrix& g : {IntMatrix{{2}}, IntMatrix{{2, 0}, {0, 2}}, IntMatrix{{2, 1}, {1, 2}}}) {
        auto L = make_lattice(g);
        for (const auto& f : enumerate_supp(L, 2)) {
            if (f.D == 0)
                continue;
            for (std::int64_t b = 2; b <= 30; ++b)
                for (std::int64_t c = b + 1; c <= 30; ++c)
                    if (std::gcd(b, c) == 1) {
                        ++mult;
                        if (rep_count({L, f.x, f.D, b * c}) != rep_count({L, f.x, f.D, b}) * rep_count({L, f.x, f.D, c}))
                            ++mult_bad;
                    }
        }
    }
    for (const auto& L : detail::test_lattices()) {
        const long rk = static_cast<long>(L.rank());
        for (const auto& f : enumerate_supp(L, 2)) {
            if (f.D == 0)
                continue;
            const Integer dt = d_tilde(L, f.x, f.D);
            for (std::int64_t p : {3, 5, 7, 11}) {
                if (dt % p == 0 || (2 * L.det()) % p == 0)
                    continue;
                const Rational pr(p);
                for (long s = 3; s <= 9; ++s) {
                    Rational expected;
                    if (rk % 2 == 0)
                        expected = 1 - chi_L(L, 1, p) * pow(pr, -(s - rk / 2 + 1));
                    else
                        expected = (1 - pow(pr, -(2 * s - rk + 1))) / (1 - chi_L(L, Rational(dt), p) * pow(pr, -(s - rk / 2)));
                    ++closed;
                    if (local_factor(L, f.x, f.D, p, s) != expected)
                        ++closed_bad;
                }
            }
        }
    }
    detail = std::to_string(mult - mult_bad) + "/" + std::to_string(mult) + " multiplicative, " + std::to_string(closed - closed_bad)
        + "/" + std::to_string(closed) + " closed forms";
    return mult_bad == 0 && closed_bad == 0 && mult > 0 && closed > 0;
}

// 6. product of good-prime Euler factors as a twisted divisor sum (even rank)
inline bool check_euler_product(std::string& detail)
{
    struct Instance {
        IntMatrix gram;
        Rational D;
    };
    const std::vector<Instance> instances{{{{2, 0}, {0, 2}}, -9},  {{{2, 0}, {0, 2}}, -25}, {{{2, 0}, {0, 2}}, -18},
                                          {{{2, 0}, {0, 2}}, -45}, {{{2, 0}, {0, 2}}, -225}, {{{2, 1}, {1, 2}}, -25},
                                          {{{2, 1}, {1, 2}}, -49}, {{{2, 0}, {0, 6}}, -25}};
    long tried = 0, held = 0;
    for (const auto& inst : instances) {
        auto L = make_lattice(inst.gram);
        const long rk = static_cast<long>(L.rank());
        const Integer dt = d_tilde(L, 0, inst.D);
        const auto fd = fundamental_decomposition(L.delta());
        const QuadChar chi{Integer(static_cast<long>(fd.f))};
        std::int64_t good = 1;
        bool square = false;
        for (const auto& [p, e] : factorize(to_int64(abs(dt)))) {
            if ((2 * L.det()) % p == 0)
                continue;
            for (int i = 0; i < e; ++i)
                good *= p;
            square = square || e >= 2;
        }
        if (!square)
            continue;
        for (int k : {4, 6, 8}) {
            Rational lhs = 1;
            for (const auto& [p, e] : factorize(to_int64(abs(dt))))
                if ((2 * L.det()) % p != 0)
                    lhs *= local_factor(L, 0, inst.D, p, k - 1) / (1 - chi(p) * pow(Rational(p), -(k - rk / 2)));
            const long t = k - rk / 2 - 1;
            const Rational rhs = chi(good) * pow(Rational(good), -t) * sigma_twisted(chi, t, good);
            ++tried;
            held += lhs == rhs;
        }
    }
    detail = std::to_string(held) + "/" + std::to_string(tried) + " exact identities on " + std::to_string(instances.size())
        + " (lattice, D) instances, k in {4,6,8}";
    return tried >= 5 && held == tried;
}

// 7. unitarity and the conjugation identity between rho* and sigma*
inline bool check_weil(std::string& detail)
{
    const std::vector<HeisenbergElement> basis{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 3, 1}};
    const std::vector<Generator> gens{Generator::T, Generator::S, Generator::TInv, Generator::SInv};
    double unitary = 0, conj_defect = 0;
    long combos = 0;
    for (const auto& L : detail::test_lattices()) {
        for (auto g : gens)
            unitary = std::max(unitary, unitarity_defect(rho_generator(L, g)));
        for (std::size_t x = 0; x < L.group_size(); ++x)
            for (const auto& h : basis) {
                unitary = std::max(unitary, unitarity_defect(schrodinger_matrix(L, x, h.lam, h.mu, h.t)));
                for (auto g : gens) {
                    conj_defect = std::max(conj_defect, conjugation_check(L, x, h.lam, h.mu, h.t, g));
                    ++combos;
                }
            }
    }
    detail = "max unitarity defect " + detail::fmt(unitary) + ", max conjugation defect " + detail::fmt(conj_defect) + " over "
        + std::to_string(combos) + " combinations";
    return unitary <= 1e-12 && conj_defect <= 1e-10;
}

// 8. averaging: non-trivial coefficients from trivial ones against the direct c-series
inline bool check_averaging(std::string& detail)
{
    auto l8 = make_lattice({{8}});
    const auto x = l8.class_of({make_rational(1, 2)});
    detail::Worst coeff, vec;
    for (int k : {4, 6}) {
        const auto spec = make_eisenstein_spec(l8, k, x);
        std::map<Rational, std::vector<std::size_t>> by_d;
        for (const auto& f : enumerate_supp(l8, 2)) {
            if (f.D == 0)
                continue;
            by_d[f.D].push_back(f.x);
            const double exact = nontrivial_from_trivial(l8, k, x, f.D, f.x).get_d();
            const double numeric = eisenstein_coefficient_numeric(spec, f.D, f.x, 2000).value.real();
            coeff.add(numeric, exact, 1e-3, 1e-3, "k=" + std::to_string(k) + " D=" + to_string(f.D));
        }
        const auto av = averaging_matrix(l8, x);
        const std::int64_t nx = l8.element(x).order;
        for (const auto& [D, ys] : by_d) {
            std::vector<detail::C> v(l8.group_size(), 0.0);
            for (std::size_t y = 0; y < l8.group_size(); ++y)
                if (is_integral(l8.min_beta(y) - D))
                    v[y] = trivial_coefficient_exact(l8, k, D, y).get_d();
            const auto w = av * v;
            for (auto y : ys) {
                double orbit = 0;
                for (std::int64_t lam = 0; lam < nx; ++lam) {
                    const auto z = l8.scale(x, lam);
                    orbit += z == 0 ? v[y].real()
                                    : eisenstein_coefficient_numeric(make_eisenstein_spec(l8, k, z), D, y, 2000).value.real();
                }
                vec.add(w[y].real(), static_cast<double>(nx) * orbit, 1e-3, 1e-3, "k=" + std::to_string(k) + " D=" + to_string(D));
            }
        }
    }
    detail = "coefficients: " + coeff.summary() + "; vector identity: " + vec.summary();
    return coeff.ok() && vec.ok();
}

// 9. Poincare series: cusp support, r -> -r symmetry, D -> 0 bridge, defining-series oracle
inline bool check_poincare(std::string& detail)
{
    auto l8 = make_lattice({{8}});
    const auto j1 = l8.class_of({make_rational(1, 8)});
    bool cusp = true;
    double sym = 0;
    for (int k : {6, 7}) {
        const auto p = poincare_expansion(make_poincare_spec(l8, k, make_rational(-15, 16), j1), 2, 300);
        const auto q = poincare_expansion(make_poincare_spec(l8, k, make_rational(-15, 16), l8.neg(j1)), 2, 300);
        const double sign = k % 2 == 0 ? 1 : -1;
        for (const auto& e : p.entries) {
            cusp = cusp && e.index.D != 0;
            const auto* o = q.find(e.index.D, e.index.x);
            if (!o)
                return detail = "missing mirrored entry", false;
            sym = std::max(sym, std::abs(as_complex(e.value) - sign * as_complex(o->value)));
        }
    }

    auto a1 = make_lattice({{2}});
    const int kb = 8;
    const double eis = eisenstein_coefficient_numeric(make_eisenstein_spec(a1, kb, 0), -1, 0, 200).value.real();
    std::complex<double> bridge = 0;
    for (std::int64_t c = 1; c <= 200; ++c)
        bridge += jlf::detail::poincare_weight(a1, kb, -1e-3, -1.0, c) * 2.0 * h_eisenstein_fast(a1, {0}, -1, {0}, c);
    const double bridge_rel = std::abs(bridge.real() - 2 * eis) / std::abs(2 * eis);

    const auto spec = make_poincare_spec(a1, 10, make_rational(-3, 4), 1);
    const double ours = poincare_coefficient(spec, make_rational(-3, 4), 1, 500).value.real();
    const auto oracle = detail::defining_series_coefficient(1, 10, -0.75, 0.5, 1, 1);
    const double oracle_rel = std::abs(oracle - ours) / std::abs(ours);

    detail = std::string("cusp support ") + (cusp ? "ok" : "violated") + ", max symmetry defect " + detail::fmt(sym)
        + ", bridge rel error " + detail::fmt(bridge_rel) + ", oracle " + detail::fmt(oracle.real()) + " vs "
        + detail::fmt(ours) + " (rel " + detail::fmt(oracle_rel) + ")";
    return cusp && sym <= 1e-9 && bridge_rel <= 1e-2 && oracle_rel <= 5e-4;
}

// 10. exact mode produces and serializes rationals only
inline bool check_rationality(std::string& detail)
{
    long entries = 0, bad = 0;
    for (const auto& L : detail::test_lattices())
        for (int k = 4; k <= 10; ++k) {
            if (2 * k <= static_cast<int>(L.rank()) + 4)
                continue;
            const auto e = eisenstein_expansion(make_eisenstein_spec(L, k, 0), 3, Mode::Exact, 0);
            const auto j = to_json(e);
            for (std::size_t i = 0; i < e.entries.size(); ++i) {
                ++entries;
                const bool rational = std::holds_alternative<Rational>(e.entries[i].value);
                const auto& v = j["entries"][i]["value"];
                bool serialized = v.is_string();
                if (serialized && rational) {
                    Rational back(v.get<std::string>());
                    back.canonicalize();
                    serialized = back == std::get<Rational>(e.entries[i].value);
                }
                bad += !(rational && serialized);
            }
        }
    detail = std::to_string(entries - bad) + "/" + std::to_string(entries) + " exact entries are rational and round-trip as \"p/q\"";
    return bad == 0 && entries > 0;
}

inline const std::vector<Check>& checks()
{
    static const std::vector<Check> all{
        {1, "index-one exact values", "eisenstein", 10, check_index_one},
        {2, "exact vs series Eisenstein", "eisenstein", 300, check_dual_path},
        {3, "odd-weight vanishing", "eisenstein", 60, check_odd_weight},
        {4, "Kloosterman decomposition", "exp_sums", 120, check_kloosterman},
        {5, "representation-number laws", "exp_sums", 180, check_rep_numbers},
        {6, "Euler-product divisor-sum identity", "eisenstein", 120, check_euler_product},
        {7, "Weil/Schrodinger structure", "weil", 60, check_weil},
        {8, "averaging consistency", "weil", 300, check_averaging},
        {9, "Poincare properties", "poincare", 600, check_poincare},
        {10, "exact-mode rationality", "eisenstein", 60, check_rationality},
    };
    return all;
}

inline bool is_suite(const std::string& s)
{
    return s == "all" || s == "exp_sums" || s == "eisenstein" || s == "poincare" || s == "weil";
}

/// Runs one check; exceptions count as failures, and so does exceeding the time budget.
inline CheckResult run(const Check& c)
{
    CheckResult r{c.id, c.name, false, "", 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.pass = c.run(r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > c.budget_seconds) {
        r.pass = false;
        r.detail += "; runtime over budget " + detail::fmt(c.budget_seconds) + " s";
    }
    return r;
}

inline std::vector<CheckResult> run_suite(const std::string& suite, const std::function<void(const CheckResult&)>& report)
{
    std::vector<CheckResult> out;
    for (const auto& c : checks())
        if (suite == "all" || suite == c.suite) {
            out.push_back(run(c));
            report(out.back());
        }
    return out;
}

inline std::string format_line(const CheckResult& r)
{
    std::ostringstream s;
    char t[32];
    std::snprintf(t, sizeof t, "%.2f", r.seconds);
    s << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << t << " s): " << r.detail;
    return s.str();
}

} // namespace jlf::verify
