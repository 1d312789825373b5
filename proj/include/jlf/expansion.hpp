#pragma once

// Truncated Fourier expansions and their JSON form.

#include <json.hpp>

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jlf/lattice.hpp"
#include "jlf/rational.hpp"

namespace jlf {

enum class Mode { Exact, Numeric };

inline std::string_view to_string(Mode m) { return m == Mode::Exact ? "exact" : "numeric"; }

/// Exact rational or a complex float obtained from a truncated series.
using Coefficient = std::variant<Rational, std::complex<double>>;

struct ExpansionEntry {
    FourierIndex index;
    Coefficient value;
};

struct FourierExpansion {
    EvenLattice lattice;
    int weight = 0;
    std::size_t r = 0;
    Mode mode = Mode::Exact;
    Rational n_max;
    std::vector<ExpansionEntry> entries;
    std::optional<double> tail_estimate;
    /// Set for Poincare series: the index D of P_{k,L,D,r}.
    std::optional<Rational> poincare_D;

    const ExpansionEntry* find(const Rational& D, std::size_t x) const
    {
        for (const auto& e : entries)
            if (e.index.D == D && e.index.x == x)
                return &e;
        return nullptr;
    }
};

inline std::complex<double> as_complex(const Coefficient& c)
{
    if (const auto* q = std::get_if<Rational>(&c))
        return {q->get_d(), 0.0};
    return std::get<std::complex<double>>(c);
}

inline nlohmann::ordered_json coords_json(const EvenLattice& L, std::size_t x)
{
    auto out = nlohmann::ordered_json::array();
    for (auto v : L.element(x).coords)
        out.push_back(v);
    return out;
}

inline nlohmann::ordered_json to_json(const FourierExpansion& e)
{
    nlohmann::ordered_json j;
    if (e.poincare_D)
        j["series"] = "poincare";
    j["lattice"] = e.lattice.name();
    j["weight"] = e.weight;
    if (e.poincare_D)
        j["D"] = to_string(*e.poincare_D);
    j["r"] = coords_json(e.lattice, e.r);
    j["mode"] = std::string(to_string(e.mode));
    auto entries = nlohmann::ordered_json::array();
    for (const auto& entry : e.entries) {
        nlohmann::ordered_json row;
        row["D"] = to_string(entry.index.D);
        row["x"] = coords_json(e.lattice, entry.index.x);
        row["n"] = to_string(entry.index.n);
        if (const auto* q = std::get_if<Rational>(&entry.value)) {
            row["value"] = to_string(*q);
        } else {
            const auto z = std::get<std::complex<double>>(entry.value);
            row["value"] = {{"re", z.real()}, {"im", z.imag()}};
        }
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    if (e.tail_estimate)
        j["tail_estimate"] = *e.tail_estimate;
    else
        j["tail_estimate"] = nullptr;
    return j;
}

} // namespace jlf
