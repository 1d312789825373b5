#pragma once

// Weil representation rho_L on C[L#/L], the Schrodinger representation sigma_x,
// the averaging operator Av_x and the orbit relations expressing E_x through E_0.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "jlf/eisenstein.hpp"
#include "jlf/error.hpp"
#include "jlf/exp_sums.hpp"
#include "jlf/lattice.hpp"

namespace jlf {

/// Square complex matrix over the discriminant-group index; column x is the image of e_x.
struct RepMatrix {
    std::size_t n = 0;
    std::vector<std::complex<double>> a;
    std::string label;

    RepMatrix() = default;
    explicit RepMatrix(std::size_t size, std::string name = "") : n(size), a(size * size, 0.0), label(std::move(name)) {}

    std::complex<double>& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static RepMatrix identity(std::size_t size)
    {
        RepMatrix m(size, "I");
        for (std::size_t i = 0; i < size; ++i)
            m(i, i) = 1.0;
        return m;
    }
};

inline RepMatrix operator*(const RepMatrix& x, const RepMatrix& y)
{
    RepMatrix out(x.n, x.label + y.label);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k)
            if (const auto v = x(i, k); v != 0.0)
                for (std::size_t j = 0; j < x.n; ++j)
                    out(i, j) += v * y(k, j);
    return out;
}

inline RepMatrix operator*(RepMatrix m, std::complex<double> s)
{
    for (auto& v : m.a)
        v *= s;
    return m;
}

inline std::vector<std::complex<double>> operator*(const RepMatrix& m, const std::vector<std::complex<double>>& v)
{
    std::vector<std::complex<double>> out(m.n, 0.0);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            out[i] += m(i, j) * v[j];
    return out;
}

/// Entrywise complex conjugate: the dual representation.
inline RepMatrix conj(const RepMatrix& m)
{
    RepMatrix out = m;
    for (auto& v : out.a)
        v = std::conj(v);
    out.label = m.label + "*";
    return out;
}

inline RepMatrix adjoint(const RepMatrix& m)
{
    RepMatrix out(m.n, m.label + "^-1");
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            out(i, j) = std::conj(m(j, i));
    return out;
}

inline double max_norm_diff(const RepMatrix& x, const RepMatrix& y)
{
    double d = 0;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        d = std::max(d, std::abs(x.a[i] - y.a[i]));
    return d;
}

/// max |M M^* - I|.
inline double unitarity_defect(const RepMatrix& m) { return max_norm_diff(m * adjoint(m), RepMatrix::identity(m.n)); }

enum class Generator { T, S, TInv, SInv };

inline std::string_view to_string(Generator g)
{
    switch (g) {
    case Generator::T: return "T";
    case Generator::S: return "S";
    case Generator::TInv: return "T^-1";
    case Generator::SInv: return "S^-1";
    }
    return "?";
}

/// rho(T) e_x = e(beta(x)) e_x; rho(S) e_x = i^{-rk/2} det^{-1/2} sum_y e(-beta(x, y)) e_y.
inline RepMatrix rho_generator(const EvenLattice& L, Generator g)
{
    const std::size_t n = L.group_size();
    if (g == Generator::TInv || g == Generator::SInv)
        return adjoint(rho_generator(L, g == Generator::TInv ? Generator::T : Generator::S));
    RepMatrix m(n, std::string(to_string(g)));
    if (g == Generator::T) {
        for (std::size_t x = 0; x < n; ++x)
            m(x, x) = e_rational(L.element(x).beta_mod1);
        return m;
    }
    // principal branch: i^{-rk/2} = e(-rk/8)
    const auto scale = e_rational(make_rational(-static_cast<long>(L.rank()), 8)) / std::sqrt(static_cast<double>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            m(y, x) = scale * e_rational(-L.pairing_mod1(x, y));
    return m;
}

/// Ordered product rho(w_1) rho(w_2) ... rho(w_n).
inline RepMatrix rho_word(const EvenLattice& L, const std::vector<Generator>& word)
{
    if (word.empty())
        throw Error(ErrorKind::InvalidArgument, "empty generator word");
    RepMatrix m = rho_generator(L, word.front());
    for (std::size_t i = 1; i < word.size(); ++i)
        m = m * rho_generator(L, word[i]);
    std::string label;
    for (auto g : word)
        label += std::string(to_string(g)) + " ";
    label.pop_back();
    m.label = label;
    return m;
}

/// sigma_x(lam, mu, t) e_y = e(mu beta(x, y) + (t - lam mu) beta(x)) e_{y - lam x}.
inline RepMatrix schrodinger_matrix(const EvenLattice& L, std::size_t x, std::int64_t lam, std::int64_t mu, std::int64_t t)
{
    if (x >= L.group_size())
        throw Error(ErrorKind::InvalidArgument, "x is not an element of the discriminant group");
    const std::size_t n = L.group_size();
    RepMatrix m(n, "sigma(" + std::to_string(lam) + "," + std::to_string(mu) + "," + std::to_string(t) + ")");
    const Rational bx = L.element(x).beta_mod1;
    const std::size_t shift = L.scale(x, -lam);
    for (std::size_t y = 0; y < n; ++y) {
        const Rational phase = Rational(mu) * L.pairing_mod1(x, y) + Rational(t - lam * mu) * bx;
        m(L.add(y, shift), y) = e_rational(frac(phase));
    }
    return m;
}

/// (lam, mu, t)^A = (lam a + mu c, lam b + mu d, t).
struct HeisenbergElement {
    std::int64_t lam = 0, mu = 0, t = 0;
};

inline HeisenbergElement act(const HeisenbergElement& h, Generator g)
{
    // T = [[1,1],[0,1]], S = [[0,-1],[1,0]] and their inverses
    switch (g) {
    case Generator::T: return {h.lam, h.lam + h.mu, h.t};
    case Generator::TInv: return {h.lam, h.mu - h.lam, h.t};
    case Generator::S: return {h.mu, -h.lam, h.t};
    case Generator::SInv: return {-h.mu, h.lam, h.t};
    }
    return h;
}

/// max |sigma*_x(h) - rho*(A) sigma*_x(h^A) rho*(A)^{-1}|.
inline double conjugation_check(const EvenLattice& L, std::size_t x, std::int64_t lam, std::int64_t mu, std::int64_t t,
                                Generator g)
{
    const RepMatrix rho_star = conj(rho_generator(L, g));
    const auto ha = act({lam, mu, t}, g);
    const RepMatrix lhs = conj(schrodinger_matrix(L, x, lam, mu, t));
    const RepMatrix inner = conj(schrodinger_matrix(L, x, ha.lam, ha.mu, ha.t));
    // scalar matrices commute with rho*(A)
    if (max_norm_diff(inner, RepMatrix::identity(inner.n) * inner(0, 0)) == 0.0)
        return max_norm_diff(lhs, inner);
    return max_norm_diff(lhs, rho_star * inner * adjoint(rho_star));
}

/// Av_x = N_x^{-2} sum over (lam, mu) in (Z / N_x^2)^2 of sigma*_x(lam, mu, 0).
inline RepMatrix averaging_matrix(const EvenLattice& L, std::size_t x)
{
    const std::int64_t nx = L.element(x).order;
    const std::int64_t m = nx * nx;
    RepMatrix av(L.group_size(), "Av");
    for (std::int64_t lam = 0; lam < m; ++lam)
        for (std::int64_t mu = 0; mu < m; ++mu) {
            const RepMatrix s = conj(schrodinger_matrix(L, x, lam, mu, 0));
            for (std::size_t i = 0; i < av.a.size(); ++i)
                av.a[i] += s.a[i];
        }
    for (auto& v : av.a)
        v /= static_cast<double>(m);
    return av;
}

/// sum_{lam in Z_{N_x}} E_{lam x} = sum_{y : beta(x, y) in Z} (sum_lam h_{0, y + lam x}) theta_y.
struct OrbitRelation {
    std::size_t x = 0;
    int k = 0;
    std::vector<std::size_t> lhs; // lam x for lam in Z_{N_x}
    struct Row {
        std::size_t y;
        std::vector<std::size_t> terms; // y + lam x
    };
    std::vector<Row> rows;
};

namespace detail {

inline void check_orbit_args(const EvenLattice& L, int k, std::size_t x)
{
    if (x >= L.group_size())
        throw Error(ErrorKind::InvalidArgument, "x is not an element of the discriminant group");
    if (L.element(x).beta_mod1 != 0)
        throw Error(ErrorKind::NotIsotropic, "the orbit relation needs beta(x) in Z");
    if (k % 2 != 0)
        throw Error(ErrorKind::OddWeight, "the orbit relation is trivial for odd k");
}

} // namespace detail

inline OrbitRelation orbit_relation(const EvenLattice& L, int k, std::size_t x)
{
    detail::check_orbit_args(L, k, x);
    OrbitRelation rel;
    rel.x = x;
    rel.k = k;
    const std::int64_t nx = L.element(x).order;
    for (std::int64_t lam = 0; lam < nx; ++lam)
        rel.lhs.push_back(L.scale(x, lam));
    for (std::size_t y = 0; y < L.group_size(); ++y) {
        if (L.pairing_mod1(x, y) != 0)
            continue;
        OrbitRelation::Row row{y, {}};
        for (std::int64_t lam = 0; lam < nx; ++lam)
            row.terms.push_back(L.add(y, L.scale(x, lam)));
        rel.rows.push_back(std::move(row));
    }
    return rel;
}

namespace detail {

/// G_x(D, y) from the orbit relation of x, peeling off the lower-order multiples of x.
/// The elements of full order in <x> are exactly +-x when N_x is 2, 3, 4 or 6.
inline Rational orbit_coefficient(const EvenLattice& L, int k, std::size_t x, const Rational& D, std::size_t y)
{
    if (x == 0)
        return trivial_coefficient_exact(L, k, D, y);
    const std::int64_t nx = L.element(x).order;
    if (nx != 2 && nx != 3 && nx != 4 && nx != 6)
        throw Error(ErrorKind::UnsupportedOrder,
                    "only isotropic elements of order 2, 3, 4 or 6 are determined by the orbit relation");
    Rational s = 0;
    if (L.pairing_mod1(x, y) == 0)
        for (std::int64_t lam = 0; lam < nx; ++lam)
            s += trivial_coefficient_exact(L, k, D, L.add(y, L.scale(x, lam)));
    long full = 0;
    for (std::int64_t lam = 0; lam < nx; ++lam) {
        const std::size_t z = L.scale(x, lam);
        if (L.element(z).order == nx)
            ++full;
        else
            s -= orbit_coefficient(L, k, z, D, y);
    }
    return s / full;
}

} // namespace detail

/// Exact coefficient G_x(D, y) of E_{k,L,x} for isotropic x of order 2, 3, 4 or 6.
inline Rational nontrivial_from_trivial(const EvenLattice& L, int k, std::size_t x, const Rational& D, std::size_t y)
{
    detail::check_orbit_args(L, k, x);
    detail::check_coefficient_args(L, D, y);
    const std::int64_t nx = L.element(x).order;
    if (nx != 1 && nx != 2 && nx != 3 && nx != 4 && nx != 6)
        throw Error(ErrorKind::UnsupportedOrder,
                    "only isotropic elements of order 2, 3, 4 or 6 are determined by the orbit relation");
    return detail::orbit_coefficient(L, k, x, D, y);
}

} // namespace jlf
