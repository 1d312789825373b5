#pragma once

// Jacobi-Eisenstein series E_{k,L,r}: exact coefficients of the trivial series
// E_0, the representation-number series for the same values, truncated
// Kloosterman-type series for general isotropic r, and full expansions.

#include <cmath>
#include <complex>
#include <array>
#include <limits>
#include <map>
#include <numbers>

#include "jlf/error.hpp"
#include "jlf/exp_sums.hpp"
#include "jlf/expansion.hpp"
#include "jlf/lattice.hpp"
#include "jlf/number_theory.hpp"

namespace jlf {

struct EisensteinSpec {
    EvenLattice lattice;
    int k = 0;
    std::size_t r = 0;
};

inline EisensteinSpec make_eisenstein_spec(const EvenLattice& L, int k, std::size_t r)
{
    if (r >= L.group_size())
        throw Error(ErrorKind::InvalidArgument, "r is not an element of the discriminant group");
    if (L.element(r).beta_mod1 != 0)
        throw Error(ErrorKind::NotIsotropic, "E_{k,L,r} needs beta(r) in Z");
    if (2 * k <= static_cast<int>(L.rank()) + 4)
        throw Error(ErrorKind::ConvergenceDomain, "the Eisenstein series needs k > rk/2 + 2");
    return {L, k, r};
}

/// Number of r = x + lambda with beta(r) = n, for every admissible n <= n_max.
inline std::map<Rational, Integer> theta_coefficients(const EvenLattice& L, std::size_t x, const Rational& n_max)
{
    std::map<Rational, Integer> out;
    for (Rational n = L.element(x).beta_mod1; n <= n_max; n += 1)
        out[n] = 0;
    for (const auto& p : coset_points(L, x, n_max))
        ++out[L.beta(p)];
    return out;
}

/// D = 0 entries: C(0, x) = (delta(r, x) + (-1)^k delta(-r, x)) / 2.
inline FourierExpansion singular_term(const EisensteinSpec& spec, const Rational& n_max)
{
    const auto& L = spec.lattice;
    FourierExpansion e;
    e.lattice = L;
    e.weight = spec.k;
    e.r = spec.r;
    e.mode = Mode::Exact;
    e.n_max = n_max;
    const std::size_t neg_r = L.neg(spec.r);
    const int sign = (spec.k % 2 == 0) ? 1 : -1;
    for (const auto& f : enumerate_supp(L, n_max)) {
        if (f.D != 0)
            continue;
        const int v = (f.x == spec.r ? 1 : 0) + sign * (f.x == neg_r ? 1 : 0);
        e.entries.push_back({f, make_rational(v, 2)});
    }
    return e;
}

namespace detail {

inline void check_coefficient_args(const EvenLattice& L, const Rational& D, std::size_t x)
{
    if (x >= L.group_size())
        throw Error(ErrorKind::InvalidArgument, "x is not an element of the discriminant group");
    if (D >= 0 || !is_integral(L.min_beta(x) - D))
        throw Error(ErrorKind::NotInSupport, "(" + to_string(D) + ", x) is not a non-singular support pair");
}

/// sum_{d | dd} mu(d) chi(d) d^e.
inline Rational moebius_sum(const QuadChar& chi, std::int64_t dd, long e)
{
    Rational s = 0;
    for (std::int64_t d : divisors(dd))
        if (const int mu = moebius(d); mu != 0)
            s += mu * chi(d) * pow(Rational(d), e);
    return s;
}

inline std::vector<std::int64_t> bad_primes(const EvenLattice& L, const Integer& dt)
{
    std::int64_t n = to_int64(abs(dt)) * 2 * L.det();
    return prime_divisors(n);
}

} // namespace detail

/// Exact G_0(D, x), the coefficient of E_{k,L,0} at a non-singular support pair.
inline Rational trivial_coefficient_exact(const EvenLattice& L, int k, const Rational& D, std::size_t x)
{
    const long rk = static_cast<long>(L.rank());
    if (2 * k <= rk + 4)
        throw Error(ErrorKind::ConvergenceDomain, "the Eisenstein series needs k > rk/2 + 2");
    detail::check_coefficient_args(L, D, x);
    if (k % 2 != 0)
        return 0;
    const Integer dt = d_tilde(L, x, D);
    const auto primes = detail::bad_primes(L, dt);
    const Rational delta(Integer(static_cast<long>(L.delta())));

    if (rk % 2 == 0) {
        const long h = rk / 2;
        const long t = k - h - 1;
        const auto fd = fundamental_decomposition(L.delta());
        const QuadChar chi{Integer(static_cast<long>(fd.f))};
        const Rational lval = dirichlet_L_nonpositive(static_cast<int>(t), chi);
        const Rational s1 = detail::moebius_sum(chi, fd.d, h - k);
        const int sign = (((rk + 3) / 4) % 2 == 0) ? 1 : -1; // (-1)^{ceil(rk/4)}
        Rational g = 2 * sign * pow(-D * Rational(std::abs(fd.f)), t) / (Rational(fd.d) * lval * s1);
        for (std::int64_t p : primes) {
            const Rational pr(p);
            g *= local_factor(L, x, D, p, k - 1) / (1 - chi_L(L, 1, p) * pow(pr, h - k));
        }
        return g;
    }

    const long hc = (rk + 1) / 2; // ceil(rk/2)
    const long t = k - hc - 1;
    // D~ = D~0 f^2 with f built from the primes p not dividing 2 det
    Integer f = 1;
    for (const auto& [p, e] : factorize(to_int64(abs(dt))))
        if ((2 * L.det()) % p != 0)
            f *= ipow(Integer(static_cast<long>(p)), static_cast<unsigned long>(e / 2));
    const Integer dt0 = dt / (f * f);
    const auto fd = fundamental_decomposition(to_int64(dt0 * L.delta()));
    const QuadChar chi{Integer(static_cast<long>(fd.f))};
    const Rational lval = dirichlet_L_nonpositive(static_cast<int>(t), chi);
    const Rational s2 = detail::moebius_sum(chi, fd.d, hc - k);
    const long n_x = L.element(x).order;
    const Rational root = -D * Rational(n_x) / Rational(f); // (D D~0)^{1/2}
    const int sign = (((hc + rk / 4) % 2) == 0) ? 1 : -1;
    Rational g = pow(Rational(2), 2 * k - rk) * Rational(k - hc) * root * pow(-D, t)
        / (sign * bernoulli(static_cast<int>(2 * k - rk - 1)) * Rational(fd.d) * pow(Rational(std::abs(fd.f)), k - hc));
    g *= lval * s2;
    for (std::int64_t p : primes) {
        const Rational pr(p);
        g *= (1 - kronecker(dt0 * L.delta(), Integer(static_cast<long>(p))) * pow(pr, hc - k)) / (1 - pow(pr, 1 - 2 * k + rk))
            * local_factor(L, x, D, p, k - 1);
    }
    return g;
}

/// G_0(D, x) from the representation-number series truncated at b <= B.
inline double trivial_coefficient_series(const EvenLattice& L, int k, const Rational& D, std::size_t x, std::int64_t B)
{
    const long rk = static_cast<long>(L.rank());
    if (k <= rk + 1)
        throw Error(ErrorKind::ConvergenceDomain, "the representation-number series needs k > rk + 1");
    detail::check_coefficient_args(L, D, x);
    if (k % 2 != 0)
        return 0.0;
    const double pi = std::numbers::pi;
    const double w = k - rk / 2.0;
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0; // i^k
    const double pref = std::pow(2 * pi, w) * sign * std::pow(-D.get_d(), w - 1)
        / (2 * std::sqrt(static_cast<double>(L.det())) * gamma_half(2 * k - rk).value() * zeta(static_cast<double>(k - rk)));
    return pref * 2 * dirichlet_series_partial(L, x, D, k - 1, B);
}

struct NumericCoefficient {
    std::complex<double> value;
    double tail_estimate = 0.0;
};

namespace detail {

/// (2 pi)^{k-rk/2} i^k (-D')^{k-rk/2-1} / (2 det^{1/2} Gamma(k - rk/2)).
inline std::complex<double> eisenstein_prefactor(const EvenLattice& L, int k, const Rational& Dp)
{
    const double w = k - static_cast<double>(L.rank()) / 2.0;
    const std::complex<double> ik = std::array<std::complex<double>, 4>{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}}[k % 4];
    return ik * std::pow(2 * std::numbers::pi, w) * std::pow(-Dp.get_d(), w - 1)
        / (2 * std::sqrt(static_cast<double>(L.det())) * gamma_half(2 * k - static_cast<long>(L.rank())).value());
}

inline DualVector negated(DualVector v)
{
    for (auto& c : v)
        c = -c;
    return v;
}

} // namespace detail

/// Coefficient of E_{k,L,r} at (D', x') from the c-series truncated at c_max.
inline NumericCoefficient eisenstein_coefficient_numeric(const EisensteinSpec& spec, const Rational& Dp, std::size_t xp,
                                                          std::int64_t c_max)
{
    const auto& L = spec.lattice;
    const int k = spec.k;
    const long rk = static_cast<long>(L.rank());
    if (2 * k <= rk + 4)
        throw Error(ErrorKind::ConvergenceDomain, "the Eisenstein series needs k > rk/2 + 2");
    if (c_max < 1)
        throw Error(ErrorKind::InvalidArgument, "c_max must be positive");
    detail::check_coefficient_args(L, Dp, xp);
    const std::size_t neg_r = L.neg(spec.r);
    if (k % 2 != 0 && neg_r == spec.r)
        return {0.0, 0.0}; // E_r = -E_r
    const auto pref = detail::eisenstein_prefactor(L, k, Dp);
    const DualVector& r = L.representative(spec.r);
    const DualVector mr = detail::negated(r);
    const DualVector& rp = L.representative(xp);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    std::complex<double> sum = 0;
    for (std::int64_t c = 1; c <= c_max; ++c) {
        auto h = h_eisenstein_fast(L, r, Dp, rp, c);
        h += sign * (neg_r == spec.r ? h : h_eisenstein_fast(L, mr, Dp, rp, c));
        sum += h * std::pow(static_cast<double>(c), -k);
    }
    const std::complex<double> value = pref * sum;
    const double tail = (k <= rk + 1) ? std::numeric_limits<double>::infinity()
                                      : std::abs(pref) * 2.0 * static_cast<double>(L.det())
            * std::pow(static_cast<double>(c_max), static_cast<double>(rk + 1 - k)) / static_cast<double>(k - rk - 1);
    if (tail > 1e-3 * (1 + std::abs(value)))
        throw Error(ErrorKind::TailTooLarge, "tail estimate " + std::to_string(tail) + " exceeds 1e-3 (1 + |value|)");
    return {value, tail};
}

/// Singular term plus every non-singular coefficient with q-exponent <= n_max.
inline FourierExpansion eisenstein_expansion(const EisensteinSpec& spec, const Rational& n_max, Mode mode,
                                             std::int64_t c_max)
{
    const auto& L = spec.lattice;
    if (mode == Mode::Exact && spec.r != 0)
        throw Error(ErrorKind::InvalidArgument, "exact mode is only available for r = 0");
    FourierExpansion e = singular_term(spec, n_max);
    e.mode = mode;
    if (mode == Mode::Numeric) {
        for (auto& entry : e.entries)
            entry.value = as_complex(entry.value);
        e.tail_estimate = 0.0;
    }
    for (const auto& f : enumerate_supp(L, n_max)) {
        if (f.D == 0)
            continue;
        if (mode == Mode::Exact) {
            e.entries.push_back({f, trivial_coefficient_exact(L, spec.k, f.D, f.x)});
        } else {
            const auto c = eisenstein_coefficient_numeric(spec, f.D, f.x, c_max);
            e.entries.push_back({f, c.value});
            e.tail_estimate = std::max(*e.tail_estimate, c.tail_estimate);
        }
    }
    std::stable_sort(e.entries.begin(), e.entries.end(), [](const ExpansionEntry& a, const ExpansionEntry& b) {
        return a.index.n != b.index.n ? a.index.n < b.index.n : a.index.x < b.index.x;
    });
    return e;
}

} // namespace jlf
