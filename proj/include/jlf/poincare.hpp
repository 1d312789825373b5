#pragma once

// Jacobi-Poincare series P_{k,L,D,r}: the Petersson constant lambda_{k,L,D} and
// Fourier coefficients from the truncated Bessel / lattice-sum series.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "jlf/eisenstein.hpp"
#include "jlf/error.hpp"
#include "jlf/exp_sums.hpp"
#include "jlf/expansion.hpp"
#include "jlf/lattice.hpp"
#include "jlf/number_theory.hpp"

namespace jlf {

struct PoincareSpec {
    EvenLattice lattice;
    int k = 0;
    Rational D;
    std::size_t r = 0;
};

inline PoincareSpec make_poincare_spec(const EvenLattice& L, int k, const Rational& D, std::size_t r)
{
    if (r >= L.group_size())
        throw Error(ErrorKind::InvalidArgument, "r is not an element of the discriminant group");
    if (k <= static_cast<int>(L.rank()) + 2)
        throw Error(ErrorKind::ConvergenceDomain, "the Poincare series needs k > rk + 2");
    if (D >= 0 || !is_integral(L.min_beta(r) - D))
        throw Error(ErrorKind::NotInSupport, "(" + to_string(D) + ", r) is not a support pair with D < 0");
    return {L, k, D, r};
}

/// lambda = mantissa * sqrt(radicand) * pi^pi_power, radicand squarefree.
struct PeterssonConstant {
    Rational mantissa;
    Integer radicand = 1;
    Rational pi_power;

    double value() const
    {
        return mantissa.get_d() * std::sqrt(radicand.get_d()) * std::pow(std::numbers::pi, pi_power.get_d());
    }
};

namespace detail {

/// Rewrites sqrt(s) as a rational times sqrt(squarefree integer).
inline std::pair<Rational, Integer> split_sqrt(const Rational& s)
{
    const Integer n = s.get_num() * s.get_den();
    Rational outside = Rational(1) / Rational(s.get_den());
    Integer inside = 1;
    for (const auto& [p, e] : factorize(to_int64(n))) {
        outside *= Rational(ipow(Integer(static_cast<long>(p)), static_cast<unsigned long>(e / 2)));
        if (e % 2)
            inside *= p;
    }
    return {outside, inside};
}

} // namespace detail

/// lambda_{k,L,D} = 2^{-2k+rk/2+2} Gamma(k-rk/2-1) det^{-1/2} (-pi D)^{-k+rk/2+1}.
inline PeterssonConstant petersson_constant(const PoincareSpec& spec)
{
    const long rk = static_cast<long>(spec.lattice.rank());
    const long k = spec.k;
    if (k <= rk + 2)
        throw Error(ErrorKind::ConvergenceDomain, "the Poincare series needs k > rk + 2");
    // every factor is q^{e/2} for an integer e; the odd halves go under one root
    Rational mantissa = 1, radicand = Rational(1) / Rational(static_cast<long>(spec.lattice.det()));
    auto half_power = [&](const Rational& q, long twice_e) {
        const long e = twice_e >= 0 ? twice_e / 2 : -((-twice_e + 1) / 2);
        mantissa *= pow(q, e);
        if (twice_e - 2 * e)
            radicand *= q;
    };
    half_power(2, 2 * (2 - 2 * k) + rk);
    half_power(-spec.D, 2 * (1 - k) + rk);
    const auto g = gamma_half(2 * k - rk - 2);
    mantissa *= g.rational;
    const auto [outside, inside] = detail::split_sqrt(radicand);
    PeterssonConstant out;
    out.mantissa = mantissa * outside;
    out.radicand = inside;
    out.pi_power = make_rational(2 * (1 - k) + rk, 2) + (g.has_sqrt_pi ? make_rational(1, 2) : Rational(0));
    return out;
}

namespace detail {

inline std::complex<double> i_power(int k) { return std::array<std::complex<double>, 4>{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}}[((k % 4) + 4) % 4]; }

/// (2 pi i^k / det^{1/2}) (D'/D)^{alpha/2} J_alpha(4 pi (D D')^{1/2} / c) c^{-rk/2-1}, alpha = k - rk/2 - 1.
/// D is only required to be negative here, so the D -> 0 limit can be probed.
inline std::complex<double> poincare_weight(const EvenLattice& L, int k, double D, double Dp, std::int64_t c)
{
    const long rk = static_cast<long>(L.rank());
    const Rational alpha = make_rational(2 * k - rk - 2, 2);
    const double a = alpha.get_d();
    const double x = 4 * std::numbers::pi * std::sqrt(D * Dp) / static_cast<double>(c);
    return i_power(k) * (2 * std::numbers::pi / std::sqrt(static_cast<double>(L.det()))) * std::pow(Dp / D, a / 2)
        * bessel_j(alpha, x) * std::pow(static_cast<double>(c), -static_cast<double>(rk) / 2 - 1);
}

} // namespace detail

/// Coefficient G_{D,r}(D', x') of P_{k,L,D,r} with the c-series truncated at c_max.
/// c_max = 0 evaluates the delta terms only and reports an infinite tail.
inline NumericCoefficient poincare_coefficient(const PoincareSpec& spec, const Rational& Dp, std::size_t xp,
                                               std::int64_t c_max)
{
    const auto& L = spec.lattice;
    const int k = spec.k;
    const long rk = static_cast<long>(L.rank());
    if (k <= rk + 2)
        throw Error(ErrorKind::ConvergenceDomain, "the Poincare series needs k > rk + 2");
    if (c_max < 0)
        throw Error(ErrorKind::InvalidArgument, "c_max must be non-negative");
    detail::check_coefficient_args(L, Dp, xp);
    const std::size_t neg_r = L.neg(spec.r);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 != 0 && neg_r == spec.r)
        return {0.0, 0.0}; // P_r = -P_r
    const double D = spec.D.get_d(), dp = Dp.get_d();
    if (4 * std::numbers::pi * std::sqrt(D * dp) > kBesselMaxArgument)
        throw Error(ErrorKind::OutOfRange, "4 pi (D D')^{1/2} exceeds the Bessel argument cap");

    double delta = 0;
    if (Dp == spec.D) {
        delta += (xp == spec.r) ? 1.0 : 0.0;
        delta += (xp == neg_r) ? sign : 0.0;
    }
    const DualVector& r = L.representative(spec.r);
    const DualVector& rp = L.representative(xp);
    std::complex<double> sum = 0;
    for (std::int64_t c = 1; c <= c_max; ++c) {
        // H(D, -r, D', r') is the complex conjugate of H(D, r, D', r')
        const auto h = h_poincare_fast(L, spec.D, r, Dp, rp, c);
        sum += detail::poincare_weight(L, k, D, dp, c) * (h + sign * std::conj(h));
    }
    const std::complex<double> value = delta + sum;
    if (std::abs(value.imag()) > 1e-9 * (1 + std::abs(value)))
        throw Error(ErrorKind::OutOfRange, "Poincare coefficient has a non-negligible imaginary part");
    if (c_max == 0)
        return {value.real(), std::numeric_limits<double>::infinity()};

    const double alpha = k - rk / 2.0 - 1;
    const double tail = 2 * std::pow(2 * std::numbers::pi, alpha + 1) * std::pow(-dp, alpha)
        / (std::sqrt(static_cast<double>(L.det())) * std::tgamma(alpha + 1))
        * std::pow(static_cast<double>(c_max), static_cast<double>(rk + 2 - k)) / static_cast<double>(k - rk - 2);
    if (tail > 1e-3 * (1 + std::abs(value)))
        throw Error(ErrorKind::TailTooLarge, "tail estimate " + std::to_string(tail) + " exceeds 1e-3 (1 + |value|)");
    return {value.real(), tail};
}

/// Every coefficient with D' < 0 and q-exponent <= n_max; P is a cusp form, so no D' = 0 entries.
inline FourierExpansion poincare_expansion(const PoincareSpec& spec, const Rational& n_max, std::int64_t c_max)
{
    const auto& L = spec.lattice;
    FourierExpansion e;
    e.lattice = L;
    e.weight = spec.k;
    e.r = spec.r;
    e.mode = Mode::Numeric;
    e.n_max = n_max;
    e.poincare_D = spec.D;
    e.tail_estimate = 0.0;
    for (const auto& f : enumerate_supp(L, n_max)) {
        if (f.D == 0)
            continue;
        const auto c = poincare_coefficient(spec, f.D, f.x, c_max);
        e.entries.push_back({f, c.value});
        e.tail_estimate = std::max(*e.tail_estimate, c.tail_estimate);
    }
    return e;
}

} // namespace jlf
