#pragma once

// Scalar arithmetic: Kronecker symbols, Moebius and divisor sums, Bernoulli
// numbers and polynomials, L-values of quadratic characters at non-positive
// integers, Gamma at half-integers and J-Bessel evaluation.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "jlf/error.hpp"
#include "jlf/rational.hpp"

namespace jlf {

/// Prime factorization by trial division, primes ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n)
{
    if (n < 0)
        n = -n;
    std::vector<std::pair<std::int64_t, int>> out;
    if (n <= 1)
        return out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (const auto& [p, e] : factorize(n))
        out.push_back(p);
    return out;
}

inline std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t count = out.size();
        std::int64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// p-adic valuation of a nonzero integer.
inline int ord_p(const Integer& n, std::int64_t p)
{
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "ord_p of zero");
    Integer m = abs(n);
    int e = 0;
    const Integer pp(static_cast<long>(p));
    while (m % pp == 0) {
        m /= pp;
        ++e;
    }
    return e;
}

inline int ord_p(const Rational& q, std::int64_t p)
{
    return ord_p(q.get_num(), p) - ord_p(q.get_den(), p);
}

/// Kronecker symbol (a/n), defined for all integer pairs.
inline int kronecker(const Integer& a, const Integer& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker(std::int64_t a, std::int64_t n)
{
    return kronecker(Integer(static_cast<long>(a)), Integer(static_cast<long>(n)));
}

/// Quadratic character a -> (f/a) attached to a discriminant f.
struct QuadChar {
    Integer f{1};

    int operator()(std::int64_t a) const { return kronecker(f, Integer(static_cast<long>(a))); }
    int operator()(const Integer& a) const { return kronecker(f, a); }
    Integer modulus() const { return abs(f); }
};

inline bool is_squarefree(std::int64_t n)
{
    for (const auto& [p, e] : factorize(n))
        if (e > 1)
            return false;
    return true;
}

/// True for discriminants of quadratic fields (1 excluded).
inline bool is_fundamental_discriminant(std::int64_t f)
{
    if (f == 0 || f == 1)
        return false;
    const std::int64_t r = ((f % 4) + 4) % 4;
    if (r == 1)
        return is_squarefree(f);
    if (r == 0) {
        const std::int64_t m = f / 4;
        const std::int64_t rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && is_squarefree(m);
    }
    return false;
}

struct FundamentalDecomposition {
    std::int64_t f; ///< discriminant of Q(sqrt(delta)), or 1 when delta is a square
    std::int64_t d; ///< delta = f * d^2, d >= 1
};

inline FundamentalDecomposition fundamental_decomposition(std::int64_t delta)
{
    const std::int64_t r = ((delta % 4) + 4) % 4;
    if (delta == 0 || (r != 0 && r != 1))
        throw Error(ErrorKind::NotADiscriminant, std::to_string(delta) + " is not a nonzero discriminant");
    std::int64_t core = delta < 0 ? -1 : 1;
    std::int64_t square_root = 1;
    for (const auto& [p, e] : factorize(delta)) {
        if (e % 2 != 0)
            core *= p;
        for (int i = 0; i < e / 2; ++i)
            square_root *= p;
    }
    if (core == 1)
        return {1, square_root};
    const std::int64_t f = (((core % 4) + 4) % 4 == 1) ? core : 4 * core;
    // delta = core * square_root^2, and 4 | delta whenever core != 1 mod 4
    const std::int64_t d = (f == core) ? square_root : square_root / 2;
    return {f, d};
}

inline int moebius(std::int64_t n)
{
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "moebius needs n >= 1");
    int mu = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1)
            return 0;
        mu = -mu;
    }
    return mu;
}

/// sigma_t^chi(n) = sum_{d | n} chi(d) d^t.
inline Rational sigma_twisted(const QuadChar& chi, long t, std::int64_t n)
{
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "sigma needs n >= 1");
    Rational sum = 0;
    for (std::int64_t d : divisors(n))
        sum += chi(d) * pow(Rational(Integer(static_cast<long>(d))), t);
    return sum;
}

namespace detail {

struct BernoulliTable {
    std::mutex mutex;
    std::vector<Rational> values{Rational(1)};
};

inline BernoulliTable& bernoulli_table()
{
    static BernoulliTable table;
    return table;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

} // namespace detail

/// Bernoulli number B_n with B_1 = -1/2.
inline Rational bernoulli(int n)
{
    if (n < 0)
        throw Error(ErrorKind::InvalidArgument, "bernoulli needs n >= 0");
    auto& table = detail::bernoulli_table();
    std::lock_guard lock(table.mutex);
    auto& b = table.values;
    while (static_cast<int>(b.size()) <= n) {
        const unsigned long m = b.size();
        Rational s = 0;
        for (unsigned long j = 0; j < m; ++j)
            s += Rational(detail::binomial(m + 1, j)) * b[j];
        b.push_back(-s / Rational(Integer(m + 1)));
    }
    return b[static_cast<std::size_t>(n)];
}

/// B_n(x) = sum_j C(n,j) B_{n-j} x^j.
inline Rational bernoulli_poly(int n, const Rational& x)
{
    Rational sum = 0;
    Rational xp = 1;
    for (int j = 0; j <= n; ++j) {
        sum += Rational(detail::binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j)))
            * bernoulli(n - j) * xp;
        xp *= x;
    }
    return sum;
}

/// L(-n, chi_f) for f = 1 (Riemann zeta) or a fundamental discriminant.
inline Rational dirichlet_L_nonpositive(int n, const QuadChar& chi)
{
    if (n < 0)
        throw Error(ErrorKind::InvalidArgument, "dirichlet_L_nonpositive needs n >= 0");
    if (!mpz_fits_slong_p(chi.f.get_mpz_t()))
        throw Error(ErrorKind::OutOfRange, "character modulus too large");
    const std::int64_t f = mpz_get_si(chi.f.get_mpz_t());
    if (f != 1 && !is_fundamental_discriminant(f))
        throw Error(ErrorKind::NotFundamental, std::to_string(f) + " is not a fundamental discriminant");
    const std::int64_t m = f < 0 ? -f : f;
    Rational sum = 0;
    for (std::int64_t j = 1; j <= m; ++j) {
        const int c = chi(j);
        if (c != 0)
            sum += c * bernoulli_poly(n + 1, make_rational(j, m));
    }
    return -pow(Rational(Integer(static_cast<long>(m))), n) / Rational(n + 1) * sum;
}

/// Gamma(two_s / 2) = rational * pi^(half_pi_power); half_pi_power is 0 or 1/2.
struct GammaHalf {
    Rational rational;
    bool has_sqrt_pi = false;

    double value() const
    {
        return rational.get_d() * (has_sqrt_pi ? std::sqrt(std::numbers::pi) : 1.0);
    }
};

inline GammaHalf gamma_half(long two_s)
{
    if (two_s < 1)
        throw Error(ErrorKind::InvalidArgument, "gamma_half needs a positive argument");
    GammaHalf g;
    if (two_s % 2 == 0) {
        g.rational = 1;
        for (long j = 1; j < two_s / 2; ++j)
            g.rational *= j;
        return g;
    }
    // Gamma(m + 1/2) = (1/2)(3/2)...(m - 1/2) sqrt(pi)
    g.rational = 1;
    g.has_sqrt_pi = true;
    for (long j = 1; j < two_s; j += 2)
        g.rational *= make_rational(j, 2);
    return g;
}

/// Riemann zeta for real s >= 2 by Euler-Maclaurin summation (error < 1e-14).
inline double zeta(double s)
{
    if (s < 2.0)
        throw Error(ErrorKind::OutOfRange, "zeta is only provided for s >= 2");
    constexpr int kTerms = 12;
    long double sum = 0;
    for (int n = 1; n < kTerms; ++n)
        sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
    const long double N = kTerms;
    sum += std::pow(N, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(N, -static_cast<long double>(s));
    // sum_j B_2j / (2j)! * s (s+1) ... (s+2j-2) N^(-s-2j+1)
    long double rising = s;
    long double factorial = 2;
    for (int j = 1; j <= 8; ++j) {
        sum += bernoulli(2 * j).get_d() / factorial * rising * std::pow(N, -static_cast<long double>(s) - 2 * j + 1);
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        factorial *= static_cast<long double>(2 * j + 1) * (2 * j + 2);
    }
    return static_cast<double>(sum);
}

namespace detail {

template <class Real>
Real bessel_series(Real alpha, Real x, Real gamma_alpha_plus_1)
{
    using std::abs;
    using std::pow;
    using boost::multiprecision::abs;
    using boost::multiprecision::pow;
    const Real half = x / 2;
    const Real half_sq = half * half;
    Real term = pow(half, alpha) / gamma_alpha_plus_1;
    Real sum = term;
    for (int n = 1; n < 1000; ++n) {
        term *= -half_sq / (Real(n) * (Real(n) + alpha));
        sum += term;
        if (Real(n) > half && abs(term) < Real(1e-18) * abs(sum))
            break;
    }
    return sum;
}

} // namespace detail

inline constexpr double kBesselMaxArgument = 60.0;

/// J_alpha(x) from its power series; alpha a non-negative integer or half-integer.
inline double bessel_j(const Rational& alpha, double x)
{
    const Rational twice = alpha * 2;
    if (alpha < 0 || !is_integral(twice))
        throw Error(ErrorKind::InvalidArgument, "bessel_j needs 2*alpha a non-negative integer");
    if (!(x > 0.0))
        throw Error(ErrorKind::InvalidArgument, "bessel_j needs x > 0");
    if (x > kBesselMaxArgument)
        throw Error(ErrorKind::OutOfRange, "bessel_j argument exceeds the series working range");
    const long two_alpha = to_int64(twice.get_num());
    const GammaHalf g = gamma_half(two_alpha + 2);
    if (x <= 4.0) {
        return detail::bessel_series<double>(static_cast<double>(two_alpha) / 2.0, x, g.value());
    }
    using Big = boost::multiprecision::cpp_bin_float_50;
    Big gamma = Big(g.rational.get_num().get_str()) / Big(g.rational.get_den().get_str());
    if (g.has_sqrt_pi)
        gamma *= sqrt(boost::math::constants::pi<Big>());
    const Big value = detail::bessel_series<Big>(Big(two_alpha) / 2, Big(x), gamma);
    return static_cast<double>(value);
}

} // namespace jlf
