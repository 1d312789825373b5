#pragma once

// Exponential and counting sums over lattices modulo c: Kloosterman sums, the
// lattice sums H_{L,c}, representation numbers R_b and local Euler factors.

#include <fftw3.h>

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "jlf/error.hpp"
#include "jlf/lattice.hpp"
#include "jlf/number_theory.hpp"
#include "jlf/rational.hpp"

namespace jlf {

using Complex = std::complex<double>;

/// e(q) = exp(2 pi i q), with q reduced mod 1 exactly first.
inline Complex e_rational(const Rational& q)
{
    return std::polar(1.0, 2.0 * std::numbers::pi * frac(q).get_d());
}

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t c)
{
    const std::int64_t r = a % c;
    return r < 0 ? r + c : r;
}

inline std::int64_t mod(const Integer& a, std::int64_t c)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), Integer(static_cast<long>(c)).get_mpz_t());
    return mpz_get_si(r.get_mpz_t());
}

/// Inverse of a unit modulo c (c >= 1).
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t c)
{
    if (c == 1)
        return 0;
    std::int64_t t = 0, nt = 1, r = c, nr = mod(a, c);
    while (nr != 0) {
        const std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_tuple(nt, t - q * nt);
        std::tie(r, nr) = std::make_tuple(nr, r - q * nr);
    }
    return mod(t, c);
}

/// Table of c-th roots of unity e_c(j), j = 0..c-1.
inline std::vector<Complex> roots_of_unity(std::int64_t c)
{
    std::vector<Complex> out(static_cast<std::size_t>(c));
    for (std::int64_t j = 0; j < c; ++j)
        out[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(c));
    return out;
}

/// Q(lambda) = sum_{i<=j} a_ij lambda_i lambda_j + sum_i g_i lambda_i + c0 with integer data.
/// Built from beta(lambda + r) - D; h is the linear form lambda -> beta(r', lambda).
struct LatticeQuad {
    std::size_t m = 0;
    std::vector<std::vector<std::int64_t>> a;
    std::vector<std::int64_t> g;
    Integer c0;
    std::vector<std::int64_t> h;
};

inline std::vector<std::int64_t> gram_times(const EvenLattice& L, const DualVector& r)
{
    std::vector<std::int64_t> out(L.rank());
    for (std::size_t i = 0; i < L.rank(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < L.rank(); ++j)
            s += static_cast<long>(L.gram()[i][j]) * r[j];
        if (!is_integral(s))
            throw Error(ErrorKind::NotInDualLattice, "vector is not in the dual lattice");
        out[i] = to_int64(s.get_num());
    }
    return out;
}

/// perm lists the original coordinate placed at each position.
inline LatticeQuad make_quad(const EvenLattice& L, const DualVector& r, const Rational& D, const DualVector* rp = nullptr,
                             const std::vector<std::size_t>* perm = nullptr)
{
    const std::size_t m = L.rank();
    std::vector<std::size_t> id(m);
    for (std::size_t i = 0; i < m; ++i)
        id[i] = perm ? (*perm)[i] : i;
    const Rational c0 = L.beta(r) - D;
    if (!is_integral(c0))
        throw Error(ErrorKind::NotInSupport, "beta(r) - D = " + to_string(c0) + " is not integral");
    const auto gr = gram_times(L, r);
    LatticeQuad q;
    q.m = m;
    q.c0 = c0.get_num();
    q.a.assign(m, std::vector<std::int64_t>(m, 0));
    q.g.resize(m);
    q.h.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        q.a[i][i] = L.gram()[id[i]][id[i]] / 2;
        for (std::size_t j = i + 1; j < m; ++j)
            q.a[i][j] = L.gram()[id[i]][id[j]];
        q.g[i] = gr[id[i]];
    }
    if (rp) {
        const auto grp = gram_times(L, *rp);
        for (std::size_t i = 0; i < m; ++i)
            q.h[i] = grp[id[i]];
    }
    return q;
}

/// Visits (Q(lambda) mod c, h(lambda) mod c) for lambda in (Z/c)^m in lexicographic order.
/// With last_var_hook the innermost variable is left to the caller: visit_outer(alpha, beta, gamma)
/// receives Q restricted to the last coordinate as alpha t^2 + beta t + gamma (mod c).
template <class Outer>
void sweep_outer(const LatticeQuad& q, std::int64_t c, Outer&& visit_outer)
{
    const std::size_t m = q.m;
    const std::size_t last = m - 1;
    std::vector<std::int64_t> lam(last, 0);
    const std::int64_t c0 = mod(q.c0, c);
    const std::int64_t alpha = mod(q.a[last][last], c);
    for (;;) {
        std::int64_t gamma = c0;
        std::int64_t beta = mod(q.g[last], c);
        std::int64_t hb = 0;
        for (std::size_t i = 0; i < last; ++i) {
            if (lam[i] == 0)
                continue;
            std::int64_t row = mod(q.g[i], c);
            for (std::size_t j = i; j < last; ++j)
                row = (row + mod(q.a[i][j], c) * lam[j]) % c;
            gamma = (gamma + row * lam[i]) % c;
            beta = (beta + mod(q.a[i][last], c) * lam[i]) % c;
            hb = (hb + mod(q.h[i], c) * lam[i]) % c;
        }
        visit_outer(alpha, beta, gamma, hb);
        std::size_t i = last;
        while (i > 0) {
            --i;
            if (++lam[i] < c)
                break;
            lam[i] = 0;
            if (i == 0)
                return;
        }
        if (last == 0)
            return;
    }
}

template <class Visit>
void sweep(const LatticeQuad& q, std::int64_t c, Visit&& visit)
{
    const std::int64_t hl = mod(q.h[q.m - 1], c);
    sweep_outer(q, c, [&](std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t hb) {
        std::int64_t value = gamma;
        std::int64_t step = (alpha + beta) % c; // Q(t+1) - Q(t) at t = 0
        const std::int64_t two_alpha = (2 * alpha) % c;
        std::int64_t hv = hb;
        for (std::int64_t t = 0; t < c; ++t) {
            visit(value, hv);
            value += step;
            if (value >= c)
                value -= c;
            step += two_alpha;
            if (step >= c)
                step -= c;
            hv += hl;
            if (hv >= c)
                hv -= c;
        }
    });
}

inline void check_support(const EvenLattice& L, const Rational& D, const DualVector& r)
{
    if (!L.in_dual(r))
        throw Error(ErrorKind::NotInDualLattice, "vector is not in the dual lattice");
    if (D > 0 || !is_integral(L.beta(r) - D))
        throw Error(ErrorKind::NotInSupport, "(" + to_string(D) + ", r) is not in the support");
}

} // namespace detail

/// K(m, n; c) = sum over units d mod c of e_c(m d + n d^{-1}).
inline Complex kloosterman(const Integer& m, const Integer& n, std::int64_t c)
{
    if (c < 1)
        throw Error(ErrorKind::InvalidArgument, "kloosterman needs c >= 1");
    const auto roots = detail::roots_of_unity(c);
    const std::int64_t mm = detail::mod(m, c), nn = detail::mod(n, c);
    Complex sum = 0;
    for (std::int64_t d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1)
            continue;
        const std::int64_t dinv = detail::inverse_mod(d, c);
        sum += roots[static_cast<std::size_t>((mm * d + nn * dinv) % c)];
    }
    return sum;
}

inline Complex kloosterman(std::int64_t m, std::int64_t n, std::int64_t c)
{
    return kloosterman(Integer(static_cast<long>(m)), Integer(static_cast<long>(n)), c);
}

/// H_{L,c}(D, r, D', r') summed by definition: d ascending, lambda lexicographic.
inline Complex h_poincare(const EvenLattice& L, const Rational& D, const DualVector& r, const Rational& Dp,
                          const DualVector& rp, std::int64_t c)
{
    if (c < 1)
        throw Error(ErrorKind::InvalidArgument, "h_poincare needs c >= 1");
    detail::check_support(L, D, r);
    detail::check_support(L, Dp, rp);
    const auto q = detail::make_quad(L, r, D, &rp);
    const std::int64_t m = detail::mod(Rational(L.beta(rp) - Dp).get_num(), c);
    const auto roots = detail::roots_of_unity(c);
    std::vector<std::int64_t> as, bs;
    as.reserve(static_cast<std::size_t>(c));
    bs.reserve(static_cast<std::size_t>(c));
    detail::sweep(q, c, [&](std::int64_t a, std::int64_t b) {
        as.push_back(a);
        bs.push_back(b);
    });
    Complex sum = 0;
    for (std::int64_t d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1)
            continue;
        const std::int64_t dinv = detail::inverse_mod(d, c);
        const std::int64_t md = (m * d) % c;
        for (std::size_t i = 0; i < as.size(); ++i)
            sum += roots[static_cast<std::size_t>((as[i] * dinv + md + bs[i]) % c)];
    }
    return sum * e_rational(L.bilinear(rp, r) / c);
}

namespace detail {

/// Cached backward FFTW plans per transform length.
class FftCache {
public:
    static FftCache& instance()
    {
        static FftCache cache;
        return cache;
    }

    /// In-place backward DFT: out[u] = sum_a in[a] e(a u / n).
    void backward(std::vector<Complex>& data)
    {
        std::lock_guard lock(mutex_);
        const int n = static_cast<int>(data.size());
        auto it = plans_.find(n);
        if (it == plans_.end()) {
            Entry e;
            e.buffer = fftw_alloc_complex(static_cast<std::size_t>(n));
            e.plan = fftw_plan_dft_1d(n, e.buffer, e.buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
            it = plans_.emplace(n, e).first;
        }
        auto* buf = reinterpret_cast<Complex*>(it->second.buffer);
        std::copy(data.begin(), data.end(), buf);
        fftw_execute(it->second.plan);
        std::copy(buf, buf + n, data.begin());
    }

    ~FftCache()
    {
        for (auto& [n, e] : plans_) {
            fftw_destroy_plan(e.plan);
            fftw_free(e.buffer);
        }
    }

private:
    struct Entry {
        fftw_plan plan = nullptr;
        fftw_complex* buffer = nullptr;
    };
    std::mutex mutex_;
    std::map<int, Entry> plans_;
};

} // namespace detail

/// Same value as h_poincare in O(c^rk + c log c): bins lambda by Q(lambda) mod c and
/// evaluates the d-sum with one DFT.
inline Complex h_poincare_fast(const EvenLattice& L, const Rational& D, const DualVector& r, const Rational& Dp,
                               const DualVector& rp, std::int64_t c)
{
    if (c < 1)
        throw Error(ErrorKind::InvalidArgument, "h_poincare needs c >= 1");
    detail::check_support(L, D, r);
    detail::check_support(L, Dp, rp);
    const auto q = detail::make_quad(L, r, D, &rp);
    const std::int64_t m = detail::mod(Rational(L.beta(rp) - Dp).get_num(), c);
    const auto roots = detail::roots_of_unity(c);
    std::vector<Complex> w(static_cast<std::size_t>(c), 0.0);
    detail::sweep(q, c, [&](std::int64_t a, std::int64_t b) { w[static_cast<std::size_t>(a)] += roots[static_cast<std::size_t>(b)]; });
    detail::FftCache::instance().backward(w);
    Complex sum = 0;
    for (std::int64_t u = 0; u < c; ++u) {
        if (std::gcd(u, c) != 1)
            continue;
        const std::int64_t uinv = detail::inverse_mod(u, c);
        sum += roots[static_cast<std::size_t>((m * uinv) % c)] * w[static_cast<std::size_t>(u)];
    }
    return sum * e_rational(L.bilinear(rp, r) / c);
}

/// H_{L,c}(r, D', r') = H_{L,c}(0, r, D', r'); r must be isotropic.
inline Complex h_eisenstein(const EvenLattice& L, const DualVector& r, const Rational& Dp, const DualVector& rp,
                            std::int64_t c)
{
    if (!is_integral(L.beta(r)))
        throw Error(ErrorKind::NotIsotropic, "beta(r) is not integral");
    return h_poincare(L, 0, r, Dp, rp, c);
}

inline Complex h_eisenstein_fast(const EvenLattice& L, const DualVector& r, const Rational& Dp, const DualVector& rp,
                                 std::int64_t c)
{
    if (!is_integral(L.beta(r)))
        throw Error(ErrorKind::NotIsotropic, "beta(r) is not integral");
    return h_poincare_fast(L, 0, r, Dp, rp, c);
}

/// sum_lambda e_c(beta(r', lambda + r)) K(beta(r') - D', beta(lambda + r) - D; c).
inline Complex kloosterman_decomposition(const EvenLattice& L, const Rational& D, const DualVector& r,
                                         const Rational& Dp, const DualVector& rp, std::int64_t c)
{
    if (c < 1)
        throw Error(ErrorKind::InvalidArgument, "kloosterman_decomposition needs c >= 1");
    detail::check_support(L, D, r);
    detail::check_support(L, Dp, rp);
    const auto q = detail::make_quad(L, r, D, &rp);
    const Integer m = Rational(L.beta(rp) - Dp).get_num();
    const auto roots = detail::roots_of_unity(c);
    Complex sum = 0;
    detail::sweep(q, c, [&](std::int64_t a, std::int64_t b) {
        sum += roots[static_cast<std::size_t>(b)] * kloosterman(m, Integer(static_cast<long>(a)), c);
    });
    return sum * e_rational(L.bilinear(rp, r) / c);
}

// ---------------------------------------------------------------------------
// Representation numbers

/// Enumeration budget in points; JLF_ENUM_BUDGET overrides the default of 1e8.
inline std::uint64_t enumeration_budget()
{
    if (const char* env = std::getenv("JLF_ENUM_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return v;
    }
    return 100'000'000ULL;
}

struct RepCountKey {
    EvenLattice lattice;
    std::size_t x = 0;
    Rational D;
    std::int64_t b = 1;
};

namespace detail {

inline void check_budget(std::int64_t b, std::size_t dims)
{
    long double points = 1;
    for (std::size_t i = 0; i < dims; ++i)
        points *= static_cast<long double>(b);
    if (points > static_cast<long double>(enumeration_budget()))
        throw Error(ErrorKind::ResourceLimit,
                    std::to_string(b) + "^" + std::to_string(dims) + " points exceed the enumeration budget");
}

class RepCountMemo {
public:
    static RepCountMemo& instance()
    {
        static RepCountMemo memo;
        return memo;
    }

    using Key = std::tuple<IntMatrix, std::size_t, std::string, std::int64_t>;

    bool find(const Key& k, Integer& out)
    {
        std::lock_guard lock(mutex_);
        auto it = table_.find(k);
        if (it == table_.end())
            return false;
        out = it->second;
        return true;
    }

    void insert(const Key& k, const Integer& v)
    {
        std::lock_guard lock(mutex_);
        table_.emplace(k, v);
    }

private:
    std::mutex mutex_;
    std::map<Key, Integer> table_;
};

inline Integer count_exhaustive(const EvenLattice& L, std::size_t x, const Rational& D, std::int64_t b)
{
    check_budget(b, L.rank());
    const auto q = make_quad(L, L.representative(x), D);
    std::uint64_t count = 0;
    sweep(q, b, [&](std::int64_t a, std::int64_t) { count += (a == 0); });
    return Integer(static_cast<unsigned long>(count));
}

/// Count modulo an odd prime power p^l by solving for one variable with a unit
/// diagonal coefficient: #t = #{s : s^2 = beta^2 - 4 alpha gamma}.
inline Integer count_prime_power(const EvenLattice& L, std::size_t x, const Rational& D, std::int64_t p,
                                 std::int64_t pk)
{
    const std::size_t m = L.rank();
    std::size_t pivot = m;
    if (p != 2)
        for (std::size_t i = 0; i < m; ++i)
            if ((L.gram()[i][i] / 2) % p != 0) {
                pivot = i;
                break;
            }
    if (pivot == m)
        return count_exhaustive(L, x, D, pk);
    check_budget(pk, m - 1);
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < m; ++i)
        if (i != pivot)
            perm.push_back(i);
    perm.push_back(pivot);
    const auto q = make_quad(L, L.representative(x), D, nullptr, &perm);
    std::vector<std::uint32_t> roots(static_cast<std::size_t>(pk), 0);
    for (std::int64_t s = 0; s < pk; ++s)
        ++roots[static_cast<std::size_t>((s * s) % pk)];
    std::uint64_t count = 0;
    sweep_outer(q, pk, [&](std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t) {
        const std::int64_t disc = mod(beta * beta - (4 * alpha % pk) * gamma, pk);
        count += roots[static_cast<std::size_t>(disc)];
    });
    return Integer(static_cast<unsigned long>(count));
}

inline RepCountMemo::Key memo_key(const EvenLattice& L, std::size_t x, const Rational& D, std::int64_t b)
{
    return {L.gram(), x, to_string(D), b};
}

} // namespace detail

/// R_b = #{lambda in (Z/b)^rk : beta(lambda + x^) - D = 0 mod b}, by exhaustive enumeration.
inline Integer rep_count(const RepCountKey& key)
{
    const auto& L = key.lattice;
    if (key.b < 1)
        throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
    if (key.D > 0 || !is_integral(L.min_beta(key.x) - key.D))
        throw Error(ErrorKind::NotInSupport, "(D, x) is not in the support");
    if (key.b == 1)
        return 1;
    auto& memo = detail::RepCountMemo::instance();
    const auto k = detail::memo_key(L, key.x, key.D, key.b);
    Integer v;
    if (memo.find(k, v))
        return v;
    v = detail::count_exhaustive(L, key.x, key.D, key.b);
    memo.insert(k, v);
    return v;
}

/// R_{p^l} via the one-variable reduction where available (memoized with rep_count).
inline Integer rep_count_prime_power(const EvenLattice& L, std::size_t x, const Rational& D, std::int64_t p, int l)
{
    std::int64_t pk = 1;
    for (int i = 0; i < l; ++i)
        pk *= p;
    if (pk == 1)
        return 1;
    if (D > 0 || !is_integral(L.min_beta(x) - D))
        throw Error(ErrorKind::NotInSupport, "(D, x) is not in the support");
    auto& memo = detail::RepCountMemo::instance();
    const auto k = detail::memo_key(L, x, D, pk);
    Integer v;
    if (memo.find(k, v))
        return v;
    v = detail::count_prime_power(L, x, D, p, pk);
    memo.insert(k, v);
    return v;
}

/// R_b assembled from prime-power counts (R_b is multiplicative in b).
inline Integer rep_count_crt(const EvenLattice& L, std::size_t x, const Rational& D, std::int64_t b)
{
    Integer out = 1;
    for (const auto& [p, e] : factorize(b))
        out *= rep_count_prime_power(L, x, D, p, e);
    return out;
}

/// D~ = N_x^2 D, always an integer on the support.
inline Integer d_tilde(const EvenLattice& L, std::size_t x, const Rational& D)
{
    const std::int64_t n = L.element(x).order;
    const Rational t = D * Rational(n * n);
    if (!is_integral(t))
        throw Error(ErrorKind::NonIntegralArgument, "N_x^2 D is not integral");
    return t.get_num();
}

/// Local Euler factor L~_p(s) = p^{-ws} R_{p^w} + (1 - p^{-(s-rk+1)}) sum_{l<w} p^{-ls} R_{p^l},
/// w = max(1, 1 + 2 ord_p(2 D~)), raised until R_{p^{w+1}} = p^{rk-1} R_{p^w}.
inline Rational local_factor(const EvenLattice& L, std::size_t x, const Rational& D, std::int64_t p, long s)
{
    if (D >= 0)
        throw Error(ErrorKind::InvalidArgument, "local_factor needs D < 0");
    if (s < 1)
        throw Error(ErrorKind::InvalidArgument, "local_factor needs s >= 1");
    if (!is_integral(L.min_beta(x) - D))
        throw Error(ErrorKind::NotInSupport, "(D, x) is not in the support");
    const long rk = static_cast<long>(L.rank());
    const Integer dt = d_tilde(L, x, D);
    int w = std::max(1, 1 + 2 * ord_p(Integer(2 * dt), p));
    const int w_initial = w;
    const Integer prk1 = ipow(Integer(static_cast<long>(p)), static_cast<unsigned long>(rk - 1));
    while (rep_count_prime_power(L, x, D, p, w + 1) != prk1 * rep_count_prime_power(L, x, D, p, w)) {
        if (++w > w_initial + 4)
            throw Error(ErrorKind::StabilizationFailure,
                        "R_{p^w} did not stabilize at p = " + std::to_string(p));
    }
    const Rational pr(Integer(static_cast<long>(p)));
    Rational sum = 0;
    for (int l = 0; l < w; ++l)
        sum += pow(pr, -static_cast<long>(l) * s) * Rational(rep_count_prime_power(L, x, D, p, l));
    return pow(pr, -static_cast<long>(w) * s) * Rational(rep_count_prime_power(L, x, D, p, w))
        + (1 - pow(pr, -(s - rk + 1))) * sum;
}

/// sum_{b <= B} R_b b^{-s}.
inline double dirichlet_series_partial(const EvenLattice& L, std::size_t x, const Rational& D, double s, std::int64_t B)
{
    if (!(s > static_cast<double>(L.rank()) + 0.5))
        throw Error(ErrorKind::ConvergenceDomain, "the series needs s > rk + 1/2");
    if (B < 1)
        throw Error(ErrorKind::InvalidArgument, "B must be positive");
    // smallest-prime-factor sieve for the CRT assembly
    std::vector<std::int64_t> spf(static_cast<std::size_t>(B) + 1, 0);
    for (std::int64_t i = 2; i <= B; ++i)
        if (spf[static_cast<std::size_t>(i)] == 0)
            for (std::int64_t j = i; j <= B; j += i)
                if (spf[static_cast<std::size_t>(j)] == 0)
                    spf[static_cast<std::size_t>(j)] = i;
    std::vector<double> R(static_cast<std::size_t>(B) + 1, 0.0);
    R[1] = 1.0;
    long double sum = 1.0L;
    for (std::int64_t b = 2; b <= B; ++b) {
        const std::int64_t p = spf[static_cast<std::size_t>(b)];
        std::int64_t pk = 1, rest = b;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            pk *= p;
            ++e;
        }
        const double rb = (rest == 1) ? rep_count_prime_power(L, x, D, p, e).get_d()
                                      : R[static_cast<std::size_t>(pk)] * R[static_cast<std::size_t>(rest)];
        R[static_cast<std::size_t>(b)] = rb;
        sum += static_cast<long double>(rb) * std::pow(static_cast<long double>(b), -static_cast<long double>(s));
    }
    return static_cast<double>(sum);
}

} // namespace jlf
