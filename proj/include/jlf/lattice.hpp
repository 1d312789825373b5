#pragma once

// Even positive-definite lattices, their discriminant groups and lattice-point
// enumeration.  Everything here is exact (GMP integers and rationals).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "jlf/error.hpp"
#include "jlf/number_theory.hpp"
#include "jlf/rational.hpp"

namespace jlf {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using DualVector = std::vector<Rational>;

/// Element of L#/L in Smith-normal-form coordinates.
struct DiscElement {
    std::vector<std::int64_t> coords; ///< a_i mod d_i over the nontrivial cyclic factors
    std::int64_t order = 1;           ///< N_x
    Rational beta_mod1;               ///< beta(x) mod Z in [0, 1)
    std::size_t index = 0;            ///< position in the lexicographic element list

    friend bool operator==(const DiscElement& a, const DiscElement& b) { return a.coords == b.coords; }
};

/// A pair (D, x) of the support; n = beta(x^) - D with x^ the canonical representative.
struct FourierIndex {
    Rational D;
    std::size_t x = 0;
    Rational n;

    friend bool operator==(const FourierIndex& a, const FourierIndex& b) { return a.D == b.D && a.x == b.x; }
};

namespace detail {

using ZMatrix = std::vector<std::vector<Integer>>;

inline ZMatrix identity_z(std::size_t m)
{
    ZMatrix id(m, std::vector<Integer>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        id[i][i] = 1;
    return id;
}

/// Leading principal minors by fraction-free (Bareiss) elimination.
inline std::vector<Integer> leading_minors(const IntMatrix& g)
{
    const std::size_t m = g.size();
    ZMatrix a(m, std::vector<Integer>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            a[i][j] = static_cast<long>(g[i][j]);
    std::vector<Integer> minors;
    Integer prev = 1;
    for (std::size_t k = 0; k < m; ++k) {
        minors.push_back(a[k][k]);
        if (a[k][k] == 0)
            break;
        for (std::size_t i = k + 1; i < m; ++i)
            for (std::size_t j = k + 1; j < m; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return minors;
}

/// Smith normal form U G V = diag(d) with V and V^{-1} tracked.
struct Smith {
    std::vector<Integer> d;
    ZMatrix V, Vinv;
};

inline Smith smith_normal_form(const IntMatrix& g)
{
    const std::size_t m = g.size();
    ZMatrix a(m, std::vector<Integer>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            a[i][j] = static_cast<long>(g[i][j]);
    ZMatrix V = identity_z(m), Vinv = identity_z(m);

    // column j <- column j - q * column i  (V likewise; V^{-1} gets the inverse row op)
    auto col_axpy = [&](std::size_t j, std::size_t i, const Integer& q) {
        for (std::size_t r = 0; r < m; ++r) {
            a[r][j] -= q * a[r][i];
            V[r][j] -= q * V[r][i];
        }
        for (std::size_t c = 0; c < m; ++c)
            Vinv[i][c] += q * Vinv[j][c];
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < m; ++r) {
            std::swap(a[r][i], a[r][j]);
            std::swap(V[r][i], V[r][j]);
        }
        std::swap(Vinv[i], Vinv[j]);
    };
    auto row_axpy = [&](std::size_t j, std::size_t i, const Integer& q) {
        for (std::size_t c = 0; c < m; ++c)
            a[j][c] -= q * a[i][c];
    };

    for (std::size_t t = 0; t < m; ++t) {
        for (;;) {
            // move the smallest nonzero entry of the trailing block to (t, t)
            std::size_t pi = m, pj = m;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < m; ++j)
                    if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m)
                break;
            std::swap(a[t], a[pi]);
            col_swap(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                row_axpy(i, t, q);
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < m; ++j) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                col_axpy(j, t, q);
                clean = clean && a[t][j] == 0;
            }
            if (!clean)
                continue;
            // enforce the divisibility chain
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < m; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m)
                break;
            row_axpy(t, bad, Integer(-1));
        }
        if (a[t][t] < 0) {
            for (std::size_t c = 0; c < m; ++c)
                a[t][c] = -a[t][c];
        }
    }
    Smith s;
    for (std::size_t i = 0; i < m; ++i)
        s.d.push_back(a[i][i]);
    s.V = std::move(V);
    s.Vinv = std::move(Vinv);
    return s;
}

} // namespace detail

/// Validated even positive-definite lattice with its discriminant form.
class EvenLattice {
public:
    EvenLattice() = default;

    const std::string& name() const { return data_->name; }
    const IntMatrix& gram() const { return data_->gram; }
    std::size_t rank() const { return data_->gram.size(); }
    std::int64_t det() const { return data_->det; }
    std::int64_t level() const { return data_->level; }
    std::int64_t delta() const { return data_->delta; }

    /// Orders d_i > 1 of the cyclic factors of L#/L.
    const std::vector<std::int64_t>& factor_orders() const { return data_->orders; }
    const std::vector<DiscElement>& elements() const { return data_->elements; }
    const DiscElement& element(std::size_t i) const { return data_->elements.at(i); }
    std::size_t group_size() const { return data_->elements.size(); }

    /// Canonical representative: a shortest vector of the coset, lexicographically least on ties.
    const DualVector& representative(std::size_t i) const { return data_->reps.at(i); }
    /// beta of the canonical representative (the smallest beta on the coset).
    const Rational& min_beta(std::size_t i) const { return data_->min_beta.at(i); }

    Rational beta(const DualVector& r) const { return bilinear(r, r) / 2; }

    Rational bilinear(const DualVector& r, const DualVector& s) const
    {
        Rational sum = 0;
        const auto& g = data_->gram;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (r[i] == 0)
                continue;
            Rational row = 0;
            for (std::size_t j = 0; j < g.size(); ++j)
                row += static_cast<long>(g[i][j]) * s[j];
            sum += r[i] * row;
        }
        return sum;
    }

    bool in_dual(const DualVector& r) const
    {
        if (r.size() != rank())
            return false;
        for (const auto& row : data_->gram) {
            Rational s = 0;
            for (std::size_t j = 0; j < row.size(); ++j)
                s += static_cast<long>(row[j]) * r[j];
            if (!is_integral(s))
                return false;
        }
        return true;
    }

    /// Class of a dual vector in L#/L.
    std::size_t class_of(const DualVector& r) const
    {
        if (!in_dual(r))
            throw Error(ErrorKind::NotInDualLattice, "vector is not in the dual lattice");
        const auto& s = data_->smith;
        std::vector<std::int64_t> coords;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (s.d[i] == 1)
                continue;
            Rational y = 0;
            for (std::size_t j = 0; j < rank(); ++j)
                y += Rational(s.Vinv[i][j]) * r[j];
            const Rational a = y * Rational(s.d[i]);
            Integer v = a.get_num() % s.d[i];
            if (v < 0)
                v += s.d[i];
            coords.push_back(to_int64(v));
        }
        return index_of(coords);
    }

    /// Index of an element from (not necessarily reduced) coordinates.
    std::size_t index_of(std::vector<std::int64_t> coords) const
    {
        const auto& orders = data_->orders;
        if (coords.size() != orders.size())
            throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(orders.size()) + " coordinates");
        std::size_t idx = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const std::int64_t v = ((coords[i] % orders[i]) + orders[i]) % orders[i];
            idx = idx * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(v);
        }
        return idx;
    }

    std::size_t add(std::size_t a, std::size_t b) const
    {
        auto c = element(a).coords;
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += element(b).coords[i];
        return index_of(c);
    }

    std::size_t scale(std::size_t a, std::int64_t n) const
    {
        auto c = element(a).coords;
        for (auto& v : c)
            v *= n;
        return index_of(c);
    }

    std::size_t neg(std::size_t a) const { return scale(a, -1); }

    /// beta(x, y) mod Z in [0, 1).
    Rational pairing_mod1(std::size_t x, std::size_t y) const
    {
        return frac(bilinear(representative(x), representative(y)));
    }

    friend EvenLattice make_lattice(const IntMatrix& gram, std::string name);

private:
    struct Data {
        std::string name;
        IntMatrix gram;
        std::int64_t det = 1, level = 1, delta = 1;
        detail::Smith smith;
        std::vector<std::int64_t> orders;
        std::vector<DiscElement> elements;
        std::vector<DualVector> reps;
        std::vector<Rational> min_beta;
    };
    std::shared_ptr<const Data> data_;
};

namespace detail {

/// Exact G = R^t diag(q) R with R unit upper triangular.
struct LDL {
    std::vector<Rational> q;
    std::vector<std::vector<Rational>> R;
};

inline LDL ldl(const IntMatrix& g)
{
    const std::size_t m = g.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            a[i][j] = static_cast<long>(g[i][j]);
    LDL f;
    f.q.resize(m);
    f.R.assign(m, std::vector<Rational>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        f.q[i] = a[i][i];
        f.R[i][i] = 1;
        for (std::size_t j = i + 1; j < m; ++j)
            f.R[i][j] = a[i][j] / f.q[i];
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t l = i + 1; l < m; ++l)
                a[j][l] -= a[j][i] * a[i][l] / f.q[i];
    }
    return f;
}

/// All y in shift + Z^m with y^t G y <= 2 * bound, sorted lexicographically.
inline std::vector<DualVector> enumerate_coset(const IntMatrix& g, const LDL& f, const DualVector& shift,
                                               const Rational& bound)
{
    const std::size_t m = g.size();
    std::vector<DualVector> out;
    if (bound < 0)
        return out;
    DualVector y(m);
    std::vector<Rational> remaining(m + 1);
    remaining[m] = bound * 2;

    std::function<void(std::size_t)> recurse = [&](std::size_t level) {
        const std::size_t i = level - 1;
        Rational center = 0;
        for (std::size_t j = i + 1; j < m; ++j)
            center -= f.R[i][j] * y[j];
        const Rational& rem = remaining[level];
        const double radius = std::sqrt(std::max(0.0, Rational(rem / f.q[i]).get_d()));
        const Rational base = center - shift[i];
        const Integer lo = floor(base) - static_cast<long>(std::ceil(radius)) - 1;
        const Integer hi = ceil(base) + static_cast<long>(std::ceil(radius)) + 1;
        for (Integer lam = lo; lam <= hi; ++lam) {
            y[i] = Rational(lam) + shift[i];
            const Rational t = y[i] - center;
            const Rational used = f.q[i] * t * t;
            if (used > rem)
                continue;
            remaining[i] = rem - used;
            if (i == 0)
                out.push_back(y);
            else
                recurse(i);
        }
    };
    recurse(m);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

inline EvenLattice make_lattice(const IntMatrix& gram, std::string name = "")
{
    const std::size_t m = gram.size();
    if (m == 0)
        throw Error(ErrorKind::Degenerate, "rank-0 lattice");
    for (const auto& row : gram)
        if (row.size() != m)
            throw Error(ErrorKind::NotSquare, "Gram matrix is not square");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (gram[i][j] != gram[j][i])
                throw Error(ErrorKind::NotSymmetric,
                            "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose");
    for (std::size_t i = 0; i < m; ++i)
        if (gram[i][i] % 2 != 0)
            throw Error(ErrorKind::OddDiagonal, "diagonal entry " + std::to_string(i) + " is odd");
    const auto minors = detail::leading_minors(gram);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        if (minors[k] == 0)
            throw Error(ErrorKind::Degenerate, "leading minor " + std::to_string(k + 1) + " vanishes");
        if (minors[k] < 0)
            throw Error(ErrorKind::NotPositiveDefinite, "leading minor " + std::to_string(k + 1) + " is negative");
    }

    auto data = std::make_shared<EvenLattice::Data>();
    data->name = std::move(name);
    data->gram = gram;
    data->det = to_int64(minors.back());
    const std::int64_t sign = ((m / 2) % 2 == 0) ? 1 : -1;
    data->delta = (m % 2 == 0) ? sign * data->det : sign * 2 * data->det;
    data->smith = detail::smith_normal_form(gram);

    const auto& s = data->smith;
    std::vector<std::size_t> factor_pos;
    for (std::size_t i = 0; i < m; ++i)
        if (s.d[i] != 1) {
            data->orders.push_back(to_int64(s.d[i]));
            factor_pos.push_back(i);
        }

    // generator g_i = V e_i / d_i
    std::vector<DualVector> gens;
    for (std::size_t pos : factor_pos) {
        DualVector g(m);
        for (std::size_t r = 0; r < m; ++r)
            g[r] = Rational(s.V[r][pos]) / Rational(s.d[pos]);
        gens.push_back(std::move(g));
    }

    EvenLattice lattice;
    lattice.data_ = data;
    auto level = Integer(1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i; j < gens.size(); ++j) {
            const Rational v = (i == j) ? lattice.beta(gens[i]) : lattice.bilinear(gens[i], gens[j]);
            mpz_lcm(level.get_mpz_t(), level.get_mpz_t(), v.get_den_mpz_t());
        }
    }
    data->level = to_int64(level);

    const auto f = detail::ldl(gram);
    const std::size_t count = static_cast<std::size_t>(data->det);
    std::vector<std::int64_t> coords(data->orders.size(), 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rem = idx;
        for (std::size_t i = data->orders.size(); i-- > 0;) {
            coords[i] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(data->orders[i]));
            rem /= static_cast<std::size_t>(data->orders[i]);
        }
        DualVector raw(m, Rational(0));
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t r = 0; r < m; ++r)
                raw[r] += coords[i] * gens[i][r];
        // Babai rounding in the LDL frame gives a short start, then the exact search finds the minimum.
        DualVector start = raw;
        for (std::size_t i = m; i-- > 0;) {
            Rational center = 0;
            for (std::size_t j = i + 1; j < m; ++j)
                center -= f.R[i][j] * start[j];
            const Rational shift = start[i] - center;
            start[i] -= Rational(floor(shift + Rational(1, 2)));
        }
        const auto points = detail::enumerate_coset(gram, f, start, lattice.beta(start));
        const DualVector* best = &points.front();
        Rational best_beta = lattice.beta(*best);
        for (const auto& p : points) {
            const Rational b = lattice.beta(p);
            if (b < best_beta) {
                best = &p;
                best_beta = b;
            }
        }
        DiscElement e;
        e.coords = coords;
        e.index = idx;
        e.beta_mod1 = frac(best_beta);
        std::int64_t order = 1;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            const std::int64_t d = data->orders[i];
            const std::int64_t o = d / std::gcd(d, coords[i]);
            order = std::lcm(order, o);
        }
        e.order = order;
        data->elements.push_back(std::move(e));
        data->reps.push_back(*best);
        data->min_beta.push_back(best_beta);
    }
    return lattice;
}

inline const std::vector<DiscElement>& discriminant_group(const EvenLattice& L) { return L.elements(); }

struct BetaValues {
    Rational beta;
    std::function<Rational(const DualVector&)> pairing;
};

inline BetaValues beta_values(const EvenLattice& L, const DualVector& r)
{
    if (!L.in_dual(r))
        throw Error(ErrorKind::NotInDualLattice, "vector is not in the dual lattice");
    return {L.beta(r), [L, r](const DualVector& s) { return L.bilinear(r, s); }};
}

inline std::vector<DiscElement> isotropy_set(const EvenLattice& L)
{
    std::vector<DiscElement> out;
    for (const auto& e : L.elements())
        if (e.beta_mod1 == 0)
            out.push_back(e);
    return out;
}

/// (D * Delta(L) / a).
inline int chi_L(const EvenLattice& L, const Rational& D, const Integer& a)
{
    const Rational t = D * Rational(Integer(static_cast<long>(L.delta())));
    if (!is_integral(t))
        throw Error(ErrorKind::NonIntegralArgument, "D * Delta(L) = " + to_string(t) + " is not integral");
    return kronecker(t.get_num(), a);
}

inline FourierIndex make_index(const EvenLattice& L, const Rational& D, std::size_t x)
{
    if (D > 0 || !is_integral(L.min_beta(x) - D))
        throw Error(ErrorKind::NotInSupport, "(" + to_string(D) + ", x" + std::to_string(x) + ") is not in the support");
    return {D, x, L.min_beta(x) - D};
}

/// Support pairs with q-exponent at most n_max, sorted by (n, coordinates).
inline std::vector<FourierIndex> enumerate_supp(const EvenLattice& L, const Rational& n_max)
{
    if (n_max < 0)
        throw Error(ErrorKind::InvalidArgument, "n_max must be non-negative");
    std::vector<FourierIndex> out;
    for (std::size_t x = 0; x < L.group_size(); ++x) {
        const Rational& b = L.min_beta(x);
        for (Integer n = ceil(b); Rational(n) <= n_max; ++n)
            out.push_back({b - Rational(n), x, Rational(n)});
    }
    std::stable_sort(out.begin(), out.end(), [](const FourierIndex& a, const FourierIndex& b) {
        return a.n != b.n ? a.n < b.n : a.x < b.x;
    });
    return out;
}

/// All r = x + lambda (lambda in L) with beta(r) <= bound, sorted lexicographically.
inline std::vector<DualVector> coset_points(const EvenLattice& L, std::size_t x, const Rational& bound)
{
    if (bound < 0)
        throw Error(ErrorKind::InvalidArgument, "bound must be non-negative");
    return detail::enumerate_coset(L.gram(), detail::ldl(L.gram()), L.representative(x), bound);
}

} // namespace jlf
