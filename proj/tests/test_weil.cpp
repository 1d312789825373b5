#include <gtest/gtest.h>

#include <map>

#include "jlf/weil.hpp"

using namespace jlf;

namespace {

using C = std::complex<double>;

std::vector<EvenLattice> test_lattices()
{
    return {make_lattice({{2}}), make_lattice({{8}}), make_lattice({{2, 1}, {1, 2}}), make_lattice({{2, 0}, {0, 2}})};
}

/// The isotropic element j / (2m) of [[2m]].
std::size_t rank_one_class(const EvenLattice& L, std::int64_t j)
{
    return L.class_of({make_rational(j, L.gram()[0][0])});
}

} // namespace

TEST(Rho, Examples)
{
    auto a1 = make_lattice({{2}});
    const auto t = rho_generator(a1, Generator::T);
    EXPECT_LE(std::abs(t(0, 0) - C(1, 0)), 1e-15);
    EXPECT_LE(std::abs(t(1, 1) - C(0, 1)), 1e-15);
    EXPECT_EQ(t(0, 1), C(0, 0));
    const auto s = rho_generator(a1, Generator::S);
    const C f = std::exp(C(0, -std::numbers::pi / 4)) / std::sqrt(2.0);
    EXPECT_LE(std::abs(s(0, 0) - f), 1e-15);
    EXPECT_LE(std::abs(s(0, 1) - f), 1e-15);
    EXPECT_LE(std::abs(s(1, 0) - f), 1e-15);
    EXPECT_LE(std::abs(s(1, 1) + f), 1e-15);
}

TEST(Rho, UnitaryAndRelations)
{
    for (const auto& L : test_lattices()) {
        const std::size_t n = L.group_size();
        const auto id = RepMatrix::identity(n);
        for (auto g : {Generator::T, Generator::S, Generator::TInv, Generator::SInv})
            EXPECT_LE(unitarity_defect(rho_generator(L, g)), 1e-12);
        EXPECT_LE(max_norm_diff(rho_word(L, {Generator::T, Generator::TInv}), id), 1e-12);
        // S^2 = (ST)^3 in Mp2(Z), S^2 e_x = i^{-rk} e_{-x}, so S^4 = (-1)^rk and S^8 = 1
        const auto s2 = rho_word(L, {Generator::S, Generator::S});
        EXPECT_LE(max_norm_diff(s2, rho_word(L, {Generator::S, Generator::T, Generator::S, Generator::T, Generator::S,
                                                 Generator::T})),
                  1e-12);
        const C z = std::pow(C(0, -1), static_cast<double>(L.rank()));
        for (std::size_t x = 0; x < n; ++x)
            EXPECT_LE(std::abs(s2(L.neg(x), x) - z), 1e-12);
        RepMatrix s4 = id;
        for (std::size_t i = 0; i < n; ++i)
            s4(i, i) = L.rank() % 2 ? -1.0 : 1.0;
        EXPECT_LE(max_norm_diff(rho_word(L, std::vector<Generator>(4, Generator::S)), s4), 1e-12);
        EXPECT_LE(max_norm_diff(rho_word(L, std::vector<Generator>(8, Generator::S)), id), 1e-12);
        // the dual is the entrywise conjugate
        const auto w = rho_word(L, {Generator::S, Generator::T, Generator::SInv});
        const auto wd = rho_word(L, {Generator::S, Generator::T, Generator::SInv});
        EXPECT_LE(max_norm_diff(conj(w), adjoint(adjoint(conj(wd)))), 1e-15);
    }
}

TEST(Schrodinger, Examples)
{
    auto l8 = make_lattice({{8}});
    const std::size_t n = l8.group_size();
    for (std::size_t x = 0; x < n; ++x) {
        const auto s = schrodinger_matrix(l8, x, 0, 0, 1);
        for (std::size_t y = 0; y < n; ++y)
            EXPECT_LE(std::abs(s(y, y) - e_rational(l8.element(x).beta_mod1)), 1e-15);
        const auto p = schrodinger_matrix(l8, x, 1, 0, 0);
        for (std::size_t y = 0; y < n; ++y)
            EXPECT_LE(std::abs(p(l8.add(y, l8.neg(x)), y) - C(1, 0)), 1e-15);
    }
    EXPECT_EQ(max_norm_diff(schrodinger_matrix(l8, 0, 3, 5, 7), RepMatrix::identity(n)), 0.0);
}

TEST(Schrodinger, UnitaryAndConjugation)
{
    const std::vector<HeisenbergElement> basis{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 3, 1}};
    for (const auto& L : test_lattices())
        for (std::size_t x = 0; x < L.group_size(); ++x)
            for (const auto& h : basis) {
                EXPECT_LE(unitarity_defect(schrodinger_matrix(L, x, h.lam, h.mu, h.t)), 1e-12);
                for (auto g : {Generator::T, Generator::S, Generator::TInv, Generator::SInv})
                    EXPECT_LE(conjugation_check(L, x, h.lam, h.mu, h.t, g), 1e-10)
                        << L.gram().size() << " x" << x << " g" << to_string(g);
            }
    auto a1 = make_lattice({{2}});
    EXPECT_EQ(conjugation_check(a1, 0, 1, 0, 0, Generator::S), 0.0);
}

TEST(Averaging, Structure)
{
    for (const auto& L : test_lattices()) {
        EXPECT_LE(max_norm_diff(averaging_matrix(L, 0), RepMatrix::identity(L.group_size())), 1e-15);
        for (std::size_t x = 0; x < L.group_size(); ++x) {
            const auto av = averaging_matrix(L, x);
            EXPECT_LE(max_norm_diff(av, adjoint(av)), 1e-10);
            const std::int64_t n2 = L.element(x).order * L.element(x).order;
            EXPECT_EQ(max_norm_diff(schrodinger_matrix(L, x, 1 + n2, 2, 0), schrodinger_matrix(L, x, 1, 2, 0)), 0.0);
            EXPECT_EQ(max_norm_diff(schrodinger_matrix(L, x, 1, 2 + n2, 0), schrodinger_matrix(L, x, 1, 2, 0)), 0.0);
            if (L.element(x).beta_mod1 != 0)
                continue;
            // for isotropic x, Av_x = N_x P with P^2 = N_x P, so Av_x / N_x^2 is the idempotent
            RepMatrix p = av;
            for (auto& v : p.a)
                v /= static_cast<double>(n2);
            EXPECT_LE(max_norm_diff(p * p, p), 1e-10);
        }
    }
    auto l8 = make_lattice({{8}});
    const auto j4 = rank_one_class(l8, 4);
    const auto av = averaging_matrix(l8, j4);
    for (std::size_t y = 0; y < 8; ++y)
        for (std::size_t z = 0; z < 8; ++z)
            if (l8.pairing_mod1(j4, y) != 0 || l8.pairing_mod1(j4, z) != 0) {
                EXPECT_LE(std::abs(av(y, z)), 1e-12);
            }
}

TEST(Orbit, Relation)
{
    auto l8 = make_lattice({{8}});
    const auto j4 = rank_one_class(l8, 4);
    const auto rel = orbit_relation(l8, 4, j4);
    EXPECT_EQ(rel.lhs, (std::vector<std::size_t>{0, j4}));
    ASSERT_EQ(rel.rows.size(), 4u); // y = 0, 2, 4, 6 (in eighths)
    for (const auto& row : rel.rows) {
        EXPECT_EQ(l8.pairing_mod1(j4, row.y), 0);
        EXPECT_EQ(row.terms, (std::vector<std::size_t>{row.y, l8.add(row.y, j4)}));
    }
    try {
        orbit_relation(l8, 5, j4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OddWeight);
    }
    try {
        orbit_relation(l8, 4, rank_one_class(l8, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotIsotropic);
    }
}

TEST(NontrivialFromTrivial, CaseTables)
{
    // order 2 and order 4 tables written out case by case
    auto l8 = make_lattice({{8}});
    const auto j4 = rank_one_class(l8, 4);
    for (const auto& f : enumerate_supp(l8, 2)) {
        if (f.D == 0)
            continue;
        const Rational expected = l8.pairing_mod1(j4, f.x) == 0 ? trivial_coefficient_exact(l8, 4, f.D, l8.add(f.x, j4))
                                                                : -trivial_coefficient_exact(l8, 4, f.D, f.x);
        EXPECT_EQ(nontrivial_from_trivial(l8, 4, j4, f.D, f.x), expected);
    }
    auto l32 = make_lattice({{32}});
    const auto x = rank_one_class(l32, 8);
    ASSERT_EQ(l32.element(x).order, 4);
    auto g0 = [&](const Rational& D, std::size_t y) { return trivial_coefficient_exact(l32, 6, D, y); };
    for (const auto& f : enumerate_supp(l32, 1)) {
        if (f.D == 0)
            continue;
        const std::size_t y = f.x;
        Rational expected;
        if (l32.pairing_mod1(x, y) == 0)
            expected = (g0(f.D, l32.add(y, x)) + g0(f.D, l32.add(y, l32.scale(x, 3)))) / 2;
        else if (l32.pairing_mod1(l32.scale(x, 2), y) == 0)
            expected = -(g0(f.D, y) + g0(f.D, l32.add(y, l32.scale(x, 2)))) / 2;
        else
            expected = 0;
        EXPECT_EQ(nontrivial_from_trivial(l32, 6, x, f.D, y), expected);
    }
    // order 6 with beta(x, y), beta(2x, y), beta(3x, y) all non-integral: G_x = +G_0(D, y) / 2
    auto l72 = make_lattice({{72}});
    const auto x6 = rank_one_class(l72, 12);
    const auto y = rank_one_class(l72, 1);
    const Rational D = l72.min_beta(y) - 1;
    EXPECT_EQ(nontrivial_from_trivial(l72, 6, x6, D, y), trivial_coefficient_exact(l72, 6, D, y) / 2);
}

TEST(NontrivialFromTrivial, Errors)
{
    auto l50 = make_lattice({{50}});
    const auto x5 = rank_one_class(l50, 10);
    ASSERT_EQ(l50.element(x5).order, 5);
    try {
        nontrivial_from_trivial(l50, 4, x5, -1, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedOrder);
    }
    auto l8 = make_lattice({{8}});
    try {
        nontrivial_from_trivial(l8, 5, rank_one_class(l8, 4), -1, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OddWeight);
    }
}

TEST(NontrivialFromTrivial, MatchesNumericSeries)
{
    // orders 2, 3, 4, 6 on [[8]], [[18]], [[32]], [[72]]
    const std::vector<std::pair<std::int64_t, std::int64_t>> cases{{8, 4}, {18, 6}, {32, 8}, {72, 12}};
    for (auto [g, j] : cases) {
        auto L = make_lattice({{g}});
        const auto x = rank_one_class(L, j);
        const auto spec = make_eisenstein_spec(L, 6, x);
        for (const auto& f : enumerate_supp(L, 1)) {
            if (f.D == 0)
                continue;
            const double exact = nontrivial_from_trivial(L, 6, x, f.D, f.x).get_d();
            const double numeric = eisenstein_coefficient_numeric(spec, f.D, f.x, 600).value.real();
            EXPECT_NEAR(numeric, exact, std::max(1e-3, 1e-3 * std::abs(exact))) << g << " " << f.D.get_str() << " " << f.x;
        }
    }
}

TEST(Averaging, TrivialComponentsGiveOrbitSum)
{
    auto l8 = make_lattice({{8}});
    const auto j4 = rank_one_class(l8, 4);
    const int k = 4;
    const auto av = averaging_matrix(l8, j4);
    const auto spec = make_eisenstein_spec(l8, k, j4);
    std::map<Rational, std::vector<std::size_t>> by_d;
    for (const auto& f : enumerate_supp(l8, 2))
        if (f.D != 0)
            by_d[f.D].push_back(f.x);
    for (const auto& [D, ys] : by_d) {
        // the full component vector at this D, not just the classes inside the q-exponent window
        std::vector<C> v(8, 0.0);
        for (std::size_t y = 0; y < 8; ++y)
            if (is_integral(l8.min_beta(y) - D))
                v[y] = trivial_coefficient_exact(l8, k, D, y).get_d();
        const auto w = av * v;
        for (auto y : ys) {
            // lam in Z_4 with lam beta(x) in Z: every lam, i.e. twice the orbit over Z_2
            const double orbit = 2 * (v[y].real() + eisenstein_coefficient_numeric(spec, D, y, 2000).value.real());
            EXPECT_NEAR(w[y].real(), orbit, std::max(1e-3, 1e-3 * std::abs(orbit)));
        }
    }
}

TEST(Orbit, OddWeightCancels)
{
    auto l32 = make_lattice({{32}});
    const auto x = rank_one_class(l32, 8);
    for (const auto& f : enumerate_supp(l32, 1)) {
        if (f.D == 0)
            continue;
        C sum = 0;
        double scale = 1;
        for (std::int64_t lam = 0; lam < 4; ++lam) {
            const auto v = eisenstein_coefficient_numeric(make_eisenstein_spec(l32, 7, l32.scale(x, lam)), f.D, f.x, 400).value;
            sum += v;
            scale = std::max(scale, std::abs(v));
        }
        EXPECT_LE(std::abs(sum), 1e-9 * scale);
    }
}
