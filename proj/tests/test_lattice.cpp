#include <gtest/gtest.h>

#include "jlf/lattice.hpp"

using namespace jlf;

namespace {

ErrorKind kind_of(const IntMatrix& g)
{
    try {
        make_lattice(g);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Io;
}

std::vector<IntMatrix> test_grams()
{
    return {{{2}}, {{8}}, {{2, 1}, {1, 2}}, {{2, 0}, {0, 2}}, {{4, 0}, {0, 4}}, {{2, 0}, {0, 6}},
            {{4, 1, 0}, {1, 2, 1}, {0, 1, 6}}, {{6}}, {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}};
}

} // namespace

TEST(MakeLattice, Invariants)
{
    auto a1 = make_lattice({{2}});
    EXPECT_EQ(a1.rank(), 1u);
    EXPECT_EQ(a1.det(), 2);
    EXPECT_EQ(a1.delta(), 4);
    EXPECT_EQ(a1.level(), 4);

    auto z2 = make_lattice({{2, 0}, {0, 2}});
    EXPECT_EQ(z2.det(), 4);
    EXPECT_EQ(z2.delta(), -4);
    EXPECT_EQ(z2.level(), 4);

    EXPECT_EQ(make_lattice({{2, 1}, {1, 2}}).level(), 3);
    EXPECT_EQ(make_lattice({{8}}).level(), 16);
    EXPECT_EQ(make_lattice({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}).delta(), -8);
}

TEST(MakeLattice, Errors)
{
    EXPECT_EQ(kind_of({{2, 1}, {1, 1}}), ErrorKind::OddDiagonal);
    EXPECT_EQ(kind_of({{2, 1}, {0, 2}}), ErrorKind::NotSymmetric);
    EXPECT_EQ(kind_of({{2, 3}, {3, 2}}), ErrorKind::NotPositiveDefinite);
    EXPECT_EQ(kind_of({{2, 2}, {2, 2}}), ErrorKind::Degenerate);
    EXPECT_EQ(kind_of({{2, 0}}), ErrorKind::NotSquare);
    EXPECT_EQ(kind_of({}), ErrorKind::Degenerate);
}

TEST(MakeLattice, DeltaIsDiscriminant)
{
    for (const auto& g : test_grams()) {
        auto L = make_lattice(g);
        const auto r = ((L.delta() % 4) + 4) % 4;
        EXPECT_TRUE(r == 0 || r == 1);
        if (L.rank() % 2 == 1)
            EXPECT_EQ(r, 0);
    }
}

TEST(DiscriminantGroup, Structure)
{
    auto a1 = make_lattice({{2}});
    ASSERT_EQ(a1.group_size(), 2u);
    EXPECT_EQ(a1.element(1).beta_mod1, make_rational(1, 4));
    EXPECT_EQ(a1.representative(1), (DualVector{make_rational(-1, 2)}));

    auto l8 = make_lattice({{8}});
    ASSERT_EQ(l8.factor_orders(), (std::vector<std::int64_t>{8}));
    for (std::int64_t j = 0; j < 8; ++j) {
        const auto idx = l8.class_of({make_rational(j, 8)});
        EXPECT_EQ(l8.element(idx).beta_mod1, frac(make_rational(j * j, 16)));
    }

    auto a2 = make_lattice({{2, 1}, {1, 2}});
    EXPECT_EQ(a2.factor_orders(), (std::vector<std::int64_t>{3}));
}

TEST(DiscriminantGroup, ConsistencyOverTestLattices)
{
    for (const auto& g : test_grams()) {
        auto L = make_lattice(g);
        ASSERT_EQ(static_cast<std::int64_t>(L.group_size()), L.det());
        Integer exponent = 1;
        for (auto d : L.factor_orders())
            mpz_lcm_ui(exponent.get_mpz_t(), exponent.get_mpz_t(), static_cast<unsigned long>(d));
        for (const auto& e : L.elements()) {
            const auto& r = L.representative(e.index);
            EXPECT_EQ(L.class_of(r), e.index);
            EXPECT_EQ(frac(L.beta(r)), e.beta_mod1);
            EXPECT_EQ(exponent % e.order, 0);
            DualVector scaled = r;
            for (auto& v : scaled)
                v *= e.order;
            EXPECT_EQ(L.class_of(scaled), 0u);
            EXPECT_TRUE(is_integral(L.beta(r) * L.level()));
            // shortest on its coset
            for (const auto& p : coset_points(L, e.index, L.min_beta(e.index)))
                EXPECT_GE(L.beta(p), L.min_beta(e.index));
        }
        // level is minimal
        for (std::int64_t l = 1; l < L.level(); ++l) {
            bool ok = true;
            for (const auto& e : L.elements())
                ok = ok && is_integral(e.beta_mod1 * l);
            EXPECT_FALSE(ok) << l;
        }
    }
}

TEST(BetaValues, Examples)
{
    auto a1 = make_lattice({{2}});
    EXPECT_EQ(beta_values(a1, {make_rational(1, 2)}).beta, make_rational(1, 4));
    auto a2 = make_lattice({{2, 1}, {1, 2}});
    auto bv = beta_values(a2, {1, 0});
    EXPECT_EQ(bv.beta, 1);
    EXPECT_EQ(bv.pairing({0, 1}), 1);
    try {
        beta_values(a1, {make_rational(1, 3)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInDualLattice);
    }
}

TEST(Isotropy, Sets)
{
    EXPECT_EQ(isotropy_set(make_lattice({{2}})).size(), 1u);
    auto l8 = make_lattice({{8}});
    auto iso = isotropy_set(l8);
    ASSERT_EQ(iso.size(), 2u);
    EXPECT_EQ(iso[0].index, 0u);
    EXPECT_EQ(iso[1].index, l8.class_of({make_rational(1, 2)}));
    EXPECT_EQ(isotropy_set(make_lattice({{2, 0}, {0, 2}})).size(), 1u);
}

TEST(ChiL, Examples)
{
    EXPECT_EQ(chi_L(make_lattice({{2}}), 1, 3), 1);
    EXPECT_EQ(chi_L(make_lattice({{2, 0}, {0, 2}}), 1, 3), -1);
    EXPECT_EQ(chi_L(make_lattice({{2, 1}, {1, 2}}), 1, 1), 1);
    try {
        chi_L(make_lattice({{2}}), make_rational(1, 8), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonIntegralArgument);
    }
}

TEST(Support, Enumeration)
{
    auto a1 = make_lattice({{2}});
    auto s = enumerate_supp(a1, 1);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0], (FourierIndex{0, 0, 0}));
    EXPECT_EQ(s[1], (FourierIndex{-1, 0, 1}));
    EXPECT_EQ(s[2], (FourierIndex{make_rational(-3, 4), 1, 1}));
    EXPECT_EQ(enumerate_supp(a1, 0).size(), 1u);

    auto l8 = make_lattice({{8}});
    auto s8 = enumerate_supp(l8, 1);
    const auto j4 = l8.class_of({make_rational(1, 2)});
    EXPECT_NE(std::find(s8.begin(), s8.end(), FourierIndex{-1, 0, 1}), s8.end());
    EXPECT_NE(std::find(s8.begin(), s8.end(), FourierIndex{0, j4, 1}), s8.end());

    for (const auto& g : test_grams()) {
        auto L = make_lattice(g);
        auto small = enumerate_supp(L, 1);
        auto large = enumerate_supp(L, make_rational(5, 2));
        for (const auto& f : small) {
            EXPECT_TRUE(is_integral(L.element(f.x).beta_mod1 - f.D));
            EXPECT_LE(f.D, 0);
            EXPECT_NE(std::find(large.begin(), large.end(), f), large.end());
        }
    }
}

TEST(CosetPoints, Examples)
{
    auto a1 = make_lattice({{2}});
    EXPECT_EQ(coset_points(a1, 0, 1), (std::vector<DualVector>{{-1}, {0}, {1}}));
    EXPECT_EQ(coset_points(a1, 1, make_rational(1, 4)),
              (std::vector<DualVector>{{make_rational(-1, 2)}, {make_rational(1, 2)}}));
    for (const auto& g : test_grams()) {
        auto L = make_lattice(g);
        EXPECT_EQ(coset_points(L, 0, 0).size(), 1u);
        for (std::size_t x = 0; x < L.group_size(); ++x) {
            const auto pts = coset_points(L, x, 3);
            EXPECT_EQ(pts.size(), coset_points(L, L.neg(x), 3).size());
            for (const auto& p : pts) {
                EXPECT_EQ(L.class_of(p), x);
                EXPECT_LE(L.beta(p), 3);
            }
        }
    }
}

TEST(CosetPoints, CompleteAgainstBox)
{
    // brute force over a generous box for x = 0
    auto L = make_lattice({{4, 1, 0}, {1, 2, 1}, {0, 1, 6}});
    std::size_t count = 0;
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
            for (int c = -6; c <= 6; ++c)
                if (L.beta({a, b, c}) <= 4)
                    ++count;
    EXPECT_EQ(coset_points(L, 0, 4).size(), count);
}
