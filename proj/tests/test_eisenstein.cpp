#include <gtest/gtest.h>

#include "jlf/eisenstein.hpp"

using namespace jlf;

namespace {

/// Cohen's H(r, N) via the fundamental decomposition of -N.
Rational cohen_h(int r, std::int64_t N)
{
    const auto fd = fundamental_decomposition(-N);
    const QuadChar chi{fd.f};
    Rational s = 0;
    for (std::int64_t d : divisors(fd.d))
        s += moebius(d) * chi(d) * pow(Rational(d), r - 1) * sigma_twisted(QuadChar{1}, 2 * r - 1, fd.d / d);
    return dirichlet_L_nonpositive(r - 1, chi) * s;
}

/// Index-one Eisenstein coefficient e_{k,1}(n, r) = H(k-1, 4n - r^2) / zeta(3 - 2k).
Rational eichler_zagier(int k, std::int64_t N)
{
    return cohen_h(k - 1, N) / dirichlet_L_nonpositive(2 * k - 3, QuadChar{1});
}

bool close(double a, double b, double rel, double abs_tol)
{
    return std::abs(a - b) <= std::max(abs_tol, rel * std::abs(b));
}

} // namespace

TEST(Theta, Coefficients)
{
    auto a1 = make_lattice({{2}});
    auto t0 = theta_coefficients(a1, 0, 1);
    EXPECT_EQ(t0[0], 1);
    EXPECT_EQ(t0[1], 2);
    auto t1 = theta_coefficients(a1, 1, 1);
    EXPECT_EQ(t1[make_rational(1, 4)], 2);
    auto l8 = make_lattice({{8}});
    for (std::size_t x = 1; x < l8.group_size(); ++x)
        if (auto t = theta_coefficients(l8, x, 2); t.count(0)) {
            EXPECT_EQ(t.at(0), 0);
        }
}

TEST(Singular, Terms)
{
    auto a1 = make_lattice({{2}});
    auto s = singular_term(make_eisenstein_spec(a1, 4, 0), 3);
    ASSERT_EQ(s.entries.size(), 1u);
    EXPECT_EQ(std::get<Rational>(s.entries[0].value), 1);
    auto odd = singular_term(make_eisenstein_spec(a1, 5, 0), 3);
    for (const auto& e : odd.entries)
        EXPECT_EQ(std::get<Rational>(e.value), 0);
    auto l8 = make_lattice({{8}});
    const auto j4 = l8.class_of({make_rational(1, 2)});
    auto s8 = singular_term(make_eisenstein_spec(l8, 4, j4), 3);
    const auto* e = s8.find(0, j4);
    ASSERT_NE(e, nullptr);
    EXPECT_EQ(std::get<Rational>(e->value), 1);
    EXPECT_EQ(std::get<Rational>(s8.find(0, 0)->value), 0);
}

TEST(Singular, MatchesThetaCounts)
{
    // the D = 0 part of E_r is (theta_r + (-1)^k theta_{-r}) / 2; every vector of
    // x + L with beta = n carries coefficient 1 in theta_x
    auto l8 = make_lattice({{8}});
    const auto j4 = l8.class_of({make_rational(1, 2)});
    for (int k : {4, 5}) {
        auto spec = make_eisenstein_spec(l8, k, j4);
        auto s = singular_term(spec, 3);
        for (const auto& entry : s.entries) {
            const Integer count = theta_coefficients(l8, entry.index.x, entry.index.n).at(entry.index.n);
            ASSERT_GT(count, 0);
            const int in_r = entry.index.x == j4, in_neg = l8.neg(entry.index.x) == j4;
            const Rational expected = Rational(in_r + (k % 2 == 0 ? 1 : -1) * in_neg) / 2;
            EXPECT_EQ(std::get<Rational>(entry.value), expected);
        }
    }
}

TEST(Exact, EichlerZagierIndexOne)
{
    auto a1 = make_lattice({{2}});
    EXPECT_EQ(trivial_coefficient_exact(a1, 4, -1, 0), 126);
    EXPECT_EQ(trivial_coefficient_exact(a1, 4, make_rational(-3, 4), 1), 56);
    for (int k : {4, 6, 8, 10, 12})
        for (const auto& f : enumerate_supp(a1, 4)) {
            if (f.D == 0)
                continue;
            const std::int64_t N = to_int64(Rational(-4 * f.D).get_num());
            EXPECT_EQ(trivial_coefficient_exact(a1, k, f.D, f.x), eichler_zagier(k, N)) << k << " " << N;
        }
}

TEST(Exact, KnownValues)
{
    auto l8 = make_lattice({{8}});
    auto cls = [&](int j) { return l8.class_of({make_rational(j, 8)}); };
    EXPECT_EQ(trivial_coefficient_exact(l8, 4, -1, 0), 56);
    EXPECT_EQ(trivial_coefficient_exact(l8, 4, -2, 0), 420);
    EXPECT_EQ(trivial_coefficient_exact(l8, 4, make_rational(-15, 16), cls(1)), 56);
    EXPECT_EQ(trivial_coefficient_exact(l8, 4, make_rational(-3, 4), cls(2)), 28);
    EXPECT_EQ(trivial_coefficient_exact(l8, 4, make_rational(-7, 16), cls(3)), 8);
    EXPECT_EQ(trivial_coefficient_exact(l8, 4, -1, cls(4)), 70);
    EXPECT_EQ(trivial_coefficient_exact(make_lattice({{2, 0}, {0, 2}}), 6, -1, 0), -204);
}

TEST(Exact, OddWeightAndDomain)
{
    auto a1 = make_lattice({{2}});
    EXPECT_EQ(trivial_coefficient_exact(a1, 5, -1, 0), 0);
    EXPECT_EQ(trivial_coefficient_series(a1, 5, -1, 0, 100), 0.0);
    try {
        trivial_coefficient_exact(make_lattice({{2, 0}, {0, 2}}), 3, -1, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ConvergenceDomain);
    }
    try {
        trivial_coefficient_series(make_lattice({{2, 0}, {0, 2}}), 3, -1, 0, 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ConvergenceDomain);
    }
}

TEST(Series, AgreesWithExact)
{
    auto a1 = make_lattice({{2}});
    EXPECT_NEAR(trivial_coefficient_series(a1, 4, -1, 0, 5000), 126, 1e-2);
    for (const IntMatrix& g : {IntMatrix{{2}}, IntMatrix{{8}}, IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{2, 0}, {0, 6}},
                               IntMatrix{{6}}}) {
        auto L = make_lattice(g);
        for (int k : {6, 8})
            for (const auto& f : enumerate_supp(L, 2)) {
                if (f.D == 0)
                    continue;
                const double exact = trivial_coefficient_exact(L, k, f.D, f.x).get_d();
                const double series = trivial_coefficient_series(L, k, f.D, f.x, 1000);
                EXPECT_TRUE(close(series, exact, 1e-4, 1e-6)) << k << " " << f.D.get_str() << " x" << f.x << ": " << series
                                                               << " vs " << exact;
            }
    }
}

TEST(Numeric, TrivialSeriesMatchesExact)
{
    auto a1 = make_lattice({{2}});
    auto spec = make_eisenstein_spec(a1, 8, 0);
    const auto c = eisenstein_coefficient_numeric(spec, -1, 0, 400);
    const double exact = trivial_coefficient_exact(a1, 8, -1, 0).get_d();
    EXPECT_NEAR(c.value.real(), exact, 1e-6 * std::abs(exact));
    EXPECT_LE(std::abs(c.value.imag()), 1e-9 * std::abs(exact));

    auto z2 = make_lattice({{2, 0}, {0, 2}});
    auto spec2 = make_eisenstein_spec(z2, 8, 0);
    for (const auto& f : enumerate_supp(z2, 1)) {
        if (f.D == 0)
            continue;
        const auto v = eisenstein_coefficient_numeric(spec2, f.D, f.x, 200);
        const double ex = trivial_coefficient_exact(z2, 8, f.D, f.x).get_d();
        EXPECT_NEAR(v.value.real(), ex, 1e-4 * std::abs(ex));
    }
}

TEST(Numeric, SingleTermAndOddWeight)
{
    auto a1 = make_lattice({{2}});
    auto spec = make_eisenstein_spec(a1, 8, 0);
    try {
        eisenstein_coefficient_numeric(spec, -1, 0, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TailTooLarge);
    }
    auto odd = make_eisenstein_spec(a1, 7, 0);
    EXPECT_EQ(std::abs(eisenstein_coefficient_numeric(odd, -1, 0, 50).value), 0.0);
}

TEST(Expansion, ExactIndexOne)
{
    auto a1 = make_lattice({{2}}, "A1");
    auto e = eisenstein_expansion(make_eisenstein_spec(a1, 4, 0), 1, Mode::Exact, 0);
    ASSERT_EQ(e.entries.size(), 3u);
    EXPECT_EQ(std::get<Rational>(e.find(0, 0)->value), 1);
    EXPECT_EQ(std::get<Rational>(e.find(make_rational(-3, 4), 1)->value), 56);
    EXPECT_EQ(std::get<Rational>(e.find(-1, 0)->value), 126);
    const auto j = to_json(e);
    EXPECT_EQ(j["entries"][0]["value"], "1/1");
    EXPECT_EQ(j["mode"], "exact");
    EXPECT_TRUE(j["tail_estimate"].is_null());

    auto odd = eisenstein_expansion(make_eisenstein_spec(a1, 5, 0), 3, Mode::Exact, 0);
    for (const auto& entry : odd.entries)
        EXPECT_EQ(std::get<Rational>(entry.value), 0);
}

TEST(Expansion, NumericSymmetry)
{
    auto l8 = make_lattice({{8}});
    const auto j4 = l8.class_of({make_rational(1, 2)});
    auto e = eisenstein_expansion(make_eisenstein_spec(l8, 6, j4), 1, Mode::Numeric, 300);
    for (const auto& entry : e.entries) {
        const auto* other = e.find(entry.index.D, l8.neg(entry.index.x));
        ASSERT_NE(other, nullptr);
        const auto a = as_complex(entry.value), b = as_complex(other->value);
        EXPECT_LE(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(a)));
    }
}
