#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <qpwalk/series.hpp>

using qpwalk::errc;
using qpwalk::rational;
using qpwalk::series;

namespace
{

series s(std::initializer_list<long> coeffs)
{
    std::vector<rational> v;
    for (long c : coeffs) {
        v.emplace_back(c);
    }
    return series(std::move(v));
}

template <typename F>
void expect_code(errc code, F &&f)
{
    try {
        f();
        FAIL() << "expected " << qpwalk::to_string(code);
    } catch (const qpwalk::error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

series random_series(std::mt19937_64 &rng, std::size_t order, bool unit_constant)
{
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 9);
    std::vector<rational> v;
    for (std::size_t n = 0; n <= order; ++n) {
        v.emplace_back(num(rng), den(rng));
    }
    if (unit_constant) {
        v[0] = 1;
    }
    return series(std::move(v));
}

} // namespace

TEST(Rational, CanonicalForm)
{
    const rational q = rational(6) / rational(-4);
    EXPECT_TRUE(qpwalk::is_canonical(q));
    EXPECT_EQ(qpwalk::to_fraction_string(q), "-3/2");
    EXPECT_EQ(qpwalk::to_fraction_string(rational(5)), "5/1");
    EXPECT_EQ(qpwalk::to_compact_string(rational(5)), "5");
    EXPECT_EQ(qpwalk::parse_rational("10/4"), rational(5, 2));
    EXPECT_EQ(qpwalk::parse_rational("-7"), rational(-7));
    EXPECT_EQ(qpwalk::parse_rational("3/-6"), rational(-1, 2));
    EXPECT_EQ(qpwalk::to_fraction_string(qpwalk::parse_rational("3/-6")), "-1/2");
    EXPECT_THROW((void)qpwalk::parse_rational("1/0"), qpwalk::error);
    EXPECT_THROW((void)qpwalk::parse_rational("x/2"), qpwalk::error);
}

TEST(RingOps, Cancellation)
{
    const auto sum = s({1, 1}) + s({1, -1});
    EXPECT_EQ(sum.order(), 1U);
    EXPECT_EQ(sum, s({2, 0}));
}

TEST(RingOps, DifferenceOfSquares)
{
    EXPECT_EQ(s({1, 1, 0}) * s({1, -1, 0}), s({1, 0, -1}));
}

TEST(RingOps, HandExpansion)
{
    EXPECT_EQ(s({0, 1, 0, 0, 0}) * s({0, 1, 0, 2, 0}), s({0, 0, 1, 0, 2}));
}

TEST(RingOps, MixedOrdersTruncateToTheShorter)
{
    const auto p = s({1, 1}) * s({1, 1, 1, 1});
    EXPECT_EQ(p.order(), 1U);
}

TEST(Div, GeometricSeries)
{
    EXPECT_EQ(div(s({1, 0, 0, 0}), s({1, -1, 0, 0})), s({1, 1, 1, 1}));
}

TEST(Div, Factorization)
{
    EXPECT_EQ(div(s({0, 1, 1, 0}), s({1, 1, 0, 0})), s({0, 1, 0, 0}));
}

TEST(Div, ZeroConstantTerm)
{
    expect_code(errc::zero_constant_term, [] { (void)div(s({1, 1}), s({0, 1})); });
}

TEST(ExactShift, Examples)
{
    const auto shifted = rational(1, 4) * exact_shift_div_z(s({0, 0, 4, 0, 8, 0}), 1);
    EXPECT_EQ(shifted, s({0, 1, 0, 2, 0}));
    const auto z2 = exact_shift_div_z(s({0, 0, 0, 1}), 1);
    EXPECT_EQ(z2.order(), 2U);
    EXPECT_EQ(z2, s({0, 0, 1}));
    expect_code(errc::non_vanishing_low_order, [] { (void)exact_shift_div_z(s({1, 1}), 1); });
}

TEST(Sqrt, Examples)
{
    EXPECT_EQ(sqrt_one_plus(s({1, 0, -8, 0, 0, 0, 0})), s({1, 0, -4, 0, -8, 0, -32}));
    EXPECT_EQ(sqrt_one_plus(s({1, 0, 0, 0})), s({1, 0, 0, 0}));
    EXPECT_EQ(sqrt_one_plus(s({1, 2, 1, 0, 0})), s({1, 1, 0, 0, 0}));
    expect_code(errc::bad_constant_term, [] { (void)sqrt_one_plus(s({4, 1})); });
}

TEST(Compose, Examples)
{
    const auto geometric = s({1, 1, 1, 1, 1, 1});
    EXPECT_EQ(compose(geometric, series::variable(5)), geometric);
    EXPECT_EQ(compose(s({0, 0, 1, 0, 0}), s({0, 1, 1, 0, 0})), s({0, 0, 1, 2, 1}));
    expect_code(errc::non_positive_valuation, [] { (void)compose(s({1, 2, 3}), s({1, 1, 0})); });
}

TEST(Compose, PrefixDependence)
{
    // result[n] sees only outer[0..n] and inner[1..n]
    auto outer = s({1, 2, 3, 4, 5, 6});
    auto inner = s({0, 1, -1, 2, 0, 3});
    const auto base = compose(outer, inner);
    outer[5] = 100;
    inner[5] = -100;
    const auto changed = compose(outer, inner);
    EXPECT_EQ(base.truncate(4), changed.truncate(4));
}

TEST(Derivative, Examples)
{
    const auto d = derivative(s({0, 1, 0, 2}));
    EXPECT_EQ(d.order(), 2U);
    EXPECT_EQ(d, s({1, 0, 6}));
    EXPECT_TRUE(derivative(s({7, 0, 0})).is_zero());
}

TEST(Valuation, InfiniteForZero)
{
    EXPECT_FALSE(s({0, 0, 0}).valuation().has_value());
    EXPECT_EQ(*s({0, 0, 5}).valuation(), 2U);
}

TEST(Properties, RandomizedRingLaws)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_series(rng, 10, false);
        const auto b = random_series(rng, 10, true);
        const auto c = random_series(rng, 10, false);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(div(a, b) * b, a);
        const auto r = sqrt_one_plus(b);
        EXPECT_EQ(r * r, b);
        EXPECT_EQ(r[0], 1);
        EXPECT_EQ(compose(a, series::variable(10)), a);
        EXPECT_TRUE(all_canonical(div(a, b)));
        EXPECT_TRUE(all_canonical(r));
    }
}

TEST(Properties, DerivativeAgainstFiniteDifference)
{
    // 1 / (1 - z - z^2) at order 30; its derivative evaluated at 0.1
    // against a central difference of the truncated polynomial.
    std::vector<rational> den(31, rational(0));
    den[0] = 1;
    den[1] = -1;
    den[2] = -1;
    const auto f = div(series::constant(rational(1), 30), series(den));
    const double z = 0.1;
    const double h = 1e-5;
    const double fd = (evaluate(f, z + h) - evaluate(f, z - h)) / (2 * h);
    EXPECT_NEAR(evaluate(derivative(f), z), fd, 1e-8);
}

TEST(Serialization, JsonRoundTrip)
{
    std::vector<rational> v{rational(1), rational(-3, 7), rational(0), rational(22, 5)};
    const series a(v);
    const auto j = to_json(a);
    EXPECT_EQ(j["order"], 3);
    EXPECT_EQ(j["coeffs"][1], "-3/7");
    EXPECT_EQ(j["coeffs"][0], "1/1");
    EXPECT_EQ(qpwalk::series_from_json(j), a);
}

TEST(Evaluate, Horner)
{
    EXPECT_DOUBLE_EQ(evaluate(s({1, 2, 3}), 0.5), 1.0 + 1.0 + 0.75);
}
