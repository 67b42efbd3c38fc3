#include "minexp/poly.hpp"
#include "minexp/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace minexp;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

std::vector<std::string> xs(std::size_t n) { return numbered_names("x", n); }

Poly random_poly(std::mt19937& rng, std::size_t n, int terms, int max_exp)
{
    std::uniform_int_distribution<int> e(0, max_exp), c(-5, 5), den(1, 4);
    Poly p(xs(n));
    for (int t = 0; t < terms; ++t) {
        ExponentVector u(n);
        for (auto& x : u)
            x = static_cast<std::uint32_t>(e(rng));
        p.add_term(u, Rational(c(rng), den(rng)));
    }
    return p;
}

} // namespace

TEST(Rational, ParseForms)
{
    EXPECT_EQ(parse_rational("3"), q(3));
    EXPECT_EQ(parse_rational("-3/6"), q(-1, 2));
    EXPECT_EQ(parse_rational(" +4/2 "), q(2));
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, ExtendedOrder)
{
    auto inf = ExtendedRational::infinity();
    EXPECT_TRUE(inf.is_infinite());
    EXPECT_GT(inf, ExtendedRational(q(1000)));
    EXPECT_LT(ExtendedRational(q(1, 2)), ExtendedRational(q(2, 3)));
    EXPECT_EQ(inf.str(), "inf");
    EXPECT_THROW(inf.value(), std::domain_error);
}

TEST(Rational, ApproxIsDisplayOnly)
{
    EXPECT_EQ(approx_string(q(7, 3)), "2.33333");
    EXPECT_EQ(to_int64(Integer(42)), 42);
    EXPECT_THROW(to_int64(Integer(1) << 70), std::overflow_error);
}

TEST(Parse, DirectTerms)
{
    auto p = parse_poly("x1^2 - x2^3", xs(2));
    Poly::TermMap expect{{{2, 0}, q(1)}, {{0, 3}, q(-1)}};
    EXPECT_EQ(p.terms(), expect);
}

TEST(Parse, CombinesLikeTerms)
{
    auto p = parse_poly("x1*x1 + x1^2", xs(1));
    Poly::TermMap expect{{{2}, q(2)}};
    EXPECT_EQ(p.terms(), expect);
}

TEST(Parse, RationalCoefficient)
{
    auto p = parse_poly("3/2*x1^2*x2", xs(2));
    Poly::TermMap expect{{{2, 1}, q(3, 2)}};
    EXPECT_EQ(p.terms(), expect);
}

TEST(Parse, CancellationLeavesNoZeroTerms)
{
    auto p = parse_poly("x1*x2 - x2*x1 + 0*x1", xs(2));
    EXPECT_TRUE(p.is_zero());
    EXPECT_EQ(p.str(), "0");
}

TEST(Parse, WhitespaceAndConstants)
{
    auto p = parse_poly("  - 2 +x1 ^ 3 ", xs(1));
    Poly::TermMap expect{{{0}, q(-2)}, {{3}, q(1)}};
    EXPECT_EQ(p.terms(), expect);
}

TEST(Parse, Errors)
{
    EXPECT_THROW(parse_poly("x1 + y", xs(1)), ParseError);
    EXPECT_THROW(parse_poly("1/0*x1", xs(1)), ParseError);
    EXPECT_THROW(parse_poly("x1^0", xs(1)), ParseError);
    EXPECT_THROW(parse_poly("x1 +", xs(1)), ParseError);
    EXPECT_THROW(parse_poly("", xs(1)), ParseError);
    try {
        parse_poly("x1 + x9", xs(1));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 5u);
    }
}

TEST(Parse, PrintParseRoundTrip)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        auto p = random_poly(rng, 3, 1 + trial % 6, 4);
        auto again = parse_poly(p.str(), xs(3));
        EXPECT_EQ(again.terms(), p.terms()) << p.str();
    }
}

TEST(Arithmetic, RingLaws)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_poly(rng, 2, 3, 3), b = random_poly(rng, 2, 3, 3), c = random_poly(rng, 2, 3, 3);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
        std::vector<Rational> pt{q(trial, 3), q(-2, 5)};
        EXPECT_EQ((a * b).evaluate(pt), a.evaluate(pt) * b.evaluate(pt));
    }
}

TEST(Arithmetic, Derivative)
{
    auto p = parse_poly("x1^3*x2 + 5*x2^2", xs(2));
    EXPECT_EQ(p.derivative(0), parse_poly("3*x1^2*x2", xs(2)));
    EXPECT_EQ(p.derivative(1), parse_poly("x1^3 + 10*x2", xs(2)));
}

TEST(WeightedOrder, Examples)
{
    auto f = parse_poly("x1^2 + x2^3", xs(2));
    EXPECT_EQ(weighted_order(f, WeightVector::ones(2)), q(2));
    EXPECT_EQ(weighted_order(f, WeightVector({q(3), q(2)})), q(6));
    EXPECT_EQ(weighted_order(parse_poly("x1^2*x2", xs(2)), WeightVector({q(1, 2), q(1)})), q(2));
    EXPECT_THROW(weighted_order(Poly(xs(2)), WeightVector::ones(2)), std::invalid_argument);
    EXPECT_THROW(weighted_order(f, WeightVector::ones(3)), std::invalid_argument);
    EXPECT_THROW(WeightVector({q(1), q(0)}), std::invalid_argument);
}

TEST(WeightedOrder, ProductIsAdditive)
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> wd(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_poly(rng, 3, 3, 3), b = random_poly(rng, 3, 3, 3);
        if (a.is_zero() || b.is_zero())
            continue;
        WeightVector w({q(wd(rng), wd(rng)), q(wd(rng), wd(rng)), q(wd(rng), wd(rng))});
        EXPECT_EQ(weighted_order(a * b, w), weighted_order(a, w) + weighted_order(b, w));
        if (!(a + b).is_zero()) {
            EXPECT_GE(weighted_order(a + b, w), std::min(weighted_order(a, w), weighted_order(b, w)));
        }
    }
}

TEST(Homogeneity, Examples)
{
    EXPECT_EQ(homogeneous_degree(parse_poly("x1^2 + x1*x2", xs(2)), WeightVector::ones(2)), q(2));
    EXPECT_FALSE(is_homogeneous(parse_poly("x1^2 + x2^3", xs(2)), WeightVector::ones(2)));
    EXPECT_EQ(homogeneous_degree(parse_poly("x1^2 + x2^3", xs(2)), WeightVector({q(3), q(2)})), q(6));
}

TEST(Homogeneity, DegreeEqualsOrder)
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> e(0, 4);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + trial % 4;
        Poly p(xs(3));
        for (int t = 0; t < 4; ++t) {
            int a = std::min(e(rng), d), b = std::min(e(rng), d - a);
            p.add_term({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(d - a - b)},
                       q(1 + t));
        }
        auto w = WeightVector::ones(3);
        ASSERT_TRUE(homogeneous_degree(p, w));
        EXPECT_EQ(*homogeneous_degree(p, w), weighted_order(p, w));
    }
}

TEST(Cone, Examples)
{
    std::vector<Poly> one{parse_poly("x1", xs(1))};
    auto g = cone_hypersurface(one);
    EXPECT_EQ(g, parse_poly("x1*y1", {"x1", "y1"}));

    std::vector<Poly> two{parse_poly("x1^2", xs(2)), parse_poly("x2^3", xs(2))};
    EXPECT_EQ(cone_hypersurface(two), parse_poly("x1^2*y1 + x2^3*y2", {"x1", "x2", "y1", "y2"}));

    std::vector<Poly> mixed{parse_poly("x1 + x2", xs(2)), parse_poly("x1*x2", xs(2))};
    auto h = cone_hypersurface(mixed);
    EXPECT_EQ(h.terms().size(), 3u);
    EXPECT_EQ(h, parse_poly("x1*y1 + x2*y1 + x1*x2*y2", {"x1", "x2", "y1", "y2"}));
}

TEST(Cone, OrderWithUnitWeightOnY)
{
    // wt(g) with weight 1 on every y is min_j wt(f_j) + 1
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Poly> fs{random_poly(rng, 2, 3, 4), random_poly(rng, 2, 3, 4)};
        if (fs[0].is_zero() || fs[1].is_zero())
            continue;
        auto w = WeightVector::ones(2);
        auto g = cone_hypersurface(fs);
        auto expect = std::min(weighted_order(fs[0], w), weighted_order(fs[1], w)) + 1;
        EXPECT_EQ(weighted_order(g, WeightVector::ones(4)), expect);
    }
}

TEST(Dehomogenize, Examples)
{
    std::vector<Poly> one{parse_poly("x1^2", xs(1))};
    EXPECT_EQ(dehomogenized_hypersurface(one, 1), parse_poly("x1^2", xs(1)));

    std::vector<Poly> two{parse_poly("x1^2", xs(2)), parse_poly("x2^3", xs(2))};
    EXPECT_EQ(dehomogenized_hypersurface(two, 2), parse_poly("x2^3 + x1^2*z1", {"x1", "x2", "z1"}));
    EXPECT_EQ(dehomogenized_hypersurface(two, 1), parse_poly("x1^2 + x2^3*z2", {"x1", "x2", "z2"}));
    EXPECT_THROW(dehomogenized_hypersurface(two, 3), std::out_of_range);
    EXPECT_THROW(dehomogenized_hypersurface(two, 0), std::out_of_range);
}

TEST(Dehomogenize, MatchesConeOnChart)
{
    // g(x, y) with y_p = 1 and y_j = z_j equals h
    std::vector<Poly> fs{parse_poly("x1^2 + x2^2", xs(3)), parse_poly("x1*x2*x3", xs(3)),
                         parse_poly("x3^4 - x1^4", xs(3))};
    auto g = cone_hypersurface(fs);
    for (std::size_t p = 1; p <= 3; ++p) {
        auto h = dehomogenized_hypersurface(fs, p);
        std::vector<Rational> x{q(2, 3), q(-1), q(5, 7)};
        std::vector<Rational> z{q(3), q(-1, 2), q(4, 5)};
        std::vector<Rational> gp(x), hp(x);
        for (std::size_t j = 1; j <= 3; ++j) {
            gp.push_back(j == p ? q(1) : z[j - 1]);
            if (j != p)
                hp.push_back(z[j - 1]);
        }
        EXPECT_EQ(g.evaluate(gp), h.evaluate(hp));
    }
}
