#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace tropcover;
using tropcover::testing::random_scalar_nonzero;
using tropcover::testing::sv;

TEST(Rational, ParseAndCanonicalForm) {
    EXPECT_EQ(Rational::parse("6/-4"), Rational(-3, 2));
    EXPECT_EQ(Rational::parse("+7"), Rational(7));
    EXPECT_EQ(Rational(10, 4).str(), "5/2");
    EXPECT_TRUE(Rational(0, 5).is_zero());
    EXPECT_LT(Rational(-1, 3), Rational(-1, 4));
}

TEST(Rational, PrimitiveVectorClearsDenominatorsAndContent) {
    QVector v{Rational(1, 2), Rational(-3, 4), Rational(0)};
    EXPECT_EQ(primitive(v), (QVector{Rational(2), Rational(-3), Rational(0)}));
}

TEST(GaussianRational, FieldOperations) {
    GaussianRational a(Rational(1), Rational(2)), b(Rational(3), Rational(-1));
    EXPECT_EQ(a * b, GaussianRational(Rational(5), Rational(5)));
    EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(GaussianRational::imag_unit() * GaussianRational::imag_unit(), GaussianRational(Rational(-1)));
    EXPECT_ANY_THROW(a / GaussianRational(Rational(0)));
}

TEST(ScalarArith, ExponentAddition) {
    EXPECT_EQ(sv("t^(1/2)") * sv("t^(1/2)"), sv("t"));
}

TEST(ScalarArith, Cancellation) {
    EXPECT_EQ(sv("1 + t") - sv("1"), sv("t"));
}

TEST(ScalarArith, InverseOfQuotient) {
    EXPECT_EQ(sv("1/(1 - t)") * sv("1 - t"), ValuedScalar(1));
}

TEST(ScalarArith, DivisionByZeroIsAnError) {
    EXPECT_ANY_THROW(sv("1 + t") / ValuedScalar(0));
    EXPECT_ANY_THROW(scalar_arith(sv("t"), ValuedScalar(0), ArithOp::div));
}

TEST(ScalarArith, DispatchMatchesOperators) {
    auto a = sv("2 + t^(1/3)"), b = sv("t - i");
    EXPECT_EQ(scalar_arith(a, b, ArithOp::add), a + b);
    EXPECT_EQ(scalar_arith(a, b, ArithOp::sub), a - b);
    EXPECT_EQ(scalar_arith(a, b, ArithOp::mul), a * b);
    EXPECT_EQ(scalar_arith(a, b, ArithOp::div), a / b);
}

TEST(Valuation, ConstantIsZero) { EXPECT_EQ(valuation(ValuedScalar(5)), Valuation(Rational(0))); }

TEST(Valuation, MinimumExponent) {
    EXPECT_EQ(valuation(sv("(2*t^(1/2) + t)/3")), Valuation(Rational(1, 2)));
}

TEST(Valuation, ZeroIsInfinite) {
    EXPECT_TRUE(valuation(ValuedScalar(0)).is_infinite());
    EXPECT_GT(valuation(ValuedScalar(0)), Valuation(Rational(1000000)));
}

TEST(Valuation, QuotientSubtractsDenominator) {
    EXPECT_EQ(valuation(sv("t^3/(t + t^2)")), Valuation(Rational(2)));
    EXPECT_EQ(valuation(sv("1/(t^(-1) + 1)")), Valuation(Rational(1)));
}

TEST(LeadingTerm, Polynomial) {
    auto [e, c] = leading_term(sv("3*t + t^2"));
    EXPECT_EQ(e, Rational(1));
    EXPECT_EQ(c, GaussianRational(Rational(3)));
}

TEST(LeadingTerm, ImaginaryCoefficient) {
    auto [e, c] = leading_term(sv("i*t^(1/4)"));
    EXPECT_EQ(e, Rational(1, 4));
    EXPECT_EQ(c, GaussianRational::imag_unit());
}

TEST(LeadingTerm, Constant) {
    auto [e, c] = leading_term(ValuedScalar(7));
    EXPECT_EQ(e, Rational(0));
    EXPECT_EQ(c, GaussianRational(Rational(7)));
}

TEST(LeadingTerm, ZeroIsAnError) { EXPECT_ANY_THROW(leading_term(ValuedScalar(0))); }

TEST(LeadingTerm, MonomialDenominator) {
    auto [e, c] = leading_term(sv("(2 + t)/(3*t^2)"));
    EXPECT_EQ(e, Rational(-2));
    EXPECT_EQ(c, GaussianRational(Rational(2, 3)));
}

TEST(PuiseuxPoly, GcdAndExactDivision) {
    PuiseuxPoly a = (sv("1 - t").num()) * (sv("2 + t^(1/2)").num());
    PuiseuxPoly b = (sv("1 - t").num()) * (sv("t^3").num());
    auto g = gcd(a, b);
    EXPECT_EQ(exact_divide(a, g) * g, a);
    EXPECT_EQ(exact_divide(b, g) * g, b);
    EXPECT_EQ(g.size(), 2u);
}

// Property tests over seeded random elements of Frac(Q(i)[t^Q]).

class ScalarProperties : public ::testing::TestWithParam<int> {};

TEST_P(ScalarProperties, ValuationIsMultiplicative) {
    std::mt19937_64 rng(GetParam());
    for (int k = 0; k < 25; ++k) {
        auto a = random_scalar_nonzero(rng), b = random_scalar_nonzero(rng);
        EXPECT_EQ(valuation(a * b), valuation(a) + valuation(b)) << a.str() << " * " << b.str();
    }
}

TEST_P(ScalarProperties, UltrametricInequality) {
    std::mt19937_64 rng(GetParam() + 100);
    for (int k = 0; k < 25; ++k) {
        auto a = random_scalar_nonzero(rng), b = random_scalar_nonzero(rng);
        auto va = valuation(a), vb = valuation(b), vs = valuation(a + b);
        EXPECT_GE(vs, std::min(va, vb));
        if (va != vb) {
            EXPECT_EQ(vs, std::min(va, vb)) << a.str() << " + " << b.str();
        }
    }
}

TEST_P(ScalarProperties, ValuationIgnoresCommonFactors) {
    std::mt19937_64 rng(GetParam() + 200);
    for (int k = 0; k < 25; ++k) {
        auto p = tropcover::testing::random_puiseux(rng), q = tropcover::testing::random_puiseux(rng),
             f = tropcover::testing::random_puiseux(rng);
        ValuedScalar plain(p, q), scaled(p * f, q * f);
        EXPECT_EQ(plain, scaled);
        EXPECT_EQ(valuation(plain), valuation(scaled));
    }
}

TEST_P(ScalarProperties, DivisionRoundTrips) {
    std::mt19937_64 rng(GetParam() + 300);
    for (int k = 0; k < 25; ++k) {
        auto a = random_scalar_nonzero(rng), b = random_scalar_nonzero(rng);
        EXPECT_EQ((a / b) * b, a);
        EXPECT_EQ(a - a, ValuedScalar(0));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ScalarProperties, ::testing::Values(1, 2, 3, 4));
