#include "wgraph/laurent.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wgraph;

namespace {

LaurentPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> len(0, 4), exp(-5, 5), coef(-3, 3);
    std::vector<std::pair<int, Integer>> pairs;
    for (int i = len(rng); i > 0; --i) pairs.push_back({exp(rng), Integer(coef(rng))});
    return LaurentPoly::from_pairs(pairs);
}

// Dense evaluation at an integer point, independent of the sparse code paths.
Integer eval_times_power(const LaurentPoly& p, int x, int shift) {
    Integer acc = 0;
    for (const auto& t : p.terms()) {
        Integer v = t.coeff;
        for (int i = 0; i < t.exp + shift; ++i) v *= Integer(x);
        acc += v;
    }
    return acc;
}

}  // namespace

TEST(Integer, PromotesToBigAndBack) {
    Integer a = Integer(1LL << 40);
    Integer b = a * a * a;
    EXPECT_EQ(b.str(), "1329227995784915872903807060280344576");
    EXPECT_FALSE(b.fits_int64());
    EXPECT_EQ((b / a / a).to_int64(), 1LL << 40);
    EXPECT_EQ(b - b, Integer(0));
    EXPECT_EQ(gcd(Integer(12), Integer(-18)), Integer(6));
}

TEST(Laurent, ProductExample) {
    const auto q = LaurentPoly::q;
    EXPECT_EQ((q(1) + q(-1)) * (q(1) - q(-1)), q(2) - q(-2));
}

TEST(Laurent, BarExample) {
    const auto q = LaurentPoly::q;
    const LaurentPoly p = LaurentPoly::monomial(3, 2) - q(-1);
    EXPECT_EQ(p.bar(), LaurentPoly::monomial(3, -2) - q(1));
}

TEST(Laurent, ZeroHasNoTerms) {
    const auto q = LaurentPoly::q;
    EXPECT_TRUE((q(2) - q(2)).is_zero());
    EXPECT_EQ((q(2) - q(2)).size(), 0u);
    EXPECT_EQ(LaurentPoly(0), LaurentPoly());
}

TEST(Laurent, ExactDivQ) {
    const auto q = LaurentPoly::q;
    EXPECT_EQ((q(3) + q(1)).exact_div_q(), q(2) + LaurentPoly(1));
    EXPECT_THROW((q(1) + LaurentPoly(1)).exact_div_q(), NonDivisible);
    EXPECT_TRUE(LaurentPoly().exact_div_q().is_zero());
}

TEST(Laurent, Membership) {
    const auto q = LaurentPoly::q;
    EXPECT_TRUE((q(2) + q(1)).in_qA_plus());
    EXPECT_FALSE(LaurentPoly(1).in_qA_plus());
    EXPECT_TRUE(LaurentPoly(1).in_A_plus());
    EXPECT_FALSE(q(-1).in_A_plus());
}

TEST(Laurent, Rendering) {
    const auto q = LaurentPoly::q;
    EXPECT_EQ((q(3) + q(1)).str(), "q^3+q");
    EXPECT_EQ((-q(-1)).str(), "-q^-1");
    EXPECT_EQ(LaurentPoly().str(), "0");
}

TEST(Laurent, RingAxiomsAgainstEvaluation) {
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        const LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ((a * b).bar(), a.bar() * b.bar());
        EXPECT_EQ(a.bar().bar(), a);
        for (int x : {2, 3, -2}) {
            // Multiply through by x^15 so every evaluation is integral.
            EXPECT_EQ(eval_times_power(a * b, x, 15), eval_times_power(a, x, 5) * eval_times_power(b, x, 10));
        }
        LaurentPoly d = a;
        d.add_scaled(Integer(-2), 3, b);
        EXPECT_EQ(d, a - LaurentPoly::monomial(2, 3) * b);
        EXPECT_EQ(a.scaled_shift(Integer(5), -2), LaurentPoly::monomial(5, -2) * a);
    }
}

TEST(Laurent, HugeCoefficients) {
    LaurentPoly p = LaurentPoly::q(1) + LaurentPoly(1);
    LaurentPoly acc(1);
    for (int i = 0; i < 100; ++i) acc *= p;
    EXPECT_EQ(acc.coeff(50).str(), "100891344545564193334812497256");
    EXPECT_EQ(acc.coeff(100), Integer(1));
}

TEST(RationalFn, FieldOperations) {
    const auto q = LaurentPoly::q;
    const RationalFn a(q(1) + LaurentPoly(1), q(1) - LaurentPoly(1));
    const RationalFn b(q(2), q(2) + LaurentPoly(1));
    EXPECT_EQ(a * a.inv(), RationalFn(1));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a / a, RationalFn(1));
    EXPECT_EQ(a.bar().bar(), a);
    EXPECT_EQ((a * b).bar(), a.bar() * b.bar());
}

TEST(RationalFn, CanonicalForm) {
    const auto q = LaurentPoly::q;
    // (q^2 - 1) / (q - 1) reduces to q + 1.
    const RationalFn r(q(2) - LaurentPoly(1), q(1) - LaurentPoly(1));
    EXPECT_EQ(r, RationalFn(q(1) + LaurentPoly(1)));
    EXPECT_EQ(r.den(), LaurentPoly(1));
    // Scaling numerator and denominator by -q^3 changes nothing.
    const RationalFn s(q(1), q(2) + LaurentPoly(1));
    const RationalFn t(-q(4), -q(5) - q(3));
    EXPECT_EQ(s, t);
    EXPECT_THROW(RationalFn(q(1), LaurentPoly()), DivisionByZero);
    EXPECT_THROW(RationalFn().inv(), DivisionByZero);
}
