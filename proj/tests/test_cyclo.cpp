#include "huffhyp/cyclo.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace huffhyp;

namespace {

GroupRingElement from_ints(std::size_t n, std::vector<int> v, int den = 1)
{
    std::vector<BigInt> num(v.begin(), v.end());
    return GroupRingElement::from_integers(n, std::move(num), den);
}

GroupRingElement random_element(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coeff(-20, 20);
    std::uniform_int_distribution<int> den(1, 6);
    std::vector<int> v(n);
    for (auto& c : v) {
        c = coeff(rng);
    }
    return from_ints(n, v, den(rng));
}

}  // namespace

TEST(GroupRing, Units)
{
    EXPECT_EQ(GroupRingElement::unit(4, 0).to_rational(), Rat(1));
    EXPECT_EQ(GroupRingElement::unit(4, 2).to_rational(), Rat(-1));
    EXPECT_EQ(GroupRingElement::unit(4, 5), GroupRingElement::unit(4, 1));
    EXPECT_EQ(GroupRingElement::unit(4, -1), GroupRingElement::unit(4, 3));
}

TEST(GroupRing, AddAndScale)
{
    EXPECT_TRUE((GroupRingElement::unit(4, 1) + GroupRingElement::unit(4, 3)).is_zero());
    EXPECT_EQ(GroupRingElement::unit(4, 0).scaled(make_rat(1, 5)).to_rational(), make_rat(1, 5));
    EXPECT_THROW(GroupRingElement::unit(4, 0) + GroupRingElement::unit(6, 0), std::invalid_argument);
    EXPECT_THROW(GroupRingElement::unit(4, 0) * GroupRingElement::unit(6, 0), std::invalid_argument);
    EXPECT_THROW((void)(GroupRingElement::unit(4, 0) == GroupRingElement::unit(6, 0)), std::invalid_argument);
}

TEST(GroupRing, Multiplication)
{
    EXPECT_EQ(GroupRingElement::unit(4, 1) * GroupRingElement::unit(4, 3), GroupRingElement::unit(4, 0));
    const auto one_plus = from_ints(4, {1, 1, 0, 0});
    const auto one_minus = from_ints(4, {1, -1, 0, 0});
    EXPECT_EQ((one_plus * one_minus).to_rational(), Rat(2));
}

TEST(Cyclotomic, Polynomials)
{
    EXPECT_EQ(cyclotomic_poly(1).coeffs, (std::vector<BigInt>{-1, 1}));
    EXPECT_EQ(cyclotomic_poly(4).coeffs, (std::vector<BigInt>{1, 0, 1}));
    EXPECT_EQ(cyclotomic_poly(12).coeffs, (std::vector<BigInt>{1, 0, -1, 0, 1}));
    EXPECT_EQ(cyclotomic_poly(6).coeffs, (std::vector<BigInt>{1, -1, 1}));
    EXPECT_THROW(cyclotomic_poly(0), std::invalid_argument);
    for (std::size_t n = 1; n <= 120; ++n) {
        const IntPoly p = cyclotomic_poly(n);
        EXPECT_TRUE(p.is_monic());
        EXPECT_EQ(p.degree(), euler_phi(n)) << n;
    }
    // Phi_105 is the first with a coefficient of absolute value 2
    bool found_two = false;
    for (const auto& c : cyclotomic_poly(105).coeffs) {
        found_two = found_two || c == -2;
    }
    EXPECT_TRUE(found_two);
}

TEST(Cyclotomic, CanonicalForms)
{
    EXPECT_EQ(GroupRingElement::unit(4, 2).canonical().constant(), Rat(-1));
    EXPECT_TRUE(GroupRingElement(4).canonical().is_zero());
    EXPECT_TRUE(from_ints(4, {1, 1, 1, 1}).canonical().is_zero());
    EXPECT_EQ(GroupRingElement::unit(4, 1).canonical().coeffs.size(), 2u);
}

TEST(Cyclotomic, RationalExtraction)
{
    EXPECT_EQ(GroupRingElement::unit(4, 2).to_rational(), Rat(-1));
    EXPECT_THROW(GroupRingElement::unit(4, 1).to_rational(), NonRationalValue);
    for (int num = -7; num <= 7; ++num) {
        for (int den = 1; den <= 5; ++den) {
            const Rat r = make_rat(num, den);
            EXPECT_EQ(GroupRingElement::unit(12, 0).scaled(r).to_rational(), r);
            EXPECT_EQ(GroupRingElement::constant(12, r).to_rational(), r);
        }
    }
}

TEST(Cyclotomic, Embedding)
{
    const auto z = GroupRingElement::unit(4, 1).embed();
    EXPECT_NEAR(static_cast<double>(z.real()), 0.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(z.imag()), 1.0, 1e-15);
    const auto c = GroupRingElement::constant(7, make_rat(2, 5)).embed();
    EXPECT_NEAR(static_cast<double>(c.real()), 0.4, 1e-15);
    EXPECT_NEAR(static_cast<double>(c.imag()), 0.0, 1e-15);
}

class RingLaws : public ::testing::TestWithParam<std::size_t> {};

TEST_P(RingLaws, HoldOnCanonicalForms)
{
    const std::size_t n = GetParam();
    std::mt19937_64 rng(1000 + n);
    for (int t = 0; t < 25; ++t) {
        const auto a = random_element(n, rng);
        const auto b = random_element(n, rng);
        const auto c = random_element(n, rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        EXPECT_TRUE((a - a).is_zero());
        const auto diff = (a * b).embed() - (a * b).canonical().embed();
        EXPECT_LT(std::abs(static_cast<double>(std::abs(diff))), 1e-6);
    }
}

INSTANTIATE_TEST_SUITE_P(SmallModuli, RingLaws, ::testing::Values(2, 4, 6, 12, 16, 48));

TEST(GroupRing, RotationMatchesUnitProduct)
{
    std::mt19937_64 rng(7);
    const auto a = random_element(10, rng);
    for (int k = -12; k <= 12; ++k) {
        EXPECT_EQ(a.rotated(k), a * GroupRingElement::unit(10, k));
        GroupRingElement acc(10);
        acc.add_rotated(a, k);
        EXPECT_EQ(acc, a.rotated(k));
    }
}

TEST(GroupRing, LargeCoefficientsFallBackToBigIntegers)
{
    std::vector<BigInt> big(6, 0);
    big[0] = BigInt(1) << 80;
    big[5] = -(BigInt(1) << 79);
    const auto a = GroupRingElement::from_integers(6, big);
    const auto sq = a * a;
    EXPECT_EQ(sq.coeff(0), Rat(BigInt(1) << 160));
    EXPECT_EQ(sq, a * a);
    EXPECT_EQ((sq - a * a).canonical().is_zero(), true);
}

TEST(Accumulator, BuildsIntegerVectors)
{
    CycAccumulator acc(4);
    acc.add(1);
    acc.add(1);
    acc.add(6, -1);
    const auto e = acc.finish(5);
    EXPECT_EQ(e.coeff(1), make_rat(2, 5));
    EXPECT_EQ(e.coeff(2), make_rat(-1, 5));
}
