#include <gtest/gtest.h>

#include <random>

#include "lamlab/circle.hpp"

using namespace lamlab;

namespace {

Angle A(const char* s) { return Angle::parse(s); }

std::vector<Angle> sample_angles(unsigned seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Angle> out{Angle(0, 1)};
    for (int i = 0; i < count; ++i) {
        long long den = 1 + static_cast<long long>(rng() % 2000);
        out.emplace_back(static_cast<long long>(rng() % den), den);
    }
    return out;
}

// Orbit trace by brute force: first repeat in the list of iterates.
OrbitType orbit_oracle(const Angle& x) {
    std::vector<Angle> seen{x};
    for (;;) {
        Angle y = doubling(seen.back());
        auto it = std::find(seen.begin(), seen.end(), y);
        if (it != seen.end()) {
            int pre = static_cast<int>(it - seen.begin());
            return {pre, static_cast<int>(seen.size()) - pre};
        }
        seen.push_back(y);
    }
}

}  // namespace

TEST(Angle, CanonicalForm) {
    EXPECT_EQ(Angle(2, 4), Angle(1, 2));
    EXPECT_EQ(Angle(0, 7), Angle(0, 1));
    EXPECT_EQ(Angle(0, 7).den(), 1);
    EXPECT_EQ(Angle(9, 7), Angle(2, 7));
    EXPECT_EQ(A("6/14").str(), "3/7");
    EXPECT_THROW(A("0.5"), DomainError);
    EXPECT_THROW(A("1/0"), DomainError);
    EXPECT_THROW(A("3"), DomainError);
}

TEST(Angle, OrderIsNumeric) {
    EXPECT_LT(A("3/7"), A("7/15"));
    EXPECT_LT(A("7/15"), A("4/7"));
    BigInt big = (BigInt(1) << 31) - 1;
    EXPECT_LT(Angle(BigInt(1), big), Angle(BigInt(2), big));
    EXPECT_LT(Angle(BigInt(1), big * big), Angle(BigInt(1), big));
}

TEST(Double, Examples) {
    EXPECT_EQ(doubling(A("3/7")), A("6/7"));
    EXPECT_EQ(doubling(A("6/7")), A("5/7"));
    EXPECT_EQ(doubling(A("0/1")), A("0/1"));
}

TEST(Preimages, Examples) {
    EXPECT_EQ(preimages(A("0/1")), std::make_pair(A("0/1"), A("1/2")));
    EXPECT_EQ(preimages(A("3/7")), std::make_pair(A("3/14"), A("5/7")));
    EXPECT_EQ(preimages(A("1/3")), std::make_pair(A("1/6"), A("2/3")));
}

TEST(PeriodUnderDoubling, Examples) {
    EXPECT_EQ(period_under_doubling(A("1/7")), (OrbitType{0, 3}));
    EXPECT_EQ(period_under_doubling(A("3/31")), (OrbitType{0, 5}));
    EXPECT_EQ(period_under_doubling(A("1/6")), (OrbitType{1, 2}));
    EXPECT_EQ(period_under_doubling(A("0/1")), (OrbitType{0, 1}));
}

TEST(LeafLength, Examples) {
    EXPECT_EQ(leaf_length(Leaf(A("3/7"), A("4/7"))), Rational(1, 7));
    EXPECT_EQ(leaf_length(Leaf(A("1/3"), A("2/3"))), Rational(1, 3));
    EXPECT_EQ(leaf_length(Leaf(A("0/1"), A("1/2"))), Rational(1, 2));
}

TEST(Leaf, RejectsDegenerateAndSortsEndpoints) {
    EXPECT_THROW(Leaf(A("1/3"), A("2/6")), DomainError);
    Leaf l(A("4/7"), A("3/7"));
    EXPECT_EQ(l.a(), A("3/7"));
    EXPECT_EQ(l, Leaf(A("3/7"), A("4/7")));
}

TEST(Crosses, Examples) {
    EXPECT_FALSE(crosses(Leaf(A("1/7"), A("2/7")), Leaf(A("4/9"), A("5/9"))));
    EXPECT_TRUE(crosses(Leaf(A("0/1"), A("1/2")), Leaf(A("1/4"), A("3/4"))));
    EXPECT_FALSE(crosses(Leaf(A("1/7"), A("2/7")), Leaf(A("2/7"), A("4/7"))));
}

TEST(Conjugate, Examples) {
    EXPECT_EQ(conjugate(A("5/31")), A("26/31"));
    EXPECT_EQ(conjugate(A("0/1")), A("0/1"));
    EXPECT_EQ(conjugate_leaf(Leaf(A("1/7"), A("2/7"))), Leaf(A("5/7"), A("6/7")));
}

TEST(ArcContains, Examples) {
    EXPECT_TRUE(arc_contains(Arc::open(A("3/7"), A("4/7")), A("7/15")));
    EXPECT_FALSE(arc_contains(Arc::open(A("3/7"), A("4/7")), A("3/7")));
    EXPECT_TRUE(arc_contains(Arc::closed(A("3/7"), A("4/7")), A("3/7")));
    EXPECT_TRUE(arc_contains(Arc::open(A("6/7"), A("1/7")), A("0/1")));
    EXPECT_FALSE(arc_contains(Arc::open(A("6/7"), A("1/7")), A("1/2")));
}

TEST(CircleProperties, PreimagesDoubleBack) {
    for (const auto& x : sample_angles(1, 400)) {
        auto [a, b] = preimages(x);
        EXPECT_EQ(doubling(a), x);
        EXPECT_EQ(doubling(b), x);
        EXPECT_NE(a, b);
    }
}

TEST(CircleProperties, ConjugationIsInvolutionCommutingWithDoubling) {
    for (const auto& x : sample_angles(2, 400)) {
        EXPECT_EQ(conjugate(conjugate(x)), x);
        EXPECT_EQ(doubling(conjugate(x)), conjugate(doubling(x)));
    }
}

TEST(CircleProperties, PeriodMatchesOrbitTrace) {
    for (const auto& x : sample_angles(3, 300)) {
        auto t = period_under_doubling(x);
        EXPECT_EQ(t, orbit_oracle(x)) << x;
        EXPECT_EQ(t.preperiod == 0, x.odd_denominator()) << x;
    }
}

TEST(CircleProperties, LeafLengthRangeAndConjugation) {
    auto xs = sample_angles(4, 120);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (xs[i] == xs[i + 1]) continue;
        Leaf l(xs[i], xs[i + 1]);
        Rational len = leaf_length(l);
        EXPECT_GT(len, Rational(0, 1));
        EXPECT_LE(len, Rational(1, 2));
        EXPECT_EQ(leaf_length(conjugate_leaf(l)), len);
    }
}

TEST(CircleProperties, CrossingSymmetricAndConjugationInvariant) {
    auto xs = sample_angles(5, 160);
    std::vector<Leaf> leaves;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2)
        if (xs[i] != xs[i + 1]) leaves.emplace_back(xs[i], xs[i + 1]);
    for (const auto& l1 : leaves)
        for (const auto& l2 : leaves) {
            if (l1 == l2) continue;
            bool c = crosses(l1, l2);
            EXPECT_EQ(c, crosses(l2, l1));
            EXPECT_EQ(c, crosses(conjugate_leaf(l1), conjugate_leaf(l2)));
        }
}
