#include <gtest/gtest.h>

#include <map>

#include "lamlab/qml.hpp"

using namespace lamlab;

namespace {

Angle A(const char* s) { return Angle::parse(s); }
Leaf L(const char* a, const char* b) { return Leaf(A(a), A(b)); }

// Naive Lavaurs on exact rationals: per period, per angle, try partners in
// increasing order and test every existing chord for crossings.
std::vector<Leaf> lavaurs_oracle(int n) {
    std::vector<Leaf> chords;
    for (int k = 2; k <= n; ++k) {
        auto angles = exact_period_angles(k);
        std::vector<bool> used(angles.size(), false);
        for (std::size_t i = 0; i < angles.size(); ++i) {
            if (used[i]) continue;
            bool found = false;
            for (std::size_t j = i + 1; j < angles.size() && !found; ++j) {
                if (used[j]) continue;
                Leaf c(angles[i], angles[j]);
                bool ok = true;
                for (const auto& e : chords)
                    if (crosses(c, e)) { ok = false; break; }
                if (ok) {
                    chords.push_back(c);
                    used[i] = used[j] = true;
                    found = true;
                }
            }
            if (!found) ADD_FAILURE() << "oracle found no partner for " << angles[i];
        }
    }
    return chords;
}

// Binary expansion block of a periodic angle of exact period k, via doubling.
std::string block(const Angle& x, int k) {
    std::string s;
    Angle y = x;
    for (int i = 0; i < k; ++i) {
        s += y < Angle(1, 2) ? '0' : '1';
        y = doubling(y);
    }
    return s;
}

std::optional<Leaf> tuning_oracle(const Angle& x, const std::vector<MinorLeaf>& minors) {
    int k = period_under_doubling(x).period;
    std::string bx = block(x, k);
    for (int kp = 2; kp < k; ++kp) {
        if (k % kp) continue;
        for (const auto& m : minors) {
            if (m.period != kp) continue;
            std::string ba = block(m.leaf.a(), kp), bb = block(m.leaf.b(), kp);
            bool ok = true;
            for (int c = 0; c < k / kp && ok; ++c) {
                std::string chunk = bx.substr(c * kp, kp);
                ok = chunk == ba || chunk == bb;
            }
            if (ok) return m.leaf;
        }
    }
    return std::nullopt;
}

long long moebius_count(int n) {
    if (n == 1) return 1;
    long long s = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        int m = n / d, mu = 1;
        for (int p = 2; p <= m; ++p)
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) { mu = 0; break; }
                mu = -mu;
            }
        s += mu * ((1LL << d) - 1);
    }
    return s;
}

}  // namespace

TEST(ExactPeriodAngles, Examples) {
    EXPECT_EQ(exact_period_angles(1), std::vector<Angle>{A("0/1")});
    EXPECT_EQ(exact_period_angles(2), (std::vector<Angle>{A("1/3"), A("2/3")}));
    EXPECT_EQ(exact_period_angles(3),
              (std::vector<Angle>{A("1/7"), A("2/7"), A("3/7"), A("4/7"), A("5/7"), A("6/7")}));
}

TEST(ExactPeriodAngles, CountMatchesMoebiusAndIsSorted) {
    for (int n = 1; n <= 14; ++n) {
        auto v = exact_period_angles(n);
        EXPECT_EQ(static_cast<long long>(v.size()), moebius_count(n)) << n;
        EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
        for (const auto& a : v) ASSERT_EQ(period_under_doubling(a).period, n);
    }
}

TEST(ExactPeriodAngles, CapIsEnforced) {
    Limits saved = limits();
    Limits l = saved;
    l.max_period = 10;
    set_limits(l);
    EXPECT_THROW(exact_period_angles(11), ResourceLimitError);
    set_limits(saved);
    EXPECT_THROW(exact_period_angles(saved.max_period + 1), ResourceLimitError);
}

TEST(PairingOfPeriod, Examples) {
    auto p2 = pairing_of_period(2);
    ASSERT_EQ(p2.size(), 1u);
    EXPECT_EQ(p2[0].leaf, L("1/3", "2/3"));
    auto has = [](const std::vector<MinorLeaf>& v, const Leaf& l) {
        return std::any_of(v.begin(), v.end(), [&](const MinorLeaf& m) { return m.leaf == l; });
    };
    EXPECT_TRUE(has(pairing_of_period(4), L("7/15", "8/15")));
    auto p5 = pairing_of_period(5);
    EXPECT_TRUE(has(p5, L("5/31", "6/31")));
    EXPECT_TRUE(has(p5, L("3/31", "4/31")));
}

TEST(PairingOfPeriod, AgreesWithNaiveLavaurs) {
    auto fast = pairing_of_period(8);
    auto slow = lavaurs_oracle(8);
    std::set<Leaf> a, b(slow.begin(), slow.end());
    for (const auto& m : fast) a.insert(m.leaf);
    EXPECT_EQ(a, b);
}

TEST(PairingOfPeriod, PairwiseNonCrossing) {
    auto v = pairing_of_period(10);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            ASSERT_FALSE(crosses(v[i].leaf, v[j].leaf)) << v[i].leaf << " " << v[j].leaf;
}

TEST(PairingOfPeriod, HalfOfTheAnglesPerPeriod) {
    auto v = pairing_of_period(12);
    std::map<int, std::size_t> per;
    for (const auto& m : v) ++per[m.period];
    for (int n = 2; n <= 12; ++n) EXPECT_EQ(per[n] * 2, exact_period_angles(n).size()) << n;
}

TEST(PairingOfPeriod, ComponentCountIdentity) {
    auto v = pairing_of_period(12);
    for (int m = 1; m <= 12; ++m) {
        long long c = 1;
        for (const auto& x : v)
            if (m % x.period == 0) ++c;
        EXPECT_EQ(c, 1LL << (m - 1)) << m;
    }
}

TEST(PairingOfPeriod, ConjugationPreservesMinorSet) {
    auto v = pairing_of_period(10);
    std::set<Leaf> s;
    for (const auto& m : v) s.insert(m.leaf);
    for (const auto& l : s) EXPECT_TRUE(s.count(conjugate_leaf(l))) << l;
}

TEST(Companion, Examples) {
    EXPECT_EQ(companion(A("7/15")), A("8/15"));
    EXPECT_EQ(companion(A("3/31")), A("4/31"));
    EXPECT_EQ(companion(A("3/7")), A("4/7"));
    EXPECT_EQ(companion(A("5/31")), A("6/31"));
    EXPECT_THROW(companion(A("0/1")), DegenerateMinor);
    EXPECT_THROW(companion(A("1/6")), DomainError);
}

TEST(Companion, Involution) {
    for (int n = 2; n <= 11; ++n)
        for (const auto& x : exact_period_angles(n)) EXPECT_EQ(companion(companion(x)), x);
}

TEST(SeparatesFromZero, Examples) {
    EXPECT_TRUE(separates_from_zero(L("1/3", "2/3"), L("3/7", "4/7")));
    EXPECT_TRUE(separates_from_zero(L("1/7", "2/7"), L("5/31", "6/31")));
    EXPECT_FALSE(separates_from_zero(L("3/7", "4/7"), L("1/3", "2/3")));
    EXPECT_THROW(separates_from_zero(L("0/1", "1/2"), L("1/4", "3/4")), DomainError);
    EXPECT_THROW(separates_from_zero(L("1/3", "2/3"), L("1/3", "2/3")), DomainError);
}

TEST(SeparatesFromZero, StrictPartialOrderOnMinors) {
    auto v = pairing_of_period(7);
    for (const auto& a : v)
        for (const auto& b : v) {
            if (a.leaf == b.leaf) continue;
            bool ab = separates_from_zero(a.leaf, b.leaf);
            if (ab) EXPECT_FALSE(separates_from_zero(b.leaf, a.leaf));
            if (!ab) continue;
            for (const auto& c : v) {
                if (c.leaf == b.leaf || c.leaf == a.leaf) continue;
                if (separates_from_zero(b.leaf, c.leaf)) EXPECT_TRUE(separates_from_zero(a.leaf, c.leaf));
            }
        }
}

TEST(MinimalMinorBelow, Examples) {
    EXPECT_EQ(minimal_minor_below(A("3/7")).leaf, L("1/3", "2/3"));
    EXPECT_EQ(minimal_minor_below(A("3/31")).leaf, L("1/15", "2/15"));
    auto self = minimal_minor_below(A("1/3"));
    EXPECT_EQ(self.leaf, L("1/3", "2/3"));
    EXPECT_TRUE(self.is_minimal);
    EXPECT_THROW(minimal_minor_below(A("0/1")), DegenerateMinor);
}

TEST(MinimalMinorBelow, AgreesWithExhaustiveSearch) {
    auto v = pairing_of_period(9);
    for (const auto& m : v) {
        std::vector<Leaf> below;
        for (const auto& o : v)
            if (o.period <= m.period && o.leaf != m.leaf && separates_from_zero(o.leaf, m.leaf)) below.push_back(o.leaf);
        std::vector<Leaf> minimal;
        for (const auto& b : below) {
            bool has_smaller = false;
            for (const auto& c : below)
                if (c != b && separates_from_zero(c, b)) has_smaller = true;
            if (!has_smaller) minimal.push_back(b);
        }
        Leaf expect = minimal.empty() ? m.leaf : minimal.front();
        ASSERT_LE(minimal.size(), 1u) << m.leaf;
        auto got = minimal_minor_below(m.leaf.a());
        EXPECT_EQ(got.leaf, expect) << m.leaf;
        EXPECT_TRUE(got.is_minimal);
        EXPECT_EQ(m.is_minimal, minimal.empty());
    }
}

TEST(IsMateable, Examples) {
    EXPECT_TRUE(is_mateable(A("3/7"), A("3/31")));
    EXPECT_TRUE(is_mateable(A("7/15"), A("5/31")));
    EXPECT_FALSE(is_mateable(A("3/7"), A("3/7")));
    EXPECT_EQ(conjugate_leaf(L("1/3", "2/3")), L("1/3", "2/3"));
    EXPECT_TRUE(is_mateable(A("0/1"), A("3/7")));
}

TEST(IsMateable, Symmetric) {
    auto v = exact_period_angles(5);
    auto w = exact_period_angles(4);
    for (const auto& x : v)
        for (const auto& y : w) EXPECT_EQ(is_mateable(x, y), is_mateable(y, x));
}

TEST(IsTuning, Examples) {
    auto t = is_tuning(A("2/5"));
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->root.leaf, L("1/3", "2/3"));
    EXPECT_EQ(t->inner_period, 2);
    EXPECT_FALSE(is_tuning(A("7/15")));
    EXPECT_FALSE(is_tuning(A("3/31")));
    EXPECT_EQ(block(A("2/5"), 4), "0110");
}

TEST(IsTuning, AgreesWithStringBlockOracle) {
    auto minors = pairing_of_period(10);
    for (int n = 2; n <= 10; ++n)
        for (const auto& x : exact_period_angles(n)) {
            auto got = is_tuning(x);
            auto want = tuning_oracle(x, minors);
            ASSERT_EQ(got.has_value(), want.has_value()) << x;
            if (got) EXPECT_EQ(got->root.leaf, *want) << x;
        }
}
