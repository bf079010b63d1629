#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "circle.hpp"

namespace lamlab {

// Raised for angle 0: the main cardioid has no minor leaf.
struct DegenerateMinor : DomainError {
    DegenerateMinor() : DomainError("main cardioid: degenerate minor (angle 0)") {}
};

struct MinorLeaf {
    Leaf leaf;
    int period = 0;
    bool is_minimal = false;
    friend bool operator==(const MinorLeaf&, const MinorLeaf&) = default;
};

struct LimbId {
    MinorLeaf root_minor;
};

struct Tuning {
    MinorLeaf root;
    int inner_period = 0;
};

namespace detail {

inline std::uint64_t mersenne(int n) { return (std::uint64_t{1} << n) - 1; }

inline std::vector<int> prime_factors(int n) {
    std::vector<int> out;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// Numerators j of the angles j/(2^n-1) of exact period n, ascending.
inline std::vector<std::uint64_t> exact_period_numerators(int n) {
    if (n == 1) return {0};
    const std::uint64_t d = mersenne(n);
    std::vector<std::uint64_t> steps;  // j has a smaller period iff a step divides it
    for (int p : prime_factors(n)) steps.push_back(d / mersenne(n / p));
    std::vector<std::uint64_t> out;
    for (std::uint64_t j = 1; j < d; ++j) {
        bool ok = true;
        for (auto s : steps)
            if (j % s == 0) { ok = false; break; }
        if (ok) out.push_back(j);
    }
    return out;
}

inline Angle angle_of(std::uint64_t j, int n) {
    return Angle(BigInt(j), BigInt(mersenne(n)));
}

// Numerator of x over 2^k-1, where k is x's exact period (x must be periodic).
inline std::uint64_t numerator_over_mersenne(const Angle& x, int k) {
    BigInt m = BigInt(mersenne(k));
    if (m % x.den() != 0) throw ConsistencyError("denominator does not divide 2^k-1");
    return static_cast<std::uint64_t>(x.num() * (m / x.den()));
}

inline int exact_period_or_throw(const Angle& x) {
    if (!x.odd_denominator())
        throw DomainError("angle " + x.str() + " has even denominator (not periodic)");
    if (x.is_zero()) throw DegenerateMinor();
    return period_under_doubling(x).period;
}

}  // namespace detail

inline std::vector<Angle> exact_period_angles(int n) {
    if (n < 1) throw DomainError("period must be >= 1");
    require_period(n);
    std::vector<Angle> out;
    for (auto j : detail::exact_period_numerators(n)) out.push_back(detail::angle_of(j, n));
    return out;
}

// All Lavaurs pairings of periods 2..max_period, stored on machine integers.
class QmlTable {
public:
    struct Point {
        std::uint64_t j;
        int period;
    };

    explicit QmlTable(int max_period) : max_period_(max_period) {
        by_period_.resize(max_period + 1);
        for (int k = 2; k <= max_period; ++k)
            for (auto j : detail::exact_period_numerators(k)) points_.push_back({j, k});
        std::sort(points_.begin(), points_.end(), [](const Point& x, const Point& y) {
            return less(x, y);
        });
        for (std::size_t i = 0; i < points_.size(); ++i)
            by_period_[points_[i].period].push_back(static_cast<std::int32_t>(i));
        partner_.assign(points_.size(), -1);
        pair_all();
        sweep();
    }

    int max_period() const { return max_period_; }
    std::size_t size() const { return points_.size(); }
    const Point& point(std::size_t i) const { return points_[i]; }
    std::int32_t partner(std::size_t i) const { return partner_[i]; }
    std::int32_t parent(std::size_t i) const { return parent_[i]; }
    const std::vector<std::int32_t>& indices_of_period(int k) const { return by_period_.at(k); }

    std::optional<std::size_t> index_of(std::uint64_t j, int k) const {
        if (k < 2 || k > max_period_) return std::nullopt;
        const auto& v = by_period_[k];
        auto it = std::lower_bound(v.begin(), v.end(), j,
                                   [&](std::int32_t i, std::uint64_t x) { return points_[i].j < x; });
        if (it == v.end() || points_[*it].j != j) return std::nullopt;
        return static_cast<std::size_t>(*it);
    }

    // Index of the smaller endpoint of the chord through point i.
    std::size_t left(std::size_t i) const {
        return std::min<std::size_t>(i, static_cast<std::size_t>(partner_[i]));
    }

    MinorLeaf minor_at(std::size_t i) const {
        std::size_t l = left(i), r = static_cast<std::size_t>(partner_[l]);
        int k = points_[l].period;
        return MinorLeaf{Leaf(detail::angle_of(points_[l].j, k), detail::angle_of(points_[r].j, k)), k,
                         parent_[l] < 0};
    }

    static bool less(const Point& x, const Point& y) {
        auto l = static_cast<unsigned __int128>(x.j) * detail::mersenne(y.period);
        auto r = static_cast<unsigned __int128>(y.j) * detail::mersenne(x.period);
        return l < r;
    }

private:
    // Lavaurs: periods in increasing order; within a period, each unpaired angle
    // takes the first unpaired same-period angle reachable without crossing.
    void pair_all() {
        const auto n = static_cast<std::int32_t>(points_.size());
        for (int k = 2; k <= max_period_; ++k) {
            for (std::int32_t i : by_period_[k]) {
                if (partner_[i] >= 0) continue;
                std::int32_t idx = i + 1;
                for (;;) {
                    if (idx >= n) throw ConsistencyError("Lavaurs: no partner for a period-" + std::to_string(k) + " angle");
                    const Point& pt = points_[idx];
                    if (pt.period > k) { ++idx; continue; }
                    std::int32_t q = partner_[idx];
                    if (q < 0) {
                        partner_[i] = idx;
                        partner_[idx] = i;
                        break;
                    }
                    if (q < i) throw ConsistencyError("Lavaurs: every candidate crosses an existing chord");
                    idx = q + 1;
                }
            }
            for (std::int32_t i : by_period_[k])
                if (partner_[i] < 0) throw ConsistencyError("Lavaurs: unpaired angle left");
        }
    }

    void sweep() {
        parent_.assign(points_.size(), -1);
        std::vector<std::int32_t> stack;
        for (std::int32_t i = 0; i < static_cast<std::int32_t>(points_.size()); ++i) {
            std::int32_t q = partner_[i];
            if (q > i) {
                parent_[i] = stack.empty() ? -1 : stack.back();
                stack.push_back(i);
            } else {
                if (stack.empty() || stack.back() != q) throw ConsistencyError("minor chords cross");
                stack.pop_back();
                parent_[i] = parent_[q];
            }
        }
    }

    int max_period_;
    std::vector<Point> points_;
    std::vector<std::int32_t> partner_;
    std::vector<std::int32_t> parent_;
    std::vector<std::vector<std::int32_t>> by_period_;
};

// Shared table covering at least period n. Built once per growth; readers share it.
inline std::shared_ptr<const QmlTable> qml_table(int n) {
    require_period(n);
    static std::mutex mu;
    static std::shared_ptr<const QmlTable> cached;
    std::lock_guard<std::mutex> lock(mu);
    if (!cached || cached->max_period() < n)
        cached = std::make_shared<const QmlTable>(std::max(n, cached ? cached->max_period() : 2));
    return cached;
}

inline std::vector<MinorLeaf> pairing_of_period(int n) {
    if (n < 2) throw DomainError("pairing_of_period needs n >= 2");
    auto t = qml_table(n);
    std::vector<MinorLeaf> out;
    for (int k = 2; k <= n; ++k)
        for (std::int32_t i : t->indices_of_period(k))
            if (t->partner(i) > i) out.push_back(t->minor_at(i));
    return out;
}

inline MinorLeaf minor_of(const Angle& x) {
    int k = detail::exact_period_or_throw(x);
    auto t = qml_table(k);
    auto idx = t->index_of(detail::numerator_over_mersenne(x, k), k);
    if (!idx) throw ConsistencyError("angle missing from the pairing table: " + x.str());
    return t->minor_at(*idx);
}

inline Angle companion(const Angle& x) { return minor_of(x).leaf.other(x); }

// m1 < m2: m2 lies in the component of the circle minus m1 away from 0.
inline bool separates_from_zero(const Leaf& m1, const Leaf& m2) {
    if (m1 == m2) throw DomainError("separates_from_zero: leaves coincide");
    if (crosses(m1, m2)) throw DomainError("separates_from_zero: leaves cross");
    // Endpoints are sorted, so the side away from 0 is the open interval (a, b).
    return m1.a() < m2.a() && m2.b() < m1.b() && m1.a() != m2.a();
}

inline MinorLeaf minimal_minor_below(const Angle& x) {
    int k = detail::exact_period_or_throw(x);
    auto t = qml_table(k);
    auto idx = t->index_of(detail::numerator_over_mersenne(x, k), k);
    if (!idx) throw ConsistencyError("angle missing from the pairing table: " + x.str());
    // Minors are laminar, so the separating minors form the parent chain and
    // its outermost element is the unique minimal one.
    std::size_t cur = t->left(*idx);
    while (t->parent(cur) >= 0) cur = static_cast<std::size_t>(t->parent(cur));
    if (t->point(cur).period > k)
        throw ConsistencyError("limb root of period " + std::to_string(t->point(cur).period) +
                               " lies below a period-" + std::to_string(k) + " minor");
    return t->minor_at(cur);
}

inline LimbId limb_of(const Angle& x) { return LimbId{minimal_minor_below(x)}; }

inline bool is_mateable(const Angle& p, const Angle& q) {
    for (const Angle* a : {&p, &q})
        if (!a->odd_denominator()) throw DomainError("angle " + a->str() + " has even denominator");
    if (p.is_zero() || q.is_zero()) return true;
    return minimal_minor_below(p).leaf != conjugate_leaf(minimal_minor_below(q).leaf);
}

// Douady block substitution: the k-bit block of x is a concatenation of the
// k'-bit blocks of the endpoints of one period-k' minor.
inline std::optional<Tuning> is_tuning(const Angle& x) {
    int k = detail::exact_period_or_throw(x);
    std::uint64_t jx = detail::numerator_over_mersenne(x, k);
    auto t = qml_table(k);
    for (int kp = 2; kp < k; ++kp) {
        if (k % kp != 0) continue;
        const std::uint64_t mask = detail::mersenne(kp);
        for (std::int32_t i : t->indices_of_period(kp)) {
            if (t->partner(i) < i) continue;
            std::uint64_t ja = t->point(i).j, jb = t->point(t->partner(i)).j;
            bool all = true;
            for (int c = 0; c < k / kp && all; ++c) {
                std::uint64_t chunk = (jx >> (k - kp * (c + 1))) & mask;
                all = chunk == ja || chunk == jb;
            }
            if (all) return Tuning{t->minor_at(i), k / kp};
        }
    }
    return std::nullopt;
}

}  // namespace lamlab
