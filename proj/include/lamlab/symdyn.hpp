#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "circle.hpp"
#include "qml.hpp"

namespace lamlab {

// entries[i][j]: number of components of piece i mapping onto piece j.
class TransitionMatrix {
public:
    TransitionMatrix() = default;
    explicit TransitionMatrix(std::vector<std::vector<BigInt>> e) : e_(std::move(e)) {
        for (const auto& row : e_) {
            if (row.size() != e_.size()) throw DomainError("transition matrix must be square");
            for (const auto& x : row)
                if (x < 0) throw DomainError("transition matrix entries must be nonnegative");
        }
    }
    static TransitionMatrix identity(std::size_t n) {
        std::vector<std::vector<BigInt>> e(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
        return TransitionMatrix(std::move(e));
    }
    static TransitionMatrix full_shift(std::size_t n) {
        return TransitionMatrix(std::vector<std::vector<BigInt>>(n, std::vector<BigInt>(n, 1)));
    }

    std::size_t size() const { return e_.size(); }
    const BigInt& at(std::size_t i, std::size_t j) const { return e_[i][j]; }
    const std::vector<std::vector<BigInt>>& entries() const { return e_; }

    BigInt trace() const {
        BigInt t = 0;
        for (std::size_t i = 0; i < size(); ++i) t += e_[i][i];
        return t;
    }

    friend TransitionMatrix operator*(const TransitionMatrix& a, const TransitionMatrix& b) {
        const std::size_t n = a.size();
        std::vector<std::vector<BigInt>> c(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (a.e_[i][k] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) c[i][j] += a.e_[i][k] * b.e_[k][j];
            }
        return TransitionMatrix(std::move(c));
    }

    TransitionMatrix pow(int n) const {
        TransitionMatrix r = identity(size()), b = *this;
        while (n > 0) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

private:
    std::vector<std::vector<BigInt>> e_;
};

inline BigInt count_fixed(const TransitionMatrix& m, int n) {
    if (n < 1) throw DomainError("n must be >= 1");
    return m.pow(n).trace();
}

inline int moebius(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    return n > 1 ? -r : r;
}

inline BigInt count_exact_period(const TransitionMatrix& m, int n) {
    if (n < 1) throw DomainError("n must be >= 1");
    BigInt s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) {
            int mu = moebius(n / d);
            if (mu != 0) s += mu * count_fixed(m, d);
        }
    return s;
}

// Periodic points in a piece correspond two-to-one with hyperbolic components.
inline BigInt component_count_from_points(const BigInt& points) {
    if (points < 0) throw DomainError("point count must be nonnegative");
    if ((points & 1) != 0) throw DomainError("odd point count " + points.str() + ": components pair points two-to-one");
    return points / 2;
}

inline BigInt mandelbrot_component_count(int m) {
    if (m < 1) throw DomainError("m must be >= 1");
    require_period(m);
    return component_count_from_points(BigInt(1) << m);
}

// 1 (main cardioid) + minors whose period divides m.
inline BigInt mandelbrot_component_count_from_qml(int m) {
    if (m < 1) throw DomainError("m must be >= 1");
    BigInt c = 1;
    if (m == 1) return c;
    auto t = qml_table(m);
    for (int k = 2; k <= m; ++k)
        if (m % k == 0) c += t->indices_of_period(k).size() / 2;
    return c;
}

// Uniqueness of x's itinerary among angles of its exact period, for the
// partition by all preimages of cut_set of depth 0..n.
inline bool refined_itinerary_unique(const Angle& x, const std::set<Angle>& cut_set, int n) {
    if (cut_set.empty()) throw DomainError("cut_set must be nonempty");
    if (n < 0) throw DomainError("n must be >= 0");
    require_depth(n);
    for (const auto& c : cut_set)
        if (!cut_set.count(doubling(c))) throw DomainError("cut_set is not forward invariant at " + c.str());
    if (!x.odd_denominator()) throw DomainError("x must be periodic");
    std::set<Angle> cuts = cut_set, layer = cut_set;
    for (int d = 1; d <= n; ++d) {
        std::set<Angle> next;
        for (const auto& c : layer) {
            auto [a, b] = preimages(c);
            next.insert(a);
            next.insert(b);
        }
        cuts.insert(next.begin(), next.end());
        layer = std::move(next);
    }
    std::vector<Angle> sorted(cuts.begin(), cuts.end());
    const int k = period_under_doubling(x).period;
    require_period(k);
    // Symbol: index of the open arc containing y, or -1 when y is a cut point.
    auto word = [&](Angle y) {
        std::vector<long> w;
        for (int i = 0; i < k; ++i) {
            if (cuts.count(y)) {
                w.push_back(-1);
            } else {
                w.push_back(static_cast<long>(std::upper_bound(sorted.begin(), sorted.end(), y) - sorted.begin()));
            }
            y = doubling(y);
        }
        return w;
    };
    auto wx = word(x);
    if (std::find(wx.begin(), wx.end(), -1) != wx.end())
        throw DomainError("orbit of " + x.str() + " meets a cut point");
    for (const auto& y : exact_period_angles(k))
        if (y != x && word(y) == wx) return false;
    return true;
}

struct Violation {
    std::string property;
    int i = 0;
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
    bool valid = true;
    std::vector<Violation> violations;
    void fail(std::string p, int i) {
        valid = false;
        violations.push_back({std::move(p), i});
    }
    bool violated(const std::string& p) const {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.property == p; });
    }
};

struct Address24 {
    long long m = 1;
    int N = 2;
    std::vector<long long> j;      // j_1..j_{N-1}
    std::vector<long long> m_seq;  // m_1..m_N
    bool tuning_tail = false;

    // n_i = sum_{l <= i} j_l m_l, i = 1..N-1
    std::vector<long long> n() const {
        std::vector<long long> out;
        long long s = 0;
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(s += j[i] * m_seq[i]);
        return out;
    }
};

inline Verdict validate_thm24(const Address24& a) {
    Verdict v;
    if (a.N < 2 || static_cast<int>(a.m_seq.size()) != a.N || static_cast<int>(a.j.size()) != a.N - 1 ||
        a.m_seq.empty() || a.m_seq[0] != a.m) {
        v.fail("structure", 0);
        return v;
    }
    for (auto x : a.j)
        if (x < 1) v.fail("structure", 0);
    for (auto x : a.m_seq)
        if (x < 1) v.fail("structure", 0);
    if (!v.valid) return v;
    auto n = a.n();
    for (int i = 1; i <= a.N - 1; ++i) {
        bool ok = a.m_seq[i] > n[i - 1];
        if (i == a.N - 1 && a.tuning_tail) ok = a.m_seq[i] == a.j[i - 1] * a.m_seq[i - 1];
        if (!ok) v.fail(i == a.N - 1 && a.tuning_tail ? "tuning_tail" : "2.4.1", i);
    }
    return v;
}

enum class RemainderRule { proof, displayed };

struct Address313 {
    long long m = 1;
    long long i1 = 1;
    std::vector<long long> j;      // j_1, j_2, ...
    std::vector<long long> m_seq;  // m_1 = m, m_2, ...
    RemainderRule rule = RemainderRule::proof;

    std::size_t length() const { return m_seq.size(); }
    long long r1() const { return i1 * m; }

    // e[i-1] = n_i - r_i
    std::vector<long long> excess() const {
        const std::size_t L = length();
        std::vector<long long> e(L);
        auto J = [&](std::size_t i) { return j[i - 1]; };
        auto M = [&](std::size_t i) { return m_seq[i - 1]; };
        for (std::size_t i = 1; i <= L; ++i) {
            long long v = 0;
            if (i == 1) {
                v = J(1) * m - r1();
            } else if (i == 2) {
                v = rule == RemainderRule::proof ? J(2) * M(2) - r1() : (J(2) - 1) * M(2) + J(1) * m - r1();
            } else if (i == 4 && rule == RemainderRule::displayed) {
                v = (J(4) - 1) * M(4) + J(3) * M(3) + J(1) * m;
            } else {
                v = J(i) * M(i) + J(i - 2) * M(i - 2) - 2 * r1();
            }
            e[i - 1] = v;
        }
        return e;
    }

    std::vector<long long> n() const {
        auto e = excess();
        std::vector<long long> out(length());
        for (std::size_t i = 1; i <= length(); ++i)
            out[i - 1] = i == 1 ? j[0] * m : j[i - 1] * m_seq[i - 1] + e[i - 2];
        return out;
    }

    std::vector<long long> r() const {
        auto e = excess();
        auto nn = n();
        std::vector<long long> out(length());
        for (std::size_t i = 0; i < length(); ++i) out[i] = nn[i] - e[i];
        return out;
    }
};

// Property 6 right-hand side: j_i m_i + j_{i-2} m_{i-2} + ... down to index 1 or 2.
inline long long alternating_sum(const Address313& a, std::size_t i) {
    long long s = 0;
    for (long long k = static_cast<long long>(i); k >= 1; k -= 2) s += a.j[k - 1] * a.m_seq[k - 1];
    return s;
}

inline void check_address313_structure(const Address313& a) {
    if (a.m < 1 || a.i1 < 1) throw DomainError("m and i1 must be positive");
    if (a.m_seq.empty() || a.m_seq[0] != a.m) throw DomainError("m_seq must start with m");
    if (a.j.size() != a.m_seq.size()) throw DomainError("j and m_seq must have equal length");
    for (auto x : a.j)
        if (x < 1) throw DomainError("j entries must be positive");
    if (a.j[0] <= 3 * a.i1) throw DomainError("requires j_1 > 3 i1");
}

inline Verdict validate_lemma314(const Address313& a) {
    check_address313_structure(a);
    Verdict v;
    const std::size_t L = a.length();
    auto e = a.excess();
    auto n = a.n();
    auto r = a.r();
    auto M = [&](std::size_t i) { return a.m_seq[i - 1]; };
    auto J = [&](std::size_t i) { return a.j[i - 1]; };
    auto N = [&](std::size_t i) { return n[i - 1]; };
    auto E = [&](std::size_t i) { return e[i - 1]; };
    for (std::size_t i = 1; i + 1 <= L; ++i)
        if (!(M(i + 1) > J(i) * M(i))) v.fail("1", static_cast<int>(i));
    for (std::size_t i = 1; i + 1 <= L; ++i)
        if (!(E(i) + M(i + 1) > N(i))) v.fail("2", static_cast<int>(i));
    for (std::size_t i = 2; i <= L; ++i)
        if (!(r[i - 1] < M(i))) v.fail("3", static_cast<int>(i));
    for (std::size_t i = 1; i + 1 <= L; ++i)
        if (!(E(i + 1) > E(i))) v.fail("4", static_cast<int>(i));
    if (L >= 3 && !(E(3) > N(2) - a.r1())) v.fail("5", 3);
    for (std::size_t i = 4; i <= L; ++i)
        if (!(E(i) > N(i - 1))) v.fail("5", static_cast<int>(i));
    for (std::size_t i = 3; i + 1 <= L; ++i)
        if (!(M(i + 1) > alternating_sum(a, i))) v.fail("6", static_cast<int>(i));
    for (std::size_t i = 1; i + 1 <= L; ++i) {
        if (!(M(i + 1) > M(i))) v.fail("monotone_m", static_cast<int>(i));
        if (!(N(i + 1) > N(i))) v.fail("monotone_n", static_cast<int>(i));
    }
    return v;
}

struct Thm24Bounds {
    long long m = 1;
    int n_min = 2, n_max = 2;  // range of N
    long long m_max = 0;       // bound on every m_i
    long long j_min = 1, j_max = 1;
};

// Valid descent addresses within bounds. Tuning tails are emitted only where
// they are the reason for validity, so no address appears twice.
template <class Emit>
void enumerate_thm24(const Thm24Bounds& b, Emit&& emit) {
    if (b.m < 1 || b.n_min < 2 || b.n_max < b.n_min || b.m_max < b.m || b.j_min < 1 || b.j_max < b.j_min) return;
    Address24 a;
    a.m = b.m;
    a.m_seq = {b.m};
    auto rec = [&](auto&& self, long long n_prev) -> void {
        const int level = static_cast<int>(a.m_seq.size());  // m_1..m_level set
        if (level >= b.n_min) {
            a.N = level;
            a.tuning_tail = false;
            if (validate_thm24(a).valid) emit(a);
        }
        if (level >= b.n_max) return;
        for (long long jj = b.j_min; jj <= b.j_max; ++jj) {
            long long n = n_prev + jj * a.m_seq.back();
            a.j.push_back(jj);
            // Ordinary continuation: m_{level+1} > n_level.
            for (long long mm = n + 1; mm <= b.m_max; ++mm) {
                a.m_seq.push_back(mm);
                self(self, n);
                a.m_seq.pop_back();
            }
            // Tuning tail ending here.
            long long tail = jj * a.m_seq.back();
            if (level + 1 >= b.n_min && tail <= b.m_max && tail <= n) {
                a.m_seq.push_back(tail);
                a.N = level + 1;
                a.tuning_tail = true;
                if (validate_thm24(a).valid) emit(a);
                a.tuning_tail = false;
                a.m_seq.pop_back();
            }
            a.j.pop_back();
        }
    };
    rec(rec, 0);
}

struct S313Bounds {
    long long m = 1;
    long long i1 = 1;
    std::size_t length = 3;  // number of terms of m_seq
    long long m_max = 0;
    long long j_max = 1;
    RemainderRule rule = RemainderRule::proof;
};

// Addresses satisfying the generation constraints (properties 1 and 6) and
// passing the full validator.
template <class Emit>
void enumerate_s313(const S313Bounds& b, Emit&& emit) {
    if (b.m < 1 || b.i1 < 1 || b.length < 1 || b.m_max < b.m || b.j_max <= 3 * b.i1) return;
    Address313 a;
    a.m = b.m;
    a.i1 = b.i1;
    a.rule = b.rule;
    a.m_seq = {b.m};
    auto rec = [&](auto&& self) -> void {
        const std::size_t level = a.m_seq.size();
        const long long jlo = level == 1 ? 3 * b.i1 + 1 : 1;
        for (long long jj = jlo; jj <= b.j_max; ++jj) {
            a.j.push_back(jj);
            if (level == b.length) {
                if (validate_lemma314(a).valid) emit(a);
            } else {
                long long lo = level >= 3 ? alternating_sum(a, level) : jj * a.m_seq.back();
                for (long long mm = lo + 1; mm <= b.m_max; ++mm) {
                    a.m_seq.push_back(mm);
                    self(self);
                    a.m_seq.pop_back();
                }
            }
            a.j.pop_back();
        }
    };
    rec(rec);
}

}  // namespace lamlab
