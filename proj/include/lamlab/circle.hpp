#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lamlab {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational r = num/den, kept reduced. Used for leaf lengths.
struct Rational {
    BigInt num{0}, den{1};
    Rational() = default;
    Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
        if (den == 0) throw DomainError("zero denominator");
        if (den < 0) { num = -num; den = -den; }
        BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        BigInt l = a.num * b.den, r = b.num * a.den;
        return l < r ? std::strong_ordering::less
                     : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    std::string str() const { return num.str() + "/" + den.str(); }
};

// A point of R/Z with rational coordinate, 0 <= num < den, reduced.
class Angle {
public:
    Angle() = default;
    Angle(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ <= 0) throw DomainError("angle denominator must be positive");
        num_ %= den_;
        if (num_ < 0) num_ += den_;
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }
    Angle(long long num, long long den) : Angle(BigInt(num), BigInt(den)) {}

    // Parses "num/den". A bare integer is not accepted.
    static Angle parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos || slash == 0 || slash + 1 == s.size())
            throw DomainError("angle must be written num/den: '" + std::string(s) + "'");
        auto digits = [&](std::string_view t) {
            for (char c : t)
                if (c < '0' || c > '9')
                    throw DomainError("angle must be written num/den: '" + std::string(s) + "'");
            return BigInt(std::string(t));
        };
        BigInt n = digits(s.substr(0, slash)), d = digits(s.substr(slash + 1));
        if (d == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
        return Angle(n, d);
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool odd_denominator() const { return (den_ & 1) != 0; }
    std::string str() const { return num_.str() + "/" + den_.str(); }

    friend bool operator==(const Angle&, const Angle&) = default;
    friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
        // Small operands take the 128-bit path; everything else goes through cpp_int.
        if (a.den_ <= kSmall && b.den_ <= kSmall) {
            auto an = static_cast<std::uint64_t>(a.num_), ad = static_cast<std::uint64_t>(a.den_);
            auto bn = static_cast<std::uint64_t>(b.num_), bd = static_cast<std::uint64_t>(b.den_);
            unsigned __int128 l = static_cast<unsigned __int128>(an) * bd;
            unsigned __int128 r = static_cast<unsigned __int128>(bn) * ad;
            return l <=> r;
        }
        BigInt l = a.num_ * b.den_, r = b.num_ * a.den_;
        return l < r ? std::strong_ordering::less
                     : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.str(); }

private:
    static inline const BigInt kSmall = BigInt(1) << 63;
    BigInt num_{0}, den_{1};
};

// x -> 2x mod 1
inline Angle doubling(const Angle& x) { return Angle(x.num() * 2, x.den()); }

inline Angle iterate_doubling(Angle x, int n) {
    for (int i = 0; i < n; ++i) x = doubling(x);
    return x;
}

// (x/2, x/2 + 1/2)
inline std::pair<Angle, Angle> preimages(const Angle& x) {
    return {Angle(x.num(), x.den() * 2), Angle(x.num() + x.den(), x.den() * 2)};
}

// x -> -x mod 1
inline Angle conjugate(const Angle& x) {
    return x.is_zero() ? x : Angle(x.den() - x.num(), x.den());
}

struct OrbitType {
    int preperiod = 0;
    int period = 1;
    friend bool operator==(const OrbitType&, const OrbitType&) = default;
};

// Denominator d = 2^s * u with u odd: preperiod s, period = ord_u(2).
inline OrbitType period_under_doubling(const Angle& x) {
    OrbitType t;
    BigInt u = x.den();
    while ((u & 1) == 0) {
        u >>= 1;
        ++t.preperiod;
    }
    if (u == 1) return t;
    BigInt r = BigInt(2) % u;
    int k = 1;
    while (r != 1) {
        r = (r * 2) % u;
        ++k;
        if (k > 100000) throw ResourceLimitError("period of " + x.str() + " too large");
    }
    t.period = k;
    return t;
}

class Leaf {
public:
    Leaf(Angle a, Angle b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_ == b_) throw DomainError("degenerate leaf at " + a_.str());
        if (b_ < a_) std::swap(a_, b_);
    }
    const Angle& a() const { return a_; }
    const Angle& b() const { return b_; }
    bool has_endpoint(const Angle& x) const { return x == a_ || x == b_; }
    const Angle& other(const Angle& x) const { return x == a_ ? b_ : a_; }
    std::string str() const { return "{" + a_.str() + ", " + b_.str() + "}"; }

    friend bool operator==(const Leaf&, const Leaf&) = default;
    friend auto operator<=>(const Leaf&, const Leaf&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Leaf& l) { return os << l.str(); }

private:
    Angle a_, b_;
};

inline Rational leaf_length(const Leaf& l) {
    Rational d(l.b().num() * l.a().den() - l.a().num() * l.b().den(), l.a().den() * l.b().den());
    Rational c(d.den - d.num, d.den);
    return d <= c ? d : c;
}

inline Leaf conjugate_leaf(const Leaf& l) { return Leaf(conjugate(l.a()), conjugate(l.b())); }

// Image leaf; throws DomainError when the leaf is a diameter (image degenerate).
inline Leaf doubling(const Leaf& l) { return Leaf(doubling(l.a()), doubling(l.b())); }

inline bool strictly_between(const Angle& lo, const Angle& x, const Angle& hi) {
    return lo < x && x < hi;
}

inline bool crosses(const Leaf& l1, const Leaf& l2) {
    if (l1.has_endpoint(l2.a()) || l1.has_endpoint(l2.b())) return false;
    bool ia = strictly_between(l1.a(), l2.a(), l1.b());
    bool ib = strictly_between(l1.a(), l2.b(), l1.b());
    return ia != ib;
}

// Counterclockwise arc from start to end.
struct Arc {
    Angle start, end;
    bool start_open = true;
    bool end_open = true;

    Arc(Angle s, Angle e, bool so = true, bool eo = true)
        : start(std::move(s)), end(std::move(e)), start_open(so), end_open(eo) {
        if (start == end) throw DomainError("arc endpoints coincide");
    }
    static Arc open(Angle s, Angle e) { return Arc(std::move(s), std::move(e), true, true); }
    static Arc closed(Angle s, Angle e) { return Arc(std::move(s), std::move(e), false, false); }
};

inline bool arc_contains(const Arc& arc, const Angle& x) {
    if (x == arc.start) return !arc.start_open;
    if (x == arc.end) return !arc.end_open;
    if (arc.start < arc.end) return arc.start < x && x < arc.end;
    return x > arc.start || x < arc.end;
}

}  // namespace lamlab

template <>
struct std::hash<lamlab::Angle> {
    std::size_t operator()(const lamlab::Angle& a) const noexcept {
        return boost::multiprecision::hash_value(a.num()) * 1000003u ^
               boost::multiprecision::hash_value(a.den());
    }
};
