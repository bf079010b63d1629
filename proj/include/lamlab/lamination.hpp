#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qml.hpp"

namespace lamlab {

enum class Symbol : std::uint8_t { A = 0, B = 1 };

inline char to_char(Symbol s) { return s == Symbol::A ? 'A' : 'B'; }

struct ItineraryWord {
    std::vector<Symbol> symbols;
    // boundary[i]: the i-th image is an endpoint of the critical diameter.
    std::vector<bool> boundary;
    int preperiod = 0;
    int period = 1;

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            s += to_char(symbols[i]);
            if (boundary[i]) s += '*';
        }
        return s;
    }
};

struct Polygon {
    std::vector<Angle> vertices;  // ascending, which is circular order from the least vertex
    std::optional<int> period;  // common period of the vertices, if periodic

    friend bool operator==(const Polygon& x, const Polygon& y) { return x.vertices == y.vertices; }
    friend auto operator<=>(const Polygon& x, const Polygon& y) { return x.vertices <=> y.vertices; }

    std::vector<Leaf> sides() const {
        std::vector<Leaf> out;
        for (std::size_t i = 0; i < vertices.size(); ++i)
            out.emplace_back(vertices[i], vertices[(i + 1) % vertices.size()]);
        return out;
    }
};

// Least n >= 1 with 2^n S = S, or nullopt if S is not periodic as a set.
inline std::optional<int> set_period(const std::vector<Angle>& sorted) {
    int bound = 1;
    for (const auto& a : sorted) {
        auto t = period_under_doubling(a);
        if (t.preperiod > 0) return std::nullopt;
        bound = std::lcm(bound, t.period);
    }
    std::vector<Angle> cur = sorted;
    for (int n = 1; n <= bound; ++n) {
        for (auto& a : cur) a = doubling(a);
        std::sort(cur.begin(), cur.end());
        if (cur == sorted) return n;
    }
    return std::nullopt;
}

inline Polygon make_polygon(std::vector<Angle> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() < 3) throw DomainError("polygon needs at least 3 vertices");
    std::optional<int> per;
    auto t = period_under_doubling(v.front());
    if (t.preperiod == 0) per = t.period;
    return Polygon{std::move(v), per};
}

// Longer of the two preimage pairings; of its two leaves, the one holding a/2.
inline Leaf major_of(const Leaf& minor) {
    Rational len = leaf_length(minor);
    if (len.num * 2 == len.den) throw DomainError("major_of: minor is a diameter");
    auto [a1, a2] = preimages(minor.a());
    auto [b1, b2] = preimages(minor.b());
    Leaf x(a1, b1), y(a1, b2);
    return leaf_length(x) > leaf_length(y) ? x : y;
}

namespace detail {

// floor(theta * D) and whether theta * D is an integer, for D = 2^n - 1.
struct Threshold {
    std::uint64_t floor = 0;
    bool exact = false;
};

inline Threshold threshold(const Angle& theta, std::uint64_t d) {
    BigInt prod = theta.num() * BigInt(d);
    return Threshold{static_cast<std::uint64_t>(prod / theta.den()), prod % theta.den() == 0};
}

// Classes of equal itinerary among the exact-period-n angles j/(2^n-1).
struct PeriodIndex {
    int n = 1;
    std::uint64_t d = 1;
    Threshold t1, t2;
    bool a_is_inner = true;
    Symbol sym_t1 = Symbol::A, sym_t2 = Symbol::A;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;  // (key, j), sorted

    Symbol side(std::uint64_t j) const {
        if (t1.exact && j == t1.floor) return sym_t1;
        if (t2.exact && j == t2.floor) return sym_t2;
        bool above1 = j > t1.floor;
        bool below2 = t2.exact ? j < t2.floor : j <= t2.floor;
        bool inner = above1 && below2;
        return inner == a_is_inner ? Symbol::A : Symbol::B;
    }

    std::uint64_t key(std::uint64_t j) const {
        std::uint64_t k = 0;
        for (int i = 0; i < n; ++i) {
            if (side(j) == Symbol::B) k |= std::uint64_t{1} << i;
            j = 2 * j;
            if (j >= d) j -= d;
        }
        return k;
    }

    std::vector<std::uint64_t> members(std::uint64_t j) const {
        std::uint64_t k = key(j);
        auto lo = std::lower_bound(entries.begin(), entries.end(), std::make_pair(k, std::uint64_t{0}));
        std::vector<std::uint64_t> out;
        for (auto it = lo; it != entries.end() && it->first == k; ++it) out.push_back(it->second);
        return out;
    }

    // Groups of size >= min_size, each ascending.
    std::vector<std::vector<std::uint64_t>> groups(std::size_t min_size = 2) const {
        std::vector<std::vector<std::uint64_t>> out;
        std::size_t i = 0;
        while (i < entries.size()) {
            std::size_t e = i;
            while (e < entries.size() && entries[e].first == entries[i].first) ++e;
            if (e - i >= min_size) {
                std::vector<std::uint64_t> g;
                for (std::size_t q = i; q < e; ++q) g.push_back(entries[q].second);
                out.push_back(std::move(g));
            }
            i = e;
        }
        return out;
    }
};

struct ClassCache {
    std::mutex mu;
    std::map<int, std::shared_ptr<const PeriodIndex>> by_period;
};

}  // namespace detail

// L_p is determined by p. Copies share one populate-once memo of class tables.
class LaminationSpec {
public:
    explicit LaminationSpec(const Angle& p)
        : p_(p), minor_(minor_of(p).leaf), major_(major_of(minor_)),
          theta1_(preimages(p).first), theta2_(preimages(p).second),
          cache_(std::make_shared<detail::ClassCache>()) {
        // The two majors are major_ and its rotation by 1/2; each holds one
        // diameter endpoint. That endpoint takes the side of its partner.
        Leaf twin(Angle(major_.a().num() * 2 + major_.a().den(), major_.a().den() * 2),
                  Angle(major_.b().num() * 2 + major_.b().den(), major_.b().den() * 2));
        auto partner = [&](const Angle& th) {
            if (major_.has_endpoint(th)) return major_.other(th);
            if (twin.has_endpoint(th)) return twin.other(th);
            throw ConsistencyError("diameter endpoint not on a major leaf");
        };
        a_is_inner_ = inner(p_);
        sym_t1_ = side_of_open(partner(theta1_));
        sym_t2_ = side_of_open(partner(theta2_));
        if (sym_t1_ == sym_t2_) throw ConsistencyError("diameter endpoints on the same side");
    }

    const Angle& p() const { return p_; }
    const Leaf& minor() const { return minor_; }
    const Leaf& major() const { return major_; }
    const Angle& theta1() const { return theta1_; }
    const Angle& theta2() const { return theta2_; }
    int period() const { return minor_of(p_).period; }

    bool on_boundary(const Angle& x) const { return x == theta1_ || x == theta2_; }

    Symbol symbol(const Angle& x) const {
        if (x == theta1_) return sym_t1_;
        if (x == theta2_) return sym_t2_;
        return side_of_open(x);
    }

    // Index of equal-itinerary classes among exact-period-n angles.
    std::shared_ptr<const detail::PeriodIndex> index(int n) const {
        require_period(n);
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto& slot = cache_->by_period[n];
        if (!slot) slot = build_index(n);
        return slot;
    }

private:
    bool inner(const Angle& x) const { return theta1_ < x && x < theta2_; }
    Symbol side_of_open(const Angle& x) const {
        return inner(x) == a_is_inner_ ? Symbol::A : Symbol::B;
    }

    std::shared_ptr<const detail::PeriodIndex> build_index(int n) const {
        auto ix = std::make_shared<detail::PeriodIndex>();
        ix->n = n;
        ix->d = detail::mersenne(n);
        ix->t1 = detail::threshold(theta1_, ix->d);
        ix->t2 = detail::threshold(theta2_, ix->d);
        ix->a_is_inner = a_is_inner_;
        ix->sym_t1 = sym_t1_;
        ix->sym_t2 = sym_t2_;
        auto js = detail::exact_period_numerators(n);
        ix->entries.reserve(js.size());
        for (auto j : js) ix->entries.emplace_back(ix->key(j), j);
        std::sort(ix->entries.begin(), ix->entries.end());
        return ix;
    }

    Angle p_;
    Leaf minor_, major_;
    Angle theta1_, theta2_;
    bool a_is_inner_ = true;
    Symbol sym_t1_ = Symbol::A, sym_t2_ = Symbol::B;
    std::shared_ptr<detail::ClassCache> cache_;
};

inline ItineraryWord itinerary(const Angle& x, const LaminationSpec& spec, int len) {
    if (len < 1) throw DomainError("itinerary length must be >= 1");
    auto t = period_under_doubling(x);
    ItineraryWord w;
    w.preperiod = t.preperiod;
    w.period = t.period;
    Angle y = x;
    for (int i = 0; i < len; ++i) {
        w.symbols.push_back(spec.symbol(y));
        w.boundary.push_back(spec.on_boundary(y));
        y = doubling(y);
    }
    return w;
}

// preperiod + period symbols; the rest repeats the last `period` of them.
inline ItineraryWord full_itinerary(const Angle& x, const LaminationSpec& spec) {
    auto t = period_under_doubling(x);
    return itinerary(x, spec, t.preperiod + t.period);
}

inline bool same_class(const Angle& x, const Angle& y, const LaminationSpec& spec) {
    if (x == y) return true;
    auto tx = period_under_doubling(x), ty = period_under_doubling(y);
    long long len = std::max(tx.preperiod, ty.preperiod) + std::lcm<long long>(tx.period, ty.period);
    Angle u = x, v = y;
    for (long long i = 0; i < len; ++i) {
        if (spec.symbol(u) != spec.symbol(v)) return false;
        u = doubling(u);
        v = doubling(v);
    }
    return true;
}

// All rational angles with the itinerary of x. Members of a periodic class share
// its exact period; preperiodic classes are pullbacks of the periodic class of
// 2^s x along the first s symbols.
inline std::set<Angle> class_angles(const Angle& x, const LaminationSpec& spec, int period_bound) {
    auto t = period_under_doubling(x);
    if (t.period > period_bound)
        throw DomainError("period_bound " + std::to_string(period_bound) + " is below the period " +
                          std::to_string(t.period) + " of " + x.str());
    Angle u = iterate_doubling(x, t.preperiod);
    auto ix = spec.index(t.period);
    std::uint64_t ju = detail::numerator_over_mersenne(u, t.period);
    std::vector<Symbol> prefix;
    {
        Angle y = x;
        for (int i = 0; i < t.preperiod; ++i) {
            prefix.push_back(spec.symbol(y));
            y = doubling(y);
        }
    }
    std::set<Angle> out;
    for (auto j : ix->members(ju)) {
        Angle z = detail::angle_of(j, t.period);
        for (int i = t.preperiod - 1; i >= 0; --i) {
            auto [z1, z2] = preimages(z);
            Symbol s1 = spec.symbol(z1), s2 = spec.symbol(z2);
            if (s1 == s2) throw ConsistencyError("both preimages of " + z.str() + " on one side");
            z = s1 == prefix[i] ? z1 : z2;
        }
        out.insert(std::move(z));
    }
    return out;
}

inline bool leaf_in(const LaminationSpec& spec, const Leaf& l) {
    if (!same_class(l.a(), l.b(), spec)) return false;
    auto t = period_under_doubling(l.a());
    auto cls = class_angles(l.a(), spec, t.period);
    std::vector<Angle> v(cls.begin(), cls.end());
    if (v.size() == 2) return true;
    auto ia = std::find(v.begin(), v.end(), l.a()) - v.begin();
    auto ib = std::find(v.begin(), v.end(), l.b()) - v.begin();
    auto n = static_cast<long>(v.size());
    return (ia + 1) % n == ib || (ib + 1) % n == ia;
}

struct LaminationApprox {
    LaminationSpec spec;
    int depth = 0;
    std::set<Leaf> leaves;
    std::vector<Polygon> polygons;
};

// Ascending vertex lists of the cycle components (all degrees 2, >= 3 vertices).
inline std::vector<Polygon> polygons_from_leaves(const std::set<Leaf>& leaves) {
    std::map<Angle, std::vector<Angle>> adj;
    for (const auto& l : leaves) {
        adj[l.a()].push_back(l.b());
        adj[l.b()].push_back(l.a());
    }
    std::set<Angle> seen;
    std::vector<Polygon> out;
    for (const auto& [start, _] : adj) {
        if (seen.count(start)) continue;
        std::vector<Angle> comp;
        std::vector<Angle> stack{start};
        seen.insert(start);
        bool cycle = true;
        std::size_t degree_sum = 0;
        while (!stack.empty()) {
            Angle v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            const auto& nb = adj[v];
            degree_sum += nb.size();
            if (nb.size() != 2) cycle = false;
            for (const auto& w : nb)
                if (seen.insert(w).second) stack.push_back(w);
        }
        if (cycle && comp.size() >= 3 && degree_sum == 2 * comp.size()) out.push_back(make_polygon(comp));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// True iff no two of the leaves cross. Sweep over sorted endpoints with a stack.
inline bool non_crossing(const std::vector<Leaf>& leaves) {
    struct Event {
        const Angle* at;
        bool start;
        std::size_t id;
    };
    std::vector<Event> ev;
    ev.reserve(leaves.size() * 2);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        ev.push_back({&leaves[i].a(), true, i});
        ev.push_back({&leaves[i].b(), false, i});
    }
    // At a shared point: ends first (innermost first), then starts (outermost first).
    std::sort(ev.begin(), ev.end(), [&](const Event& x, const Event& y) {
        if (auto c = *x.at <=> *y.at; c != 0) return c < 0;
        if (x.start != y.start) return !x.start;
        if (!x.start) return leaves[y.id].a() < leaves[x.id].a();
        return leaves[y.id].b() < leaves[x.id].b();
    });
    std::vector<std::size_t> stack;
    for (const auto& e : ev) {
        if (e.start) {
            stack.push_back(e.id);
        } else {
            if (stack.empty() || stack.back() != e.id) return false;
            stack.pop_back();
        }
    }
    return true;
}

namespace detail {
inline std::vector<Leaf> minor_orbit(const Leaf& minor) {
    std::vector<Leaf> orbit{minor};
    for (;;) {
        Leaf next = doubling(orbit.back());
        if (next == minor) break;
        orbit.push_back(next);
        if (orbit.size() > 4096) throw ConsistencyError("minor orbit does not close");
    }
    return orbit;
}
}  // namespace detail

inline std::vector<Leaf> minor_orbit(const LaminationSpec& spec) { return detail::minor_orbit(spec.minor()); }

// Pullback of one leaf: each endpoint's preimage goes with the preimage of the
// other endpoint lying on the same side of the critical diameter.
inline std::pair<Leaf, Leaf> pullback(const LaminationSpec& spec, const Leaf& l) {
    auto [x1, x2] = preimages(l.a());
    auto [y1, y2] = preimages(l.b());
    Symbol sx1 = spec.symbol(x1), sx2 = spec.symbol(x2), sy1 = spec.symbol(y1), sy2 = spec.symbol(y2);
    if (sx1 == sx2 || sy1 == sy2) throw ConsistencyError("pullback of " + l.str() + ": no consistent pairing");
    if (sx1 == sy1) return {Leaf(x1, y1), Leaf(x2, y2)};
    return {Leaf(x1, y2), Leaf(x2, y1)};
}

inline LaminationApprox build(const LaminationSpec& spec, int depth) {
    if (depth < 0) throw DomainError("depth must be >= 0");
    require_depth(depth);
    LaminationApprox out{spec, depth, {}, {}};
    std::vector<Leaf> frontier = minor_orbit(spec);
    out.leaves.insert(frontier.begin(), frontier.end());
    for (int d = 1; d <= depth; ++d) {
        std::vector<Leaf> next;
        for (const auto& l : frontier) {
            auto [u, v] = pullback(spec, l);
            for (Leaf* w : {&u, &v})
                if (out.leaves.insert(*w).second) next.push_back(*w);
        }
        if (!non_crossing(std::vector<Leaf>(out.leaves.begin(), out.leaves.end())))
            throw ConsistencyError("pullback at depth " + std::to_string(d) + " crosses an existing leaf");
        frontier = std::move(next);
    }
    out.polygons = polygons_from_leaves(out.leaves);
    return out;
}

inline std::vector<Polygon> polygons_of(const LaminationApprox& approx) {
    return polygons_from_leaves(approx.leaves);
}

// Equal-itinerary classes of size >= 3 among periodic angles of period <= bound.
inline std::vector<Polygon> polygons_of(const LaminationSpec& spec, int bound) {
    std::vector<Polygon> out;
    for (int n = 1; n <= bound; ++n) {
        auto ix = spec.index(n);
        for (const auto& g : ix->groups(3)) {
            std::vector<Angle> v;
            for (auto j : g) v.push_back(detail::angle_of(j, n));
            out.push_back(make_polygon(std::move(v)));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Leaf> class_leaves(const std::vector<Angle>& sorted_class) {
    std::vector<Leaf> out;
    if (sorted_class.size() == 2) {
        out.emplace_back(sorted_class[0], sorted_class[1]);
    } else if (sorted_class.size() > 2) {
        for (std::size_t i = 0; i < sorted_class.size(); ++i)
            out.emplace_back(sorted_class[i], sorted_class[(i + 1) % sorted_class.size()]);
    }
    return out;
}

// Leaves (polygon sides included) whose endpoints have period dividing n,
// grouped into forward orbits.
inline std::vector<std::vector<Leaf>> periodic_leaves(const LaminationSpec& spec, int n) {
    require_period(n);
    std::set<Leaf> all;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        auto ix = spec.index(d);
        for (const auto& g : ix->groups(2)) {
            std::vector<Angle> v;
            for (auto j : g) v.push_back(detail::angle_of(j, d));
            for (auto& l : class_leaves(v)) all.insert(l);
        }
    }
    std::vector<std::vector<Leaf>> orbits;
    std::set<Leaf> done;
    for (const auto& l : all) {
        if (done.count(l)) continue;
        std::vector<Leaf> orbit;
        Leaf cur = l;
        while (done.insert(cur).second) {
            orbit.push_back(cur);
            cur = doubling(cur);
        }
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

inline bool arc_clear_of_periodic_leaves(const LaminationSpec& spec, const Arc& arc, int max_period) {
    require_period(max_period);
    for (int n = 1; n <= max_period; ++n) {
        auto ix = spec.index(n);
        for (const auto& g : ix->groups(2))
            for (auto j : g)
                if (arc_contains(arc, detail::angle_of(j, n))) return false;
    }
    return true;
}

}  // namespace lamlab
