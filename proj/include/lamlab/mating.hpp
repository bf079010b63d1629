#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "json_io.hpp"
#include "lamination.hpp"

namespace lamlab {

class MatingSpec {
public:
    MatingSpec(const Angle& p, const Angle& q) : p_(p), q_(q), lp_(p), lq_(q) {}

    const Angle& p() const { return p_; }
    const Angle& q() const { return q_; }
    const LaminationSpec& lp() const { return lp_; }
    const LaminationSpec& lq() const { return lq_; }

    // Side classes of x: in L_p, and in L_q^{-1} (already conjugated back).
    std::set<Angle> p_class(const Angle& x, int bound) const { return class_angles(x, lp_, bound); }
    std::set<Angle> q_class(const Angle& x, int bound) const {
        std::set<Angle> out;
        for (const auto& a : class_angles(conjugate(x), lq_, bound)) out.insert(conjugate(a));
        return out;
    }

private:
    Angle p_, q_;
    LaminationSpec lp_, lq_;
};

struct EquivClass {
    std::set<Leaf> p_leaves, q_leaves;  // polygon sides included
    std::vector<Polygon> p_polygons, q_polygons;
    std::set<Angle> support;
    std::optional<int> period;
    std::size_t members = 0;  // number of leaf/polygon pieces from either side
    bool truncated = false;

    std::size_t polygon_count() const { return p_polygons.size() + q_polygons.size(); }
    bool single_piece() const { return members <= 1; }
    friend bool operator==(const EquivClass& x, const EquivClass& y) {
        return x.p_leaves == y.p_leaves && x.q_leaves == y.q_leaves && x.p_polygons == y.p_polygons &&
               x.q_polygons == y.q_polygons && x.support == y.support && x.period == y.period;
    }
};

inline constexpr std::size_t kDefaultClassCap = 64;

namespace detail {

inline void add_piece(std::vector<Angle> sorted, bool p_side, EquivClass& c) {
    auto& leaves = p_side ? c.p_leaves : c.q_leaves;
    for (auto& l : class_leaves(sorted)) leaves.insert(l);
    if (sorted.size() >= 3) (p_side ? c.p_polygons : c.q_polygons).push_back(make_polygon(sorted));
    c.support.insert(sorted.begin(), sorted.end());
    ++c.members;
}

inline void finish(EquivClass& c) {
    std::sort(c.p_polygons.begin(), c.p_polygons.end());
    std::sort(c.q_polygons.begin(), c.q_polygons.end());
    c.period = set_period(std::vector<Angle>(c.support.begin(), c.support.end()));
}

}  // namespace detail

using Seed = std::variant<Angle, Leaf>;

// Saturation from the seed: attach every side class meeting the cluster.
inline EquivClass class_of(const MatingSpec& spec, const Seed& seed, int period_bound,
                           std::size_t size_cap = kDefaultClassCap) {
    std::deque<Angle> queue;
    if (const auto* l = std::get_if<Leaf>(&seed)) {
        if (!leaf_in(spec.lp(), *l) && !leaf_in(spec.lq(), conjugate_leaf(*l)))
            throw DomainError("seed " + l->str() + " is not a leaf of either lamination");
        queue.push_back(l->a());
        queue.push_back(l->b());
    } else {
        queue.push_back(std::get<Angle>(seed));
    }
    EquivClass c;
    std::set<Angle> visited(queue.begin(), queue.end());
    std::set<Angle> p_seen, q_seen;  // least element of each attached side class
    while (!queue.empty() && !c.truncated) {
        Angle a = queue.front();
        queue.pop_front();
        for (bool p_side : {true, false}) {
            auto cls = p_side ? spec.p_class(a, period_bound) : spec.q_class(a, period_bound);
            if (cls.size() < 2) continue;
            if (!(p_side ? p_seen : q_seen).insert(*cls.begin()).second) continue;
            if (c.members >= size_cap) {
                c.truncated = true;
                break;
            }
            detail::add_piece(std::vector<Angle>(cls.begin(), cls.end()), p_side, c);
            for (const auto& x : cls)
                if (visited.insert(x).second) queue.push_back(x);
        }
    }
    if (c.members == 0) c.support.insert(visited.begin(), visited.end());
    detail::finish(c);
    return c;
}

namespace detail {

struct RawClass {
    std::vector<std::vector<std::uint64_t>> p_groups, q_groups;
    std::vector<std::uint64_t> support;  // ascending
    std::size_t members() const { return p_groups.size() + q_groups.size(); }
};

// Every nontrivial class whose angles have exact period n, on numerators over 2^n-1.
inline std::vector<RawClass> raw_classes(const MatingSpec& spec, int n) {
    const std::uint64_t d = mersenne(n);
    auto nums = exact_period_numerators(n);
    auto pos = [&](std::uint64_t j) {
        return static_cast<std::size_t>(std::lower_bound(nums.begin(), nums.end(), j) - nums.begin());
    };
    std::vector<std::size_t> parent(nums.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto pg = spec.lp().index(n)->groups(2);
    auto qg = spec.lq().index(n)->groups(2);
    for (auto& g : qg) {
        for (auto& j : g) j = j == 0 ? 0 : d - j;
        std::sort(g.begin(), g.end());
    }
    for (const auto* groups : {&pg, &qg})
        for (const auto& g : *groups)
            for (std::size_t i = 1; i < g.size(); ++i) parent[find(pos(g[i]))] = find(pos(g[0]));
    std::map<std::size_t, RawClass> by_root;
    for (auto& g : pg) by_root[find(pos(g[0]))].p_groups.push_back(g);
    for (auto& g : qg) by_root[find(pos(g[0]))].q_groups.push_back(g);
    std::vector<RawClass> out;
    for (auto& [_, rc] : by_root) {
        std::set<std::uint64_t> s;
        for (const auto* groups : {&rc.p_groups, &rc.q_groups})
            for (const auto& g : *groups) s.insert(g.begin(), g.end());
        rc.support.assign(s.begin(), s.end());
        out.push_back(std::move(rc));
    }
    std::sort(out.begin(), out.end(), [](const RawClass& x, const RawClass& y) { return x.support < y.support; });
    return out;
}

inline std::vector<std::uint64_t> double_set(const std::vector<std::uint64_t>& s, std::uint64_t d) {
    std::vector<std::uint64_t> out;
    out.reserve(s.size());
    for (auto j : s) {
        std::uint64_t y = 2 * j;
        out.push_back(y >= d ? y - d : y);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline int raw_period(const RawClass& rc, int n) {
    const std::uint64_t d = mersenne(n);
    auto cur = rc.support;
    for (int t = 1; t <= n; ++t) {
        cur = double_set(cur, d);
        if (cur == rc.support) return t;
    }
    throw ConsistencyError("class support is not periodic");
}

inline EquivClass to_class(const RawClass& rc, int n) {
    EquivClass c;
    for (bool p_side : {true, false})
        for (const auto& g : p_side ? rc.p_groups : rc.q_groups) {
            std::vector<Angle> v;
            for (auto j : g) v.push_back(angle_of(j, n));
            add_piece(std::move(v), p_side, c);
        }
    finish(c);
    return c;
}

// Calls f(raw, n, class_period) once per orbit of classes, over
// exact periods 1..bound.
template <class F>
void for_each_class_orbit(const MatingSpec& spec, int bound, F&& f) {
    for (int n = 1; n <= bound; ++n) {
        auto classes = raw_classes(spec, n);
        std::set<std::vector<std::uint64_t>> done;
        const std::uint64_t d = mersenne(n);
        for (const auto& rc : classes) {
            if (done.count(rc.support)) continue;
            int t = raw_period(rc, n);
            auto cur = rc.support;
            for (int i = 0; i < t; ++i) {
                done.insert(cur);
                cur = double_set(cur, d);
            }
            f(rc, n, t);
        }
    }
}

}  // namespace detail

// Nontrivial periodic classes whose period divides n, one per orbit, from
// angles of period <= period_bound.
inline std::vector<EquivClass> periodic_classes(const MatingSpec& spec, int n, int period_bound) {
    if (n < 1) throw DomainError("n must be >= 1");
    require_period(period_bound);
    std::vector<EquivClass> out;
    detail::for_each_class_orbit(spec, period_bound, [&](const detail::RawClass& rc, int per, int t) {
        if (n % t == 0) out.push_back(detail::to_class(rc, per));
    });
    return out;
}

enum class FindingCode { SharedOrbit, OversizedClass, TuningP, TuningQ, LinkedGaps, NotMateable };

inline const char* code_name(FindingCode c) {
    switch (c) {
        case FindingCode::SharedOrbit: return "SHARED_ORBIT";
        case FindingCode::OversizedClass: return "OVERSIZED_CLASS";
        case FindingCode::TuningP: return "TUNING_P";
        case FindingCode::TuningQ: return "TUNING_Q";
        case FindingCode::LinkedGaps: return "LINKED_GAPS";
        case FindingCode::NotMateable: return "NOT_MATEABLE";
    }
    return "?";
}

struct Finding {
    FindingCode code;
    std::string message;
    ordered_json detail = ordered_json::object();
};

using HistogramKey = std::tuple<std::size_t, std::size_t, std::size_t>;

struct MatingReport {
    Angle p, q;
    int period_bound = 0;
    bool mateable = false;
    bool thm35_ok = false;
    std::vector<Finding> reasons;
    std::map<HistogramKey, std::size_t> class_histogram;

    bool has(FindingCode c) const {
        return std::any_of(reasons.begin(), reasons.end(), [&](const Finding& f) { return f.code == c; });
    }
};

inline ordered_json to_json(const EquivClass& c) {
    ordered_json j;
    auto leaves = [](const std::set<Leaf>& s) {
        ordered_json a = ordered_json::array();
        for (const auto& l : s) a.push_back(to_json(l));
        return a;
    };
    auto polys = [](const std::vector<Polygon>& s) {
        ordered_json a = ordered_json::array();
        for (const auto& p : s) a.push_back(to_json(p));
        return a;
    };
    j["p_leaves"] = leaves(c.p_leaves);
    j["q_leaves"] = leaves(c.q_leaves);
    j["p_polygons"] = polys(c.p_polygons);
    j["q_polygons"] = polys(c.q_polygons);
    ordered_json s = ordered_json::array();
    for (const auto& a : c.support) s.push_back(a.str());
    j["support"] = s;
    j["period"] = c.period ? ordered_json(*c.period) : ordered_json(nullptr);
    j["truncated"] = c.truncated;
    return j;
}

namespace detail {

inline std::set<Angle> endpoint_orbit(const Leaf& l) {
    std::set<Angle> out;
    for (Angle x : {l.a(), l.b()})
        while (out.insert(x).second) x = doubling(x);
    return out;
}

inline std::set<Leaf> root_leaves(const LaminationSpec& spec, bool conj) {
    std::set<Leaf> out;
    for (const auto& l : minor_orbit(spec)) out.insert(conj ? conjugate_leaf(l) : l);
    return out;
}

// A side piece marks a gap if it is a polygon or a root leaf of a periodic Fatou gap.
inline std::size_t gap_markers(const std::vector<std::vector<std::uint64_t>>& groups, int n,
                               const std::set<Leaf>& roots, std::vector<ordered_json>* out) {
    std::size_t k = 0;
    for (const auto& g : groups) {
        bool marker = g.size() >= 3;
        if (!marker) marker = roots.count(Leaf(angle_of(g[0], n), angle_of(g[1], n))) > 0;
        if (!marker) continue;
        ++k;
        if (out) {
            ordered_json v = ordered_json::array();
            for (auto j : g) v.push_back(angle_of(j, n).str());
            out->push_back(v);
        }
    }
    return k;
}

}  // namespace detail

inline std::vector<Finding> detect_linked_gaps(const MatingSpec& spec, int period_bound) {
    require_period(period_bound);
    const auto p_roots = detail::root_leaves(spec.lp(), false);
    const auto q_roots = detail::root_leaves(spec.lq(), true);
    const int kp = spec.lp().period(), kq = spec.lq().period();
    std::vector<Finding> out;
    detail::for_each_class_orbit(spec, period_bound, [&](const detail::RawClass& rc, int n, int t) {
        for (bool p_side : {true, false}) {
            const auto& mine = p_side ? rc.p_groups : rc.q_groups;
            const auto& theirs = p_side ? rc.q_groups : rc.p_groups;
            std::vector<ordered_json> gaps;
            std::size_t c = detail::gap_markers(mine, n, p_side ? p_roots : q_roots, &gaps);
            if (c < 2) continue;
            std::size_t roots = 0;
            for (const auto& g : mine)
                if (g.size() == 2 && (p_side ? p_roots : q_roots).count(Leaf(detail::angle_of(g[0], n), detail::angle_of(g[1], n))))
                    ++roots;
            Finding f{FindingCode::LinkedGaps, "", ordered_json::object()};
            ordered_json links = ordered_json::array();
            for (const auto& g : theirs) {
                ordered_json v = ordered_json::array();
                for (auto j : g) v.push_back(detail::angle_of(j, n).str());
                links.push_back(v);
            }
            const int k_side = p_side ? kp : kq;
            f.detail["side"] = p_side ? "p" : "q";
            f.detail["class_period"] = t;
            f.detail["angle_period"] = n;
            f.detail["gaps"] = gaps;
            f.detail["linking_pieces"] = links;
            f.detail["gaps_per_cluster"] = c;
            std::string note;
            if (roots == c && k_side % static_cast<int>(c) == 0) {
                // All linked gaps are Fatou gaps of the critical cycle.
                int tuned = k_side / static_cast<int>(c);
                f.detail["gap_orbit_period"] = k_side;
                f.detail["tuning_period"] = c;
                f.detail["critical_periods"] = p_side ? ordered_json::array({tuned, kq}) : ordered_json::array({kp, tuned});
                note = "period " + std::to_string(c) + " tuning: the period-" + std::to_string(k_side) + " gap orbit of the " +
                       (p_side ? "p" : "q") + " side is linked in groups of " + std::to_string(c) +
                       "; critical periods (" + std::to_string(p_side ? tuned : kp) + ", " +
                       std::to_string(p_side ? kq : tuned) + ")";
            } else {
                note = std::to_string(c) + " gaps of the " + std::string(p_side ? "p" : "q") +
                       " side lie in one class";
            }
            f.message = note;
            out.push_back(std::move(f));
        }
    });
    return out;
}

inline MatingReport check_theorem_3_5(const MatingSpec& spec, int period_bound) {
    require_period(period_bound);
    MatingReport r;
    r.p = spec.p();
    r.q = spec.q();
    r.period_bound = period_bound;
    r.mateable = is_mateable(spec.p(), spec.q());
    if (!r.mateable)
        r.reasons.push_back({FindingCode::NotMateable, "p and q lie in conjugate limbs", ordered_json::object()});

    auto op = detail::endpoint_orbit(spec.lp().minor());
    auto oq = detail::endpoint_orbit(conjugate_leaf(spec.lq().minor()));
    std::vector<Angle> shared;
    std::set_intersection(op.begin(), op.end(), oq.begin(), oq.end(), std::back_inserter(shared));
    if (!shared.empty()) {
        Finding f{FindingCode::SharedOrbit, "endpoint orbits of the minor and the inverted minor meet", ordered_json::object()};
        ordered_json v = ordered_json::array();
        for (const auto& a : shared) v.push_back(a.str());
        f.detail["angles"] = v;
        r.reasons.push_back(std::move(f));
    }

    detail::for_each_class_orbit(spec, period_bound, [&](const detail::RawClass& rc, int n, int t) {
        EquivClass c = detail::to_class(rc, n);
        HistogramKey key{c.p_leaves.size(), c.q_leaves.size(), c.polygon_count()};
        r.class_histogram[key] += static_cast<std::size_t>(t);
        if (c.members > 1) {
            Finding f{FindingCode::OversizedClass,
                      "class of period " + std::to_string(t) + " has " + std::to_string(c.members) +
                          " pieces (" + std::to_string(c.p_leaves.size()) + " p-leaves, " +
                          std::to_string(c.q_leaves.size()) + " q-leaves, " + std::to_string(c.polygon_count()) +
                          " polygons)",
                      ordered_json::object()};
            f.detail["class"] = to_json(c);
            f.detail["orbit_size"] = t;
            r.reasons.push_back(std::move(f));
        }
    });

    if (auto tp = is_tuning(spec.p())) {
        Finding f{FindingCode::TuningP, "p is a tuning", ordered_json::object()};
        f.detail["root"] = to_json(tp->root.leaf);
        f.detail["inner_period"] = tp->inner_period;
        r.reasons.push_back(std::move(f));
    }
    if (auto tq = is_tuning(spec.q())) {
        Finding f{FindingCode::TuningQ, "q is a tuning", ordered_json::object()};
        f.detail["root"] = to_json(tq->root.leaf);
        f.detail["inner_period"] = tq->inner_period;
        r.reasons.push_back(std::move(f));
    }
    for (auto& f : detect_linked_gaps(spec, period_bound)) r.reasons.push_back(std::move(f));
    r.thm35_ok = r.mateable && r.reasons.empty();
    return r;
}

inline ordered_json to_json(const MatingReport& r) {
    ordered_json j;
    j["p"] = r.p.str();
    j["q"] = r.q.str();
    j["period_bound"] = r.period_bound;
    j["mateable"] = r.mateable;
    j["thm35_ok"] = r.thm35_ok;
    ordered_json reasons = ordered_json::array();
    for (const auto& f : r.reasons) {
        ordered_json x;
        x["code"] = code_name(f.code);
        x["message"] = f.message;
        x["detail"] = f.detail;
        reasons.push_back(x);
    }
    j["reasons"] = reasons;
    ordered_json h = ordered_json::array();
    for (const auto& [k, v] : r.class_histogram)
        h.push_back({{"p_leaves", std::get<0>(k)}, {"q_leaves", std::get<1>(k)}, {"polygons", std::get<2>(k)}, {"count", v}});
    j["class_histogram"] = h;
    return j;
}

}  // namespace lamlab
