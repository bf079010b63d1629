#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lamination.hpp"
#include "qml.hpp"
#include "symdyn.hpp"

namespace lamlab {

using ordered_json = nlohmann::ordered_json;

inline ordered_json big_to_json(const BigInt& x) {
    if (x >= 0 && x <= BigInt(std::numeric_limits<std::int64_t>::max()))
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline ordered_json to_json(const Angle& a) { return a.str(); }
inline ordered_json to_json(const Leaf& l) { return ordered_json::array({l.a().str(), l.b().str()}); }

inline ordered_json to_json(const Polygon& pg) {
    ordered_json v = ordered_json::array();
    for (const auto& a : pg.vertices) v.push_back(a.str());
    ordered_json j;
    j["vertices"] = v;
    j["period"] = pg.period ? ordered_json(*pg.period) : ordered_json(nullptr);
    return j;
}

inline ordered_json to_json(const MinorLeaf& m) {
    ordered_json j;
    j["leaf"] = to_json(m.leaf);
    j["period"] = m.period;
    j["minimal"] = m.is_minimal;
    return j;
}

inline ordered_json to_json(const std::vector<MinorLeaf>& ms) {
    ordered_json a = ordered_json::array();
    for (const auto& m : ms) a.push_back(to_json(m));
    return a;
}

inline ordered_json minor_report(const Angle& x) {
    ordered_json j;
    auto m = minor_of(x);
    j["minor"] = ordered_json::array({x.str(), m.leaf.other(x).str()});
    j["period"] = m.period;
    j["limb_root"] = to_json(minimal_minor_below(x).leaf);
    if (auto t = is_tuning(x)) {
        ordered_json tj;
        tj["root"] = to_json(t->root.leaf);
        tj["inner_period"] = t->inner_period;
        j["tuning"] = tj;
    } else {
        j["tuning"] = nullptr;
    }
    return j;
}

// Polygons beyond those of the approximation (e.g. from itinerary classes) are
// merged in, and their sides added to the leaf list.
inline ordered_json to_json(const LaminationApprox& a, const std::vector<Polygon>& extra = {}) {
    std::set<Leaf> leaves = a.leaves;
    std::set<Polygon> polys(a.polygons.begin(), a.polygons.end());
    for (const auto& pg : extra) {
        polys.insert(pg);
        for (const auto& s : pg.sides()) leaves.insert(s);
    }
    ordered_json j;
    j["p"] = a.spec.p().str();
    j["minor"] = to_json(a.spec.minor());
    j["major"] = to_json(a.spec.major());
    j["depth"] = a.depth;
    ordered_json lv = ordered_json::array();
    for (const auto& l : leaves) lv.push_back(to_json(l));
    j["leaves"] = lv;
    ordered_json pv = ordered_json::array();
    for (const auto& pg : polys) pv.push_back(to_json(pg));
    j["polygons"] = pv;
    return j;
}

inline ordered_json to_json(const Verdict& v) {
    ordered_json j;
    j["valid"] = v.valid;
    ordered_json a = ordered_json::array();
    for (const auto& x : v.violations) a.push_back({{"property", x.property}, {"i", x.i}});
    j["violations"] = a;
    return j;
}

inline ordered_json to_json(const Address24& a) {
    ordered_json j;
    j["scheme"] = "thm24";
    j["m"] = a.m;
    j["N"] = a.N;
    j["j"] = a.j;
    j["m_seq"] = a.m_seq;
    j["n"] = a.n();
    j["tuning_tail"] = a.tuning_tail;
    return j;
}

inline ordered_json to_json(const Address313& a) {
    ordered_json j;
    j["scheme"] = "s313";
    j["m"] = a.m;
    j["i1"] = a.i1;
    j["j"] = a.j;
    j["m_seq"] = a.m_seq;
    j["n"] = a.n();
    j["r"] = a.r();
    return j;
}

inline TransitionMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw DomainError("matrix must be an array of arrays");
    std::vector<std::vector<BigInt>> e;
    for (const auto& row : j) {
        if (!row.is_array()) throw DomainError("matrix must be an array of arrays");
        std::vector<BigInt> r;
        for (const auto& x : row) {
            if (x.is_number_unsigned()) r.emplace_back(x.get<std::uint64_t>());
            else if (x.is_number_integer()) r.emplace_back(x.get<std::int64_t>());
            else if (x.is_string()) r.emplace_back(x.get<std::string>());
            else throw DomainError("matrix entries must be integers");
        }
        e.push_back(std::move(r));
    }
    return TransitionMatrix(std::move(e));
}

}  // namespace lamlab
