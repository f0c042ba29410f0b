#pragma once

#include <json.hpp>

#include "orbitlab/distance.hpp"
#include "orbitlab/orbits.hpp"

namespace orbitlab {

inline const char* version_string() { return "0.1.0"; }

using Json = nlohmann::json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const RatPoint& p) { return Json{to_json(p.x), to_json(p.y)}; }

inline Json to_json(const Box& b) {
    return Json{to_json(b.x0), to_json(b.y0), to_json(b.x1), to_json(b.y1)};
}

inline Json to_json(const OpenRegion& o) {
    Json rects = Json::array();
    for (const Box& b : o.rects()) rects.push_back(to_json(b));
    return Json{{"rects", rects}};
}

inline Json to_json(const SupportSet& s) {
    Json cells = Json::array(), segs = Json::array(), pts = Json::array();
    for (const Box& c : s.cells()) cells.push_back(to_json(c));
    for (const Box& g : s.segs()) segs.push_back(to_json(g));
    for (const RatPoint& p : s.pts()) pts.push_back(to_json(p));
    return Json{{"cells", cells}, {"segs", segs}, {"pts", pts}};
}

inline const char* relation_name(OrbitRelation r) {
    switch (r) {
        case OrbitRelation::SameNormClosure: return "SameNormClosure";
        case OrbitRelation::MemberStrongClosure: return "MemberStrongClosure";
        case OrbitRelation::NotRelated: return "NotRelated";
    }
    return "?";
}

inline Json to_json(const OrbitVerdict& v) {
    Json j{{"holds", v.holds}, {"relation", relation_name(v.relation)}};
    if (!v.notes.empty()) j["notes"] = v.notes;
    if (v.witness) j["witness"] = to_json(*v.witness);
    return j;
}

inline Json to_json(const ClosednessReport& r) {
    Json j{{"closed", r.closed},
           {"diagonal", r.diagonal},
           {"countable_essential", r.countable_essential}};
    if (r.failing_point) j["witness_point"] = to_json(*r.failing_point);
    if (r.radius) j["witness_radius"] = to_json(*r.radius);
    if (r.offending_block) j["offending_block"] = to_json(*r.offending_block);
    return j;
}

inline Json to_json(const PresentationDistance& d) {
    return Json{{"sup_lo", to_json(d.lo)},          {"sup_hi", to_json(d.hi)},
                {"exact_zero", d.exact_zero},       {"euclid_lo", d.euclid_lo},
                {"euclid_hi", d.euclid_hi}};
}

inline Json to_json(const DistanceReport& d) {
    return Json{{"delta_exact", d.delta_exact}, {"dist_ub", d.dist_ub},
                {"iterations", d.iterations},   {"restarts", d.restarts},
                {"seed", d.seed}};
}

/// Envelope every CLI query answer travels in.
inline Json make_report(const std::string& query, const Json& body, std::uint64_t seed,
                        double elapsed_ms) {
    return Json{{"schema", 1},           {"version", version_string()},
                {"query", query},        {"result", body},
                {"seed", seed},          {"timing_ms", elapsed_ms}};
}

}  // namespace orbitlab
