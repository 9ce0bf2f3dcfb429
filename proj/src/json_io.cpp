#include "strex/json_io.hpp"

namespace strex {

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(row);
    }
    return Json{{"n", m.n()}, {"rows", rows}};
}

IntMatrix matrix_from_json(const Json& j) {
    if (!j.contains("rows") || !j["rows"].is_array())
        throw ParseError("matrix json needs a 'rows' array", 1, 1);
    std::vector<std::vector<Int>> rows;
    for (const auto& row : j["rows"]) {
        std::vector<Int> r;
        for (const auto& e : row) {
            if (e.is_number_integer())
                r.emplace_back(static_cast<long>(e.get<long long>()));
            else if (e.is_string())
                r.emplace_back(e.get<std::string>());
            else
                throw ParseError("matrix entries must be integers", 1, 1);
        }
        rows.push_back(std::move(r));
    }
    return IntMatrix::from_rows(rows);
}

Json region_to_json(const Region& r) {
    Json parts = Json::array();
    for (const Polygon& p : r.parts()) {
        Json vs = Json::array();
        for (const Vec2& v : p.vertices())
            vs.push_back(Json::array({rat_to_string(v.x), rat_to_string(v.y)}));
        parts.push_back(Json{{"vertices", vs}});
    }
    return Json{{"parts", parts}};
}

Region region_from_json(const Json& j) {
    if (!j.contains("parts") || !j["parts"].is_array())
        throw ParseError("region json needs a 'parts' array", 1, 1);
    std::vector<Polygon> parts;
    for (const auto& part : j["parts"]) {
        if (!part.contains("vertices")) throw ParseError("region part needs 'vertices'", 1, 1);
        std::vector<Vec2> vs;
        for (const auto& v : part["vertices"]) {
            if (!v.is_array() || v.size() != 2)
                throw ParseError("vertex must be a pair of rationals", 1, 1);
            vs.emplace_back(rat_from_string(v[0].get<std::string>()),
                            rat_from_string(v[1].get<std::string>()));
        }
        parts.emplace_back(std::move(vs));
    }
    return Region(std::move(parts));
}

Json tile_report_to_json(const TileReport& rep) {
    Json violations = Json::array();
    for (const TileViolation& v : rep.violations)
        violations.push_back(Json{{"k", Json::array({v.k[0], v.k[1]})},
                                  {"overlap", rat_to_string(v.overlap)}});
    return Json{{"packs", rep.packs},
                {"area", rat_to_string(rep.area)},
                {"tiles", rep.tiles},
                {"violations", violations}};
}

Json dominance_cert_to_json(const DominanceCert& cert) {
    Json achievers = Json::array();
    for (const SignVector& x : cert.achievers) {
        Json v = Json::array();
        for (int s : x) v.push_back(s);
        achievers.push_back(v);
    }
    const char* verdict = cert.verdict == DdVerdict::StrictCube      ? "StrictCube"
                          : cert.verdict == DdVerdict::SurgeryNeeded ? "SurgeryNeeded"
                                                                     : "NotApplicable";
    return Json{{"alpha", rat_to_string(cert.alpha)},
                {"strongly_connected", cert.strongly_connected},
                {"achievers", achievers},
                {"verdict", verdict},
                {"inf_norm_inverse", rat_to_string(cert.inf_norm_inv)}};
}

static Json verdict_to_json(const Verdict& v) {
    Json j{{"kind", verdict_kind_name(v.kind)}};
    if (!v.note.empty()) j["note"] = v.note;
    if (v.witness) j["witness"] = region_to_json(*v.witness);
    return j;
}

Json outcome_to_json(const Outcome2D& o) {
    return Json{{"expansive", o.expansive},
                {"det", o.det.get_str()},
                {"trace", o.trace.get_str()},
                {"convex_symmetric", verdict_to_json(o.convex_symmetric)},
                {"general_set", verdict_to_json(o.general_set)},
                {"notes", o.notes}};
}

Json mra_trace_to_json(const MraTrace& t) {
    Json stages = Json::array();
    for (const MraStage& s : t.stages)
        stages.push_back(Json{{"area", rat_to_string(s.area)}, {"region", region_to_json(s.e)}});
    return Json{{"stages", stages},
                {"terminated_at", t.terminated_at},
                {"K", region_to_json(t.k)}};
}

}  // namespace strex
