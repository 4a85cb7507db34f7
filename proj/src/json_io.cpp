#include "bsing/json_io.hpp"

#include <stdexcept>

namespace bsing {

json trigpoly_to_json(const TrigPoly& p) {
    json j;
    j["period"] = p.period;
    j["const"] = p.c0;
    if (!p.cos_coeffs.empty()) j["cos"] = p.cos_coeffs;
    if (!p.sin_coeffs.empty()) j["sin"] = p.sin_coeffs;
    return j;
}

TrigPoly trigpoly_from_json(const json& j, double default_period) {
    if (j.is_number()) return TrigPoly::constant(j.get<double>(), default_period);
    if (!j.is_object()) throw std::invalid_argument("trig poly: expected object or number");
    TrigPoly p;
    p.period = j.value("period", default_period);
    p.c0 = j.value("const", 0.0);
    if (j.contains("cos")) p.cos_coeffs = j.at("cos").get<std::vector<double>>();
    if (j.contains("sin")) p.sin_coeffs = j.at("sin").get<std::vector<double>>();
    if (p.period <= 0.0) throw std::invalid_argument("trig poly: period must be positive");
    return p;
}

json profile_to_json(const TimeSpaceProfile& p) {
    json arr = json::array();
    for (const auto& term : p.terms) {
        json t;
        t["time"] = trigpoly_to_json(term.time);
        t["space"] = trigpoly_to_json(term.space);
        arr.push_back(t);
    }
    return arr;
}

TimeSpaceProfile profile_from_json(const json& j, double space_period) {
    TimeSpaceProfile p;
    if (j.is_null()) return p;
    if (j.is_array()) {
        for (const auto& t : j) {
            TimeSpaceProfile::Term term;
            term.time = t.contains("time") ? trigpoly_from_json(t.at("time"), 1.0)
                                           : TrigPoly::constant(1.0, 1.0);
            term.space = trigpoly_from_json(t.at("space"), space_period);
            p.terms.push_back(std::move(term));
        }
        return p;
    }
    // single autonomous term
    p.terms.push_back({TrigPoly::constant(1.0, 1.0), trigpoly_from_json(j, space_period)});
    return p;
}

json circle_to_json(const CriticalCircle& c) {
    json j;
    j["id"] = c.id;
    j["order"] = c.order;
    j["theta_period"] = c.theta_period;
    j["epsilon"] = c.epsilon;
    j["neg"] = c.neg_side;
    j["pos"] = c.pos_side;
    json coeffs = json::array();
    for (const auto& a : c.laurent_coeffs) coeffs.push_back(trigpoly_to_json(a));
    j["coeffs"] = coeffs;
    return j;
}

CriticalCircle circle_from_json(const json& j) {
    CriticalCircle c;
    c.id = j.at("id").get<std::string>();
    c.order = j.value("order", 1);
    c.theta_period = j.value("theta_period", 1.0);
    c.epsilon = j.value("epsilon", 0.1);
    c.neg_side = j.value("neg", "");
    c.pos_side = j.value("pos", "");
    for (const auto& a : j.at("coeffs")) c.laurent_coeffs.push_back(trigpoly_from_json(a, c.theta_period));
    c.validate();
    return c;
}

namespace {
std::string chart_name(ChartKind k) {
    switch (k) {
        case ChartKind::flat_torus: return "flat_torus";
        case ChartKind::sphere: return "sphere";
        case ChartKind::compactified: return "compactified";
        default: return "none";
    }
}
ChartKind chart_kind(const std::string& s) {
    if (s == "flat_torus") return ChartKind::flat_torus;
    if (s == "sphere") return ChartKind::sphere;
    if (s == "compactified") return ChartKind::compactified;
    if (s == "none" || s.empty()) return ChartKind::none;
    throw std::invalid_argument("unknown chart kind: " + s);
}
}  // namespace

json component_to_json(const SurfaceComponent& c) {
    json j;
    j["id"] = c.id;
    j["genus"] = c.genus;
    j["chart"] = chart_name(c.chart);
    j["area"] = c.interior_symplectic_area;
    json b = json::array();
    for (const auto& [cid, side] : c.boundary)
        b.push_back(json::array({cid, side == Side::neg ? "neg" : "pos"}));
    j["boundary"] = b;
    if (c.chart_period_1 != 0.0 || c.chart_period_2 != 0.0)
        j["chart_periods"] = json::array({c.chart_period_1, c.chart_period_2});
    return j;
}

SurfaceComponent component_from_json(const json& j) {
    SurfaceComponent c;
    c.id = j.at("id").get<std::string>();
    c.genus = j.value("genus", 0);
    c.chart = chart_kind(j.value("chart", "none"));
    c.interior_symplectic_area = j.value("area", 1.0);
    if (j.contains("boundary"))
        for (const auto& b : j.at("boundary")) {
            std::string side = b.at(1).get<std::string>();
            if (side != "neg" && side != "pos")
                throw std::invalid_argument("boundary side must be neg or pos");
            c.boundary.emplace_back(b.at(0).get<std::string>(),
                                    side == "neg" ? Side::neg : Side::pos);
        }
    if (j.contains("chart_periods")) {
        c.chart_period_1 = j.at("chart_periods").at(0).get<double>();
        c.chart_period_2 = j.at("chart_periods").at(1).get<double>();
    }
    return c;
}

json surface_to_json(const BSurface& s) {
    json j;
    json comps = json::array(), circles = json::array();
    for (const auto& c : s.components) comps.push_back(component_to_json(c));
    for (const auto& c : s.circles) circles.push_back(circle_to_json(c));
    j["components"] = comps;
    j["circles"] = circles;
    return j;
}

BSurface surface_from_json(const json& j) {
    BSurface s;
    for (const auto& c : j.at("components")) s.components.push_back(component_from_json(c));
    if (j.contains("circles"))
        for (const auto& c : j.at("circles")) s.circles.push_back(circle_from_json(c));
    s.validate();
    return s;
}

json graph_to_json(const BGraph& g) {
    json j;
    json vs = json::array(), es = json::array();
    for (const auto& v : g.vertices) vs.push_back({{"id", v.id}, {"genus", v.genus}});
    for (const auto& e : g.edges) es.push_back({{"id", e.id}, {"a", e.a}, {"b", e.b}});
    j["vertices"] = vs;
    j["edges"] = es;
    return j;
}

BGraph graph_from_json(const json& j) {
    BGraph g;
    for (const auto& v : j.at("vertices"))
        g.vertices.push_back({v.at("id").get<std::string>(), v.value("genus", 0)});
    if (j.contains("edges"))
        for (const auto& e : j.at("edges"))
            g.edges.push_back({e.at("id").get<std::string>(), e.at("a").get<std::string>(),
                               e.at("b").get<std::string>()});
    g.validate();
    return g;
}

json hamiltonian_to_json(const AdmissibleHamiltonian& h) {
    json j;
    json circles = json::object();
    for (const auto& [id, k] : h.per_circle) circles[id] = {{"k", trigpoly_to_json(k)}};
    j["circles"] = circles;
    json comps = json::object();
    for (const auto& [id, p] : h.per_component) comps[id] = {{"h", profile_to_json(p)}};
    j["components"] = comps;
    if (!h.collar_h.empty()) {
        json ch = json::object();
        for (const auto& [id, p] : h.collar_h) ch[id] = profile_to_json(p);
        j["collar_h"] = ch;
    }
    return j;
}

AdmissibleHamiltonian hamiltonian_from_json(const json& j, const BSurface& s) {
    AdmissibleHamiltonian h;
    if (j.contains("circles"))
        for (const auto& [id, v] : j.at("circles").items()) {
            if (!s.find_circle(id))
                throw std::invalid_argument("Hamiltonian references unknown circle " + id);
            h.per_circle[id] = trigpoly_from_json(v.contains("k") ? v.at("k") : v, 1.0);
        }
    if (j.contains("components"))
        for (const auto& [id, v] : j.at("components").items()) {
            if (!s.find_component(id))
                throw std::invalid_argument("Hamiltonian references unknown component " + id);
            h.per_component[id] = profile_from_json(v.contains("h") ? v.at("h") : v, 1.0);
        }
    if (j.contains("collar_h"))
        for (const auto& [id, v] : j.at("collar_h").items()) {
            const CriticalCircle* c = s.find_circle(id);
            if (!c) throw std::invalid_argument("collar_h references unknown circle " + id);
            h.collar_h[id] = profile_from_json(v, c->theta_period);
        }
    return h;
}

}  // namespace bsing
