// Scenario runner: builtin models, command dispatch, report/CSV emission.

#include "bsing/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bsing/desing.hpp"
#include "bsing/dynamics.hpp"
#include "bsing/morse.hpp"

namespace bsing {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fnv1a_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
    return buf;
}

json circle_json(const std::string& id, int order, double T, double eps,
                 const std::string& neg, const std::string& pos) {
    // a_1..a_m with a_m = 1, lower coefficients 0
    json coeffs = json::array();
    for (int i = 1; i < order; ++i) coeffs.push_back(0.0);
    coeffs.push_back(1.0);
    return {{"id", id},       {"order", order}, {"theta_period", T}, {"epsilon", eps},
            {"neg", neg},     {"pos", pos},     {"coeffs", coeffs}};
}

json component_json(const std::string& id, int genus, const json& boundary) {
    return {{"id", id}, {"genus", genus}, {"boundary", boundary}};
}

}  // namespace

json builtin_scenario(const std::string& name, const json& params) {
    int order = params.value("order", 1);
    double eps = params.value("epsilon", 0.4);
    double T = params.value("theta_period", kTwoPi);
    json cfg;
    cfg["command"] = "analyze-graph";
    cfg["options"] = json::object();

    if (name == "sphere_equator") {
        cfg["surface"] = {
            {"components",
             json::array({component_json("A", 0, json::array({json::array({"c", "pos"})})),
                          component_json("B", 0, json::array({json::array({"c", "neg"})}))})},
            {"circles", json::array({circle_json("c", order, T, eps, "B", "A")})}};
        cfg["hamiltonian"] = {{"circles", {{"c", {{"k", 1.0}}}}}};
    } else if (name == "btorus" || name == "two_annuli_torus") {
        cfg["surface"] = {
            {"components",
             json::array({component_json("A", 0,
                                         json::array({json::array({"c1", "pos"}),
                                                      json::array({"c2", "pos"})})),
                          component_json("B", 0,
                                         json::array({json::array({"c1", "neg"}),
                                                      json::array({"c2", "neg"})}))})},
            {"circles", json::array({circle_json("c1", order, T, eps, "B", "A"),
                                     circle_json("c2", order, T, eps, "B", "A")})}};
        cfg["hamiltonian"] = {
            {"circles", {{"c1", {{"k", 0.3}}}, {"c2", {{"k", 0.3}}}}}};
    } else if (name == "g1d1") {
        cfg["surface"] = {
            {"components",
             json::array({component_json("V", 1, json::array({json::array({"c", "pos"})})),
                          component_json("D", 0, json::array({json::array({"c", "neg"})}))})},
            {"circles", json::array({circle_json("c", order, T, eps, "D", "V")})}};
        cfg["hamiltonian"] = {{"circles", {{"c", {{"k", 1.0}}}}}};
    } else if (name == "g1d2") {
        cfg["surface"] = {
            {"components",
             json::array({component_json("V", 1,
                                         json::array({json::array({"c1", "pos"}),
                                                      json::array({"c2", "pos"})})),
                          component_json("D1", 0, json::array({json::array({"c1", "neg"})})),
                          component_json("D2", 0, json::array({json::array({"c2", "neg"})}))})},
            {"circles", json::array({circle_json("c1", order, T, eps, "D1", "V"),
                                     circle_json("c2", order, T, eps, "D2", "V")})}};
        cfg["hamiltonian"] = {
            {"circles", {{"c1", {{"k", 1.0}}}, {"c2", {{"k", 1.0}}}}}};
    } else if (name == "star3") {
        json comps = json::array();
        json circles = json::array();
        json center_boundary = json::array();
        json hcirc = json::object();
        for (int i = 1; i <= 3; ++i) {
            std::string cid = "c" + std::to_string(i);
            std::string leaf = "L" + std::to_string(i);
            center_boundary.push_back(json::array({cid, "pos"}));
            comps.push_back(component_json(leaf, 0, json::array({json::array({cid, "neg"})})));
            circles.push_back(circle_json(cid, order, T, eps, leaf, "C"));
            hcirc[cid] = {{"k", 1.0}};
        }
        comps.push_back(component_json("C", 0, center_boundary));
        cfg["surface"] = {{"components", comps}, {"circles", circles}};
        cfg["hamiltonian"] = {{"circles", hcirc}};
    } else {
        throw std::invalid_argument("unknown builtin scenario: " + name);
    }
    return cfg;
}

Scenario scenario_from_json(json config) {
    if (config.contains("builtin")) {
        std::string name = config.at("builtin").get<std::string>();
        json base = builtin_scenario(name, config.value("builtin_options", json::object()));
        base.merge_patch(config);
        base.erase("builtin");
        base.erase("builtin_options");
        config = std::move(base);
    }
    Scenario sc;
    sc.command = config.value("command", "");
    static const char* known[] = {"analyze-graph",   "check-admissible", "find-orbits",
                                  "desingularize",   "verify-bound",     "construct-optimal",
                                  "floer-residual",  "singularize"};
    bool ok = false;
    for (const char* c : known) ok = ok || sc.command == c;
    if (!ok) throw std::invalid_argument("unknown command: '" + sc.command + "'");

    if (config.contains("surface")) {
        sc.surface = surface_from_json(config.at("surface"));
        if (config.contains("hamiltonian"))
            sc.hamiltonian = hamiltonian_from_json(config.at("hamiltonian"), sc.surface);
    } else if (sc.command != "floer-residual" && sc.command != "singularize") {
        throw std::invalid_argument("scenario needs a surface for command " + sc.command);
    }
    sc.options = config.value("options", json::object());
    sc.raw = std::move(config);
    return sc;
}

void apply_override(json& config, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got '" + assignment + "'");
    std::string path = assignment.substr(0, eq), value = assignment.substr(eq + 1);
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;  // plain string
    }
    json* node = &config;
    std::size_t pos = 0;
    while (true) {
        auto dot = path.find('.', pos);
        std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (key.empty()) throw std::invalid_argument("--set: empty path segment");
        if (dot == std::string::npos) {
            (*node)[key] = parsed;
            break;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

// --------------------------------------------------------------------- commands

namespace {

std::string orbits_csv(const std::vector<OrbitRecord>& orbits) {
    std::ostringstream out;
    out << "chart,x,y,residual,det,index,index_supported,degenerate_family\n";
    for (const auto& o : orbits)
        out << o.chart_id << "," << fmt(o.point[0]) << "," << fmt(o.point[1]) << ","
            << fmt(o.residual) << "," << fmt(o.det) << "," << o.index << ","
            << (o.index_supported ? 1 : 0) << "," << (o.degenerate_family ? 1 : 0) << "\n";
    return out.str();
}

json orbit_json(const OrbitRecord& o) {
    return {{"chart", o.chart_id},
            {"point", json::array({o.point[0], o.point[1]})},
            {"residual", o.residual},
            {"det", o.det},
            {"nondegenerate", o.nondegenerate},
            {"index", o.index},
            {"index_supported", o.index_supported}};
}

void cmd_analyze_graph(const Scenario& sc, RunResult& rr) {
    BGraph g = build_graph(sc.surface);
    json jg = graph_to_json(g);
    json degrees = json::object();
    for (const auto& v : g.vertices) degrees[v.id] = g.degree(v.id);
    auto tc = two_color(g);
    json coloring;
    if (tc.coloring) {
        coloring = json::object();
        for (const auto& [id, sgn] : tc.coloring->sign) coloring[id] = sgn;
    }
    rr.report["results"] = {{"graph", jg},
                            {"degrees", degrees},
                            {"arnold_bound", arnold_bound_surface(g)},
                            {"acyclic", is_acyclic(g)},
                            {"two_colorable", (bool)tc.coloring},
                            {"coloring", coloring},
                            {"odd_walk_witness", tc.odd_walk_witness}};
    rr.files["graph.dot"] = to_dot(g);
}

void cmd_check_admissible(const Scenario& sc, RunResult& rr) {
    AdmissibilityReport rep = admissibility_report(sc.hamiltonian, sc.surface);
    json per = json::array();
    for (const auto& c : rep.per_circle)
        per.push_back({{"circle", c.circle_id},
                       {"pass", c.pass},
                       {"criterion", c.criterion},
                       {"witness", c.witness},
                       {"k_integral", c.k_integral},
                       {"threshold", c.threshold}});
    rr.report["results"] = {{"admissible", rep.overall}, {"per_circle", per}};
    if (!rep.overall) rr.exit_code = 3;
}

void cmd_find_orbits(const Scenario& sc, RunResult& rr) {
    int density = sc.options.value("grid_density", 48);
    double tol = sc.options.value("newton_tol", 1e-10);
    OrbitSearch found = find_collar_periodic_orbits(sc.hamiltonian, sc.surface, density, tol);
    json arr = json::array();
    for (const auto& o : found.orbits) arr.push_back(orbit_json(o));
    rr.report["results"] = {{"orbit_count", found.orbits.size()},
                            {"orbits", arr},
                            {"degenerate_family_flagged", found.degenerate_family_flagged},
                            {"family_seed_count", found.family_seed_count}};
    rr.files["orbits.csv"] = orbits_csv(found.orbits);
}

void cmd_desingularize(const Scenario& sc, RunResult& rr) {
    std::string path = sc.options.value("path", "unimodular");
    bool surface_path = sc.options.value("surface_path", sc.surface.circles.empty()
                                                             ? false
                                                             : sc.surface.circles[0].order % 2 == 1);
    DesingularizedHamiltonian d;
    if (path == "unimodular")
        d = desingularize_hamiltonian_unimodular(sc.hamiltonian, sc.surface, surface_path);
    else if (path == "acyclic")
        d = desingularize_hamiltonian_acyclic(sc.hamiltonian, sc.surface,
                                              sc.options.value("initial_component", ""),
                                              surface_path);
    else
        throw std::invalid_argument("desingularize path must be unimodular or acyclic");

    double tol = sc.options.value("agreement_tol", 1e-9);
    double worst = 0.0;
    json per = json::array();
    for (const auto& circle : sc.surface.circles) {
        FieldAgreement fa = verify_field_agreement(circle, sc.hamiltonian.k(circle.id),
                                                   sc.hamiltonian.collar_profile(circle.id),
                                                   d.collar_fn.at(circle.id));
        worst = std::max(worst, fa.max_deviation);
        json pieces = json::array();
        for (const auto& p : d.collar_fn.at(circle.id).pieces) pieces.push_back(p.describe());
        per.push_back({{"circle", circle.id},
                       {"max_deviation", fa.max_deviation},
                       {"grid_points", fa.grid_points},
                       {"pieces", pieces}});
    }
    double c1 = d.c1_defect(sc.hamiltonian, sc.surface);
    json offsets = json::object();
    for (const auto& [id, off] : d.component_offset)
        offsets[id] = {{"sign", d.component_sign.at(id)}, {"offset_mean", off.mean()}};
    rr.report["results"] = {{"path", path},
                            {"surface_path", surface_path},
                            {"max_field_deviation", worst},
                            {"c1_defect", c1},
                            {"per_circle", per},
                            {"components", offsets}};
    if (worst > tol || c1 > 1e-8) rr.exit_code = 3;
}

void cmd_construct_optimal(const Scenario& sc, RunResult& rr, OptimalConstruction* keep) {
    int order = sc.options.value("order",
                                 sc.surface.circles.empty() ? 1 : sc.surface.circles[0].order);
    OptimalConstruction oc = optimal_b_function(sc.surface, order);
    json verts = json::array();
    bool euler_ok = true;
    for (const auto& v : oc.vertices) {
        bool e = euler_identity_check(v.inventory, v.genus);
        euler_ok = euler_ok && e;
        json disks = json::array();
        for (const auto& [cid, sgn] : v.inventory.disk_signs)
            disks.push_back({{"circle", cid}, {"sign", sgn}});
        verts.push_back({{"vertex", v.vertex_id},
                         {"genus", v.genus},
                         {"degree", v.degree},
                         {"counts", json::array({v.inventory.c_min, v.inventory.c_saddle,
                                                 v.inventory.c_max})},
                         {"disk_signs", disks},
                         {"expected_interior", v.expected_interior},
                         {"euler_identity", e},
                         {"has_explicit_chart", (bool)v.interior}});
    }
    json signs;
    if (oc.edge_signs) {
        signs = json::object();
        for (const auto& [id, sgn] : oc.edge_signs->sign) signs[id] = sgn;
    }
    json orient;
    if (oc.orientation) {
        orient = json::object();
        for (const auto& [id, dir] : oc.orientation->directed)
            orient[id] = json::array({dir.first, dir.second});
    }
    rr.report["results"] = {{"order", oc.order},
                            {"total_expected", oc.total_expected},
                            {"vertices", verts},
                            {"edge_signs", signs},
                            {"orientation", orient},
                            {"euler_identity_all", euler_ok}};
    if (!euler_ok) rr.exit_code = 3;
    if (keep) *keep = std::move(oc);
}

void cmd_verify_bound(const Scenario& sc, RunResult& rr) {
    OptimalConstruction oc;
    cmd_construct_optimal(sc, rr, &oc);
    if (rr.exit_code != 0) return;

    BGraph g = build_graph(sc.surface);
    int bound = arnold_bound_surface(g);
    int density = sc.options.value("grid_density", 40);
    double tol = sc.options.value("newton_tol", 1e-10);

    int found = 0;
    bool all_explicit = true, all_nondeg = true;
    std::vector<OrbitRecord> all_orbits;
    json per = json::array();
    for (const auto& v : oc.vertices) {
        if (!v.interior) {
            all_explicit = false;
            per.push_back({{"vertex", v.vertex_id}, {"explicit", false}});
            continue;
        }
        OrbitSearch os = find_periodic_orbits(*v.interior, density, tol);
        for (const auto& o : os.orbits) {
            all_nondeg = all_nondeg && o.nondegenerate;
            all_orbits.push_back(o);
        }
        found += (int)os.orbits.size();
        per.push_back({{"vertex", v.vertex_id},
                       {"explicit", true},
                       {"found", os.orbits.size()},
                       {"expected", v.expected_interior}});
    }
    rr.report["results"]["bound"] = bound;
    rr.report["results"]["found"] = all_explicit ? json(found) : json();
    rr.report["results"]["per_vertex_orbits"] = per;
    rr.report["results"]["all_nondegenerate"] = all_nondeg;
    rr.files["orbits.csv"] = orbits_csv(all_orbits);
    if (oc.total_expected != bound || (all_explicit && (found != bound || !all_nondeg)))
        rr.exit_code = 3;
}

/// Manufactured family on the cylinder: f o u = log(z_base) + phi with
/// phi = amp sin(2 pi t) sin(pi s) and k chosen so Laplacian(phi) = -dk/ds
/// holds exactly in the continuum; the discrete residual is O(h^2).
FloerGrid manufactured_grid(int n, double amp) {
    double h = 1.0 / double(n);
    FloerGrid grid = FloerGrid::make(n, n, h, h, 1, 1.0);
    const double pi = std::numbers::pi;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = h * double(i), t = h * double(j);
            double phi = amp * std::sin(2.0 * pi * t) * std::sin(pi * s);
            grid.at(grid.z, i, j) = 0.3 * std::exp(phi);
            // dk/ds = -Lap(phi) = 5 pi^2 phi
            grid.at(grid.k, i, j) = -5.0 * pi * amp * std::sin(2.0 * pi * t) * std::cos(pi * s);
        }
    return grid;
}

std::string residual_csv(const FloerResidual& r) {
    std::ostringstream out;
    out << "i,j,residual\n";
    for (int i = 0; i < r.ns - 1; ++i)
        for (int j = 0; j < r.nt; ++j)
            out << i + 1 << "," << j << "," << fmt(r.field[std::size_t(i) * r.nt + j]) << "\n";
    return out.str();
}

void cmd_floer_residual(const Scenario& sc, RunResult& rr) {
    int n = sc.options.value("grid", 100);
    double amp = sc.options.value("amplitude", 2e-5);

    FloerGrid g1 = manufactured_grid(n, amp);
    FloerGrid g2 = manufactured_grid(2 * n, amp);
    FloerResidual r1 = discrete_floer_residual(g1);
    FloerResidual r2 = discrete_floer_residual(g2);
    double order = std::log2(r1.max_norm / r2.max_norm);

    // translation-invariant cylinder: constant-z orbit, constant k
    FloerGrid flat = FloerGrid::make(n, n, 1.0 / n, 1.0 / n, 1, 1.0);
    FloerResidual rflat = discrete_floer_residual(flat);
    auto mp = minimum_principle_check(flat, 1e-5);

    // negative control: u = (z0 + 0.1 s, theta0), constant k
    FloerGrid bad = FloerGrid::make(n, n, 1.0 / n, 1.0 / n, 1, 1.0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j) bad.at(bad.z, i, j) = 0.3 + 0.1 * (double(i) / n);
    FloerResidual rbad = discrete_floer_residual(bad);

    rr.report["results"] = {{"residual_h", r1.max_norm},
                            {"residual_h_half", r2.max_norm},
                            {"observed_order", order},
                            {"flat_cylinder_residual", rflat.max_norm},
                            {"minimum_principle",
                             {{"applicable", mp.applicable},
                              {"holds", mp.holds},
                              {"constant_branch", mp.constant_branch}}},
                            {"negative_control_residual", rbad.max_norm}};
    rr.files["grids/residual.csv"] = residual_csv(r1);
    if (!(r1.max_norm < 1e-6 && order >= 1.8 && rbad.max_norm > 1e-2)) rr.exit_code = 3;
}

void cmd_singularize(const Scenario& sc, RunResult& rr) {
    int order = sc.options.value("order", 1);
    double eps = sc.options.value("epsilon", 0.4);
    double T = sc.options.value("theta_period", kTwoPi);

    SmoothCollarModel curve;
    curve.id = "c";
    curve.theta_period = T;
    curve.epsilon = eps;
    curve.w_coeffs = {TrigPoly::constant(1.0, T)};
    curve.neg_component = "B";
    curve.pos_component = "A";
    curve.hamiltonian_near_curve = [](double z) { return z; };
    SurfaceComponent a, b;
    a.id = "A";
    a.boundary = {{"c", Side::pos}};
    b.id = "B";
    b.boundary = {{"c", Side::neg}};

    SingularizedSurface sing = singularize_surface({curve}, {a, b}, order);
    const CriticalCircle& circle = sing.surface.circles[0];
    const PiecewiseSmoothFn& sfn = sing.s_fn.at("c");

    // b-field vs the original smooth field (0, 1/W) over the full smooth collar
    double w = 1.0;
    double worst_sing = 0.0;
    for (int i = 0; i <= 400; ++i) {
        double z = -0.999 * eps + 1.998 * eps * double(i) / 400.0;
        if (std::abs(z) < 1e-3 * eps) continue;
        // omega = s'(z) W dz^dtheta, H = s(z): theta-dot = s'/(s' W)
        double td = sfn.deriv(z) / (sfn.deriv(z) * w);
        worst_sing = std::max(worst_sing, std::abs(td - 1.0 / w));
    }

    // round trip: desingularize the singularized structure again
    DesingularizedHamiltonian d =
        desingularize_hamiltonian_unimodular(sing.hamiltonian, sing.surface, true);
    FieldAgreement fa =
        verify_field_agreement(circle, sing.hamiltonian.k("c"), TimeSpaceProfile{},
                               d.collar_fn.at("c"));

    double tol = sc.options.value("roundtrip_tol", 1e-8);
    rr.report["results"] = {{"order", order},
                            {"circle_epsilon", circle.epsilon},
                            {"singularized_field_deviation", worst_sing},
                            {"roundtrip_field_deviation", fa.max_deviation},
                            {"s_derivative_min",
                             sfn.min_abs_derivative(-0.999 * eps, 0.999 * eps)}};
    if (worst_sing > tol || fa.max_deviation > tol) rr.exit_code = 3;
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
    RunResult rr;
    rr.report["command"] = sc.command;
    rr.report["inputs_digest"] = fnv1a_digest(sc.raw.dump());
    try {
        if (sc.command == "analyze-graph")
            cmd_analyze_graph(sc, rr);
        else if (sc.command == "check-admissible")
            cmd_check_admissible(sc, rr);
        else if (sc.command == "find-orbits")
            cmd_find_orbits(sc, rr);
        else if (sc.command == "desingularize")
            cmd_desingularize(sc, rr);
        else if (sc.command == "construct-optimal")
            cmd_construct_optimal(sc, rr, nullptr);
        else if (sc.command == "verify-bound")
            cmd_verify_bound(sc, rr);
        else if (sc.command == "floer-residual")
            cmd_floer_residual(sc, rr);
        else if (sc.command == "singularize")
            cmd_singularize(sc, rr);
        else
            throw std::invalid_argument("unknown command: " + sc.command);
    } catch (const std::invalid_argument& e) {
        rr.exit_code = 2;
        rr.report["error"] = {{"kind", "validation"}, {"message", e.what()}};
    } catch (const std::exception& e) {
        rr.exit_code = 2;
        rr.report["error"] = {{"kind", "runtime"}, {"message", e.what()}};
    }
    rr.report["exit_code"] = rr.exit_code;
    return rr;
}

void write_outputs(const RunResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream out(fs::path(out_dir) / "report.json");
        out << result.report.dump(2) << "\n";
    }
    for (const auto& [rel, contents] : result.files) {
        fs::path p = fs::path(out_dir) / rel;
        fs::create_directories(p.parent_path().empty() ? fs::path(out_dir) : p.parent_path());
        std::ofstream out(p);
        out << contents;
    }
}

}  // namespace bsing
