#pragma once

#include <map>
#include <string>

#include "bsing/json_io.hpp"

namespace bsing {

/// One experiment: a surface, a Hamiltonian, a command and numeric options,
/// normally loaded from a single JSON file (possibly referencing a builtin).
struct Scenario {
    std::string command;
    BSurface surface;
    AdmissibleHamiltonian hamiltonian;
    json options = json::object();
    json raw;  // resolved config, for the report digest
};

/// Full config for a named builtin model; throws std::invalid_argument on an
/// unknown name. Available: sphere_equator, btorus, two_annuli_torus, g1d1,
/// g1d2, star3 (parameters live under "builtin_options").
json builtin_scenario(const std::string& name, const json& params = json::object());

/// Resolve "builtin" references, parse surface + Hamiltonian, validate the
/// command. Throws std::invalid_argument on malformed configs.
Scenario scenario_from_json(json config);

/// Apply one --set override "dotted.path=value"; the value is parsed as JSON
/// when possible, kept as a string otherwise.
void apply_override(json& config, const std::string& assignment);

struct RunResult {
    int exit_code = 0;  // 0 success, 2 validation error, 3 verification failure
    json report;
    std::map<std::string, std::string> files;  // relative path -> contents (CSV)
};

/// Execute the scenario command; never throws for anticipated failures (they
/// are encoded in exit_code + report diagnostics).
RunResult run_scenario(const Scenario& sc);

/// Write report.json and the auxiliary files under out_dir.
void write_outputs(const RunResult& result, const std::string& out_dir);

}  // namespace bsing
