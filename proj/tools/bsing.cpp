// bsing: scenario runner for b^m-symplectic surface dynamics.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bsing/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian dynamics on b^m-symplectic surfaces"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Execute a scenario file");
    std::string scenario_path, out_dir = ".";
    std::vector<std::string> overrides;
    std::string builtin_name;
    run->add_option("--scenario", scenario_path, "Scenario JSON file");
    run->add_option("--builtin", builtin_name, "Built-in scenario name");
    run->add_option("--set", overrides, "Override config values (dotted.path=value)");
    run->add_option("--out", out_dir, "Output directory");

    auto* list = app.add_subcommand("list-builtins", "List built-in scenarios");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const char* name :
             {"sphere_equator", "btorus", "two_annuli_torus", "g1d1", "g1d2", "star3"})
            std::cout << name << "\n";
        return 0;
    }

    bsing::json config;
    try {
        if (!builtin_name.empty()) {
            config["builtin"] = builtin_name;
        } else if (!scenario_path.empty()) {
            std::ifstream in(scenario_path);
            if (!in) {
                std::cerr << "error: cannot open scenario file " << scenario_path << "\n";
                return 2;
            }
            config = bsing::json::parse(in);
        } else {
            std::cerr << "error: need --scenario FILE or --builtin NAME\n";
            return 2;
        }
        for (const auto& ov : overrides) bsing::apply_override(config, ov);
        bsing::Scenario sc = bsing::scenario_from_json(std::move(config));
        bsing::RunResult result = bsing::run_scenario(sc);
        bsing::write_outputs(result, out_dir);
        if (result.report.contains("error"))
            std::cerr << "error: " << result.report["error"]["message"].get<std::string>()
                      << "\n";
        std::cout << result.report.dump(2) << "\n";
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
