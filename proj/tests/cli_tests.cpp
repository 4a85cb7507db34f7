#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(BSING_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir(const char* tag) {
        path = fs::temp_directory_path() / (std::string("bsing_cli_") + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("list-builtins succeeds") { CHECK(run_cli("list-builtins") == 0); }

TEST_CASE("verify-bound on the builtin equator model writes a passing report") {
    TempDir dir("verify");
    int rc = run_cli("run --builtin sphere_equator --set command=verify-bound --out " +
                     dir.path.string());
    CHECK(rc == 0);

    fs::path report = dir.path / "report.json";
    REQUIRE(fs::exists(report));
    nlohmann::json j = nlohmann::json::parse(slurp(report));
    CHECK(j["exit_code"] == 0);
    CHECK(j["command"] == "verify-bound");
    CHECK(j["results"]["bound"] == 2);
    CHECK(j["results"]["found"] == 2);
    CHECK(fs::exists(dir.path / "orbits.csv"));
}

TEST_CASE("reports are byte-identical across runs") {
    TempDir d1("rep1"), d2("rep2");
    std::string args = "run --builtin g1d1 --set command=verify-bound --out ";
    REQUIRE(run_cli(args + d1.path.string()) == 0);
    REQUIRE(run_cli(args + d2.path.string()) == 0);
    CHECK(slurp(d1.path / "report.json") == slurp(d2.path / "report.json"));
    CHECK(slurp(d1.path / "orbits.csv") == slurp(d2.path / "orbits.csv"));
}

TEST_CASE("malformed scenario file exits with the validation code") {
    TempDir dir("bad");
    fs::path bad = dir.path / "broken.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run_cli("run --scenario " + bad.string()) == 2);
}

TEST_CASE("inadmissible Hamiltonian exits with the verification code") {
    TempDir dir("degen");
    int rc = run_cli(
        "run --builtin sphere_equator --set command=check-admissible "
        "--set hamiltonian.circles.c.k=6.283185307179586 --out " +
        dir.path.string());
    CHECK(rc == 3);
    nlohmann::json j = nlohmann::json::parse(slurp(dir.path / "report.json"));
    CHECK(j["exit_code"] == 3);
    CHECK(j["results"]["admissible"] == false);
}

TEST_CASE("unknown command is a validation error") {
    CHECK(run_cli("run --builtin sphere_equator --set command=frobnicate") == 2);
}
