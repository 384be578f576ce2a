#include "doctest.h"

#include "dmtopo/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace dmtopo;

namespace {

int run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"dmtopo"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("dmtopo_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("load_config defaults, file, and overrides") {
    const auto cfg = cli::load_config("", {});
    CHECK(cfg.u == 0.6);
    CHECK(cfg.n_k == 256);

    const fs::path dir = fresh_dir("config");
    fs::create_directories(dir);
    std::ofstream(dir / "c.json") << R"({"model": {"u": 1.3}, "grid": {"n_k": 64}})";
    const auto cfg2 = cli::load_config((dir / "c.json").string(), {"model.w=0.25"});
    CHECK(cfg2.u == 1.3);
    CHECK(cfg2.n_k == 64);
    CHECK(cfg2.w == 0.25);
    CHECK(cfg2.lambda == 1.0);  // untouched default

    CHECK_THROWS_AS((void)cli::load_config((dir / "missing.json").string(), {}),
                    ConfigError);
    CHECK_THROWS_AS((void)cli::load_config("", {"model.u"}), ConfigError);
    CHECK_THROWS_AS((void)cli::load_config("", {"grid.n_k=4"}), ConfigError);
    CHECK_THROWS_AS((void)cli::load_config("", {"output.format=xml"}), ConfigError);
}

TEST_CASE("config hash is stable under key order and sensitive to values") {
    const auto base = cli::load_config("", {});
    const auto same = cli::load_config("", {});
    const auto other = cli::load_config("", {"model.u=0.7"});
    CHECK(cli::config_hash(base) == cli::config_hash(same));
    CHECK(cli::config_hash(base) != cli::config_hash(other));
}

TEST_CASE("spectrum subcommand writes a labeled CSV") {
    const fs::path dir = fresh_dir("spectrum");
    CHECK(run_cli({"spectrum", "--out", dir.string(), "--grid.n_k=16"}) == cli::kExitOk);
    const std::string csv = slurp(dir / "spectrum.csv");
    CHECK(csv.rfind("# dmtopo 0.1.0 config_hash=", 0) == 0);
    CHECK(csv.find("k,re_eps_plus,im_eps_plus,re_eps_minus,im_eps_minus,pt_label") !=
          std::string::npos);
    CHECK(csv.find("Unbroken") != std::string::npos);
    // u=0.6, w=0 flat band: every k-sector is unbroken
    CHECK(csv.find("ExceptionalPoint") == std::string::npos);
    CHECK(csv.find(",Broken") == std::string::npos);
}

TEST_CASE("spectrum output is byte-identical across runs") {
    const fs::path dir = fresh_dir("determinism");
    REQUIRE(run_cli({"spectrum", "--out", dir.string(), "--grid.n_k=32"}) == cli::kExitOk);
    const std::string first = slurp(dir / "spectrum.csv");
    REQUIRE(run_cli({"spectrum", "--out", dir.string(), "--grid.n_k=32"}) == cli::kExitOk);
    CHECK(slurp(dir / "spectrum.csv") == first);
}

TEST_CASE("trace subcommand emits winding trace and transitions") {
    const fs::path dir = fresh_dir("trace");
    CHECK(run_cli({"trace", "--out", dir.string(), "--grid.n_k=64",
                   "--grid.n_samples=200"}) == cli::kExitOk);
    const std::string csv = slurp(dir / "trace.csv");
    CHECK(csv.find("t,nu,min_planar_amplitude,total_occupation") != std::string::npos);
    const auto doc = nlohmann::json::parse(slurp(dir / "transitions.json"));
    REQUIRE(doc["transitions"].is_array());
    CHECK(doc["transitions"].size() == 1);  // single flat-band transition at u=0.6
    CHECK(doc["version"] == "0.1.0");
}

TEST_CASE("phase-diagram subcommand writes grid rows plus metadata") {
    const fs::path dir = fresh_dir("phase");
    CHECK(run_cli({"phase-diagram", "--out", dir.string(), "--grid.n_k=32",
                   "--grid.n_samples=100", "--sweep.u_resolution=3",
                   "--sweep.w_resolution=2", "--sweep.u_max=2.5",
                   "--sweep.w_max=0.4"}) == cli::kExitOk);
    const std::string csv = slurp(dir / "phase_diagram.csv");
    CHECK(csv.find("u,w,pt_part,region,n_transitions,first_transition_time") !=
          std::string::npos);
    CHECK(csv.find("FullyUnbroken") != std::string::npos);
    CHECK(csv.find("FullyBroken") != std::string::npos);
    const auto meta = nlohmann::json::parse(slurp(dir / "phase_diagram_meta.json"));
    CHECK(meta["n_k"] == 32);
    CHECK(meta["lambda"] == 1.0);
}

TEST_CASE("validate passes on a healthy configuration") {
    const fs::path dir = fresh_dir("validate_ok");
    CHECK(run_cli({"validate", "--out", dir.string(), "--grid.n_k=32",
                   "--model.u=0.6", "--model.w=0.2"}) == cli::kExitOk);
    const auto rep = nlohmann::json::parse(slurp(dir / "validate.json"));
    CHECK(rep["status"] == "pass");
    CHECK(rep["propagator_vs_spectral"].get<double>() < 1e-6);
    CHECK(rep["propagator_vs_ode"].get<double>() < 1e-6);
    CHECK(rep["kspace_vs_realspace"].get<double>() < 1e-6);
    CHECK(rep["ck_round_trip"].get<double>() < 1e-6);
}

TEST_CASE("validate skips the spectral engine at an exceptional point") {
    const fs::path dir = fresh_dir("validate_ep");
    CHECK(run_cli({"validate", "--out", dir.string(), "--grid.n_k=32",
                   "--model.u=1.0", "--model.w=0.0"}) == cli::kExitOk);
    const auto rep = nlohmann::json::parse(slurp(dir / "validate.json"));
    CHECK(rep["status"] == "pass");
    CHECK(rep["propagator_vs_spectral"] == "skipped: defective");
}

TEST_CASE("validate reports unphysical states with exit code 3") {
    const fs::path dir = fresh_dir("validate_bad");
    CHECK(run_cli({"validate", "--out", dir.string(), "--grid.n_k=32",
                   "--initial.occupation_override=1.5"}) == cli::kExitValidationFailure);
    const auto rep = nlohmann::json::parse(slurp(dir / "validate.json"));
    CHECK(rep["status"] == "fail");
    REQUIRE(rep.contains("error"));
    CHECK(rep["error"].get<std::string>().find("outside (0,1)") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
    CHECK(run_cli({"unknown-subcommand"}) == cli::kExitConfigError);
    CHECK(run_cli({"spectrum", "--config", "/nonexistent/file.json"}) ==
          cli::kExitConfigError);
    CHECK(run_cli({"spectrum", "--grid.n_k=notanumber"}) == cli::kExitConfigError);
    CHECK(run_cli({"spectrum", "--bogus-flag"}) == cli::kExitConfigError);
}
