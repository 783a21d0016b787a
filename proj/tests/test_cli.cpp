#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kBin = HALO_CLI_BIN;
const std::string kConfigDir = HALO_CONFIG_DIR;

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "halo_cli_tests";
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  const std::string cmd = kBin + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path write_scratch(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream os(p, std::ios::binary);
  os << content;
  return p;
}

}  // namespace

TEST_CASE("shipped configs all run clean", "[cli]") {
  const std::pair<const char*, const char*> jobs[] = {{"eval", "eval.json"},
                                                      {"norm", "norm.json"},
                                                      {"verify-atoms", "verify_atoms.json"},
                                                      {"doubling", "doubling.json"},
                                                      {"weil", "weil.json"}};
  for (const auto& [sub, file] : jobs) {
    const fs::path out = scratch_dir() / (std::string("shipped_") + sub + ".json");
    INFO(sub << " with " << file);
    const int rc = run_cli(std::string(sub) + " --config " + kConfigDir + "/" + file +
                           " --out " + out.string());
    REQUIRE(rc == 0);
    const std::string text = slurp(out);
    REQUIRE(!text.empty());
    REQUIRE(text.find("\"schema\": 1") != std::string::npos);
    if (std::string(sub) == "doubling")  // shipped config includes the growth sweep
      REQUIRE(text.find("\"growth\"") != std::string::npos);
  }
}

TEST_CASE("reruns are byte-identical", "[cli]") {
  const fs::path a = scratch_dir() / "rerun_a.json";
  const fs::path b = scratch_dir() / "rerun_b.json";
  for (const char* sub_file : {"eval", "doubling"}) {
    const std::string base = std::string(sub_file) + " --config " + kConfigDir + "/" +
                             (std::string(sub_file) == "eval" ? "eval.json" : "doubling.json");
    REQUIRE(run_cli(base + " --out " + a.string()) == 0);
    REQUIRE(run_cli(base + " --out " + b.string()) == 0);
    INFO(sub_file);
    REQUIRE(slurp(a) == slurp(b));
  }
}

TEST_CASE("seed and node overrides change the numbers", "[cli]") {
  const fs::path a = scratch_dir() / "ovr_a.json";
  const fs::path b = scratch_dir() / "ovr_b.json";

  const std::string doubling =
      "doubling --config " + kConfigDir + "/doubling.json --out ";
  REQUIRE(run_cli(doubling + a.string() + " --seed 123") == 0);
  REQUIRE(run_cli(doubling + b.string() + " --seed 456") == 0);
  REQUIRE(slurp(a) != slurp(b));

  const std::string eval = "eval --config " + kConfigDir + "/eval.json --out ";
  REQUIRE(run_cli(eval + a.string()) == 0);
  REQUIRE(run_cli(eval + b.string() + " --nodes 64") == 0);
  REQUIRE(slurp(a) != slurp(b));
}

TEST_CASE("csv output has the advertised header", "[cli]") {
  const fs::path out = scratch_dir() / "fmt.csv";
  REQUIRE(run_cli("eval --config " + kConfigDir + "/eval.json --format csv --out " +
                  out.string()) == 0);
  REQUIRE(slurp(out).rfind("x,y,value\n", 0) == 0);

  REQUIRE(run_cli("norm --config " + kConfigDir + "/norm.json --format csv --out " +
                  out.string()) == 0);
  REQUIRE(slurp(out).rfind("p,f_norm,hf_norm,kernel_l1,bound,ratio,pass\n", 0) == 0);
}

TEST_CASE("bad usage and bad configs exit 2", "[cli]") {
  REQUIRE(run_cli("") == 2);                                    // missing subcommand
  REQUIRE(run_cli("eval") == 2);                                // missing --config
  REQUIRE(run_cli("eval --config /nonexistent.json") == 2);     // missing file
  REQUIRE(run_cli("eval --config " + kConfigDir + "/eval.json --format yaml") == 2);

  const fs::path broken = write_scratch("broken.json", "{ this is not json");
  REQUIRE(run_cli("eval --config " + broken.string()) == 2);

  const fs::path schema2 = write_scratch("schema2.json", R"({"schema": 2})");
  REQUIRE(run_cli("eval --config " + schema2.string()) == 2);

  const fs::path missing_key = write_scratch("missing_key.json", R"({"schema": 1})");
  REQUIRE(run_cli("eval --config " + missing_key.string()) == 2);

  const fs::path bad_field = write_scratch("bad_field.json", R"({
    "schema": 1,
    "kernel": {"density": {"kind": "uniform", "mass": 1.0}},
    "field": {"type": "smooth_blob", "radius": 1.0},
    "points": [[0.0, 1.0]]
  })");
  REQUIRE(run_cli("eval --config " + bad_field.string()) == 2);

  const fs::path bad_growth = write_scratch("bad_growth.json", R"({
    "schema": 1,
    "radii": [1.0],
    "growth": {"tau": 0.5, "b_values": [1.0]}
  })");
  REQUIRE(run_cli("doubling --config " + bad_growth.string()) == 2);
}

TEST_CASE("a decomposition that fails its checks exits 1", "[cli]") {
  const fs::path cfg = write_scratch("failing_atoms.json", R"({
    "schema": 1,
    "hardy": {"b": 1.0},
    "decomposition": {"terms": [{
      "coef": 1.0,
      "atom": {
        "center": [0.0, 1.0],
        "radius": 0.8,
        "pieces": [{"r_in": 0.0, "r_out": 0.4, "value": 0.01},
                   {"r_in": 0.4, "r_out": 0.8, "value": 0.01}]
      }
    }]}
  })");
  const fs::path out = scratch_dir() / "failing_atoms_out.json";
  REQUIRE(run_cli("verify-atoms --config " + cfg.string() + " --out " + out.string()) == 1);
  const std::string text = slurp(out);
  REQUIRE(text.find("\"all_pass\": false") != std::string::npos);
  REQUIRE(text.find("\"mean_ok\": false") != std::string::npos);
}
