#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "jscatter/cli.hpp"

using namespace jscatter;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_config(json energy = {{"sigma", {3.0}}}) {
  return {{"physical", {{"ell", 1}, {"A", 3.0}, {"lambda", 1.0}}},
          {"regularization", {{"r0", 1.0}, {"A0", 1.0}}},
          {"energy", energy},
          {"basis", {{"N", 120}}},
          {"potential", {{"kind", "none"}}}};
}

struct Sandbox {
  fs::path root;
  Sandbox() {
    root = fs::temp_directory_path() / ("jscatter_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Sandbox() { fs::remove_all(root); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string write(const json& j, const std::string& name = "config.json") const {
    std::ofstream(root / name) << j.dump(2);
    return (root / name).string();
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& cmd, const std::string& cfg, const fs::path& out, int jobs = 2) {
  std::ostringstream log;
  cli::RunOptions opt;
  opt.jobs = jobs;
  opt.out_dir = out.string();
  return cli::run(cmd, cfg, opt, log);
}

std::vector<std::string> csv_files(const fs::path& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".csv") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = cli::parse_config(base_config({{"sigma_min", 1.0}, {"sigma_max", 2.0}, {"count", 5}}));
  REQUIRE(c.sigma.size() == 5);
  CHECK(c.sigma[4] == 2.0);
  CHECK(c.sigma[1] == doctest::Approx(1.25));
  CHECK(c.precision == 17);
  CHECK(cli::parse_config(base_config({{"sigma_min", 1.0}, {"sigma_max", 2.0}, {"count", 0}})).sigma.empty());

  json both = base_config({{"sigma", {1.0}}, {"count", 3}});
  CHECK_THROWS_AS(cli::parse_config(both), ConfigError);
  json typo = base_config();
  typo["physical"]["ell_"] = 1;
  CHECK_THROWS_AS(cli::parse_config(typo), ConfigError);
  json neg = base_config({{"sigma", {-1.0}}});
  CHECK_THROWS_AS(cli::parse_config(neg), ConfigError);
  json missing = base_config();
  missing.erase("energy");
  CHECK_THROWS_AS(cli::parse_config(missing), ConfigError);
}

TEST_CASE("number formatting and CSV writer") {
  CHECK(cli::format_number(0.1, 17) == "0.10000000000000001");
  CHECK(cli::format_number(-0.0, 17) == "0");
  CHECK(std::stod(cli::format_number(1.0 / 3.0, 17)) == 1.0 / 3.0);
  cli::CsvWriter w({"a", "b"}, 17);
  w.cell(1).cell(0.5).end_row();
  CHECK(w.str() == "a,b\n1,0.5\n");
  w.cell(1);
  CHECK_THROWS_AS(w.end_row(), IoError);
}

TEST_CASE("validate exit codes") {
  Sandbox sb;
  CHECK(run("validate", sb.write(base_config()), sb.root / "ok") == cli::ok);
  CHECK(fs::exists(sb.root / "ok" / "manifest.json"));
  json bad = base_config();
  bad["physical"]["A"] = 2.0;
  CHECK(run("validate", sb.write(bad), sb.root / "bad") == cli::config_error);
  const json man = json::parse(slurp(sb.root / "bad" / "manifest.json"));
  CHECK(man["error"]["kind"] == "SupercriticalityError");
  CHECK(run("validate", (sb.root / "nope.json").string(), sb.root / "x") == cli::config_error);
  std::ofstream(sb.root / "broken.json") << "{ not json";
  CHECK(run("validate", (sb.root / "broken.json").string(), sb.root / "y") == cli::config_error);
  CHECK(run("frobnicate", sb.write(base_config()), sb.root / "z") == cli::config_error);
}

TEST_CASE("empty sweep writes a header-only CSV") {
  Sandbox sb;
  const auto cfg = sb.write(base_config({{"sigma_min", 1.0}, {"sigma_max", 2.0}, {"count", 0}}));
  CHECK(run("smatrix", cfg, sb.root / "o") == cli::ok);
  CHECK(slurp(sb.root / "o" / "smatrix.csv") ==
        "sigma,E,re_S,im_S,abs_S,delta,delta_unwrapped,G_phase,N,cond_estimate\n");
}

TEST_CASE("sweep output is deterministic and independent of --jobs") {
  Sandbox sb;
  json cfg = base_config({{"sigma_min", 1.0}, {"sigma_max", 3.0}, {"count", 9}});
  cfg["potential"] = {{"kind", "exponential"}, {"V0", 2.0}, {"a", 1.0}};
  const auto path = sb.write(cfg);
  REQUIRE(run("smatrix", path, sb.root / "a", 1) == cli::ok);
  REQUIRE(run("smatrix", path, sb.root / "b", 4) == cli::ok);
  REQUIRE(run("smatrix", path, sb.root / "c", 4) == cli::ok);
  const std::string a = slurp(sb.root / "a" / "smatrix.csv");
  CHECK(a == slurp(sb.root / "b" / "smatrix.csv"));
  CHECK(a == slurp(sb.root / "c" / "smatrix.csv"));
  CHECK(std::count(a.begin(), a.end(), '\n') == 10);
  const json man = json::parse(slurp(sb.root / "a" / "manifest.json"));
  CHECK(man["status"] == "ok");
  CHECK(man["config"] == cfg);
  CHECK(man.contains("wall_time_seconds"));
  CHECK(man.contains("version"));
  CHECK(man["warnings"].is_array());
  // lambda r0 = 1 is outside the small-radius regime and must be reported.
  CHECK(!man["warnings"].empty());
}

TEST_CASE("wavefunction run writes four CSV files") {
  Sandbox sb;
  json cfg = base_config();
  cfg["basis"]["N"] = 1000;
  REQUIRE(run("wavefunction", sb.write(cfg), sb.root / "w") == cli::ok);
  const auto files = csv_files(sb.root / "w");
  CHECK(files.size() == 4);
  const std::string s = slurp(sb.root / "w" / "wavefunction_sine_N1000_s0.csv");
  CHECK(s.rfind("r,psi_reference,psi_jmatrix,abs_error\n", 0) == 0);
}

TEST_CASE("reference and convergence commands") {
  Sandbox sb;
  json cfg = base_config({{"sigma", {1.0, 3.0}}});
  cfg["convergence"] = {{"N_values", {100, 1000}}, {"window", {0.1, 30.0}}};
  const auto path = sb.write(cfg);
  REQUIRE(run("reference", path, sb.root / "r") == cli::ok);
  CHECK(fs::exists(sb.root / "r" / "reference.csv"));
  CHECK(fs::exists(sb.root / "r" / "reference_curves_s1.csv"));
  REQUIRE(run("convergence", path, sb.root / "c") == cli::ok);
  const std::string c = slurp(sb.root / "c" / "convergence.csv");
  CHECK(c.rfind("sigma,kind,region,N,max_error,monotone_decreasing\n", 0) == 0);
  CHECK(std::count(c.begin(), c.end(), '\n') == 1 + 2 * 2 * 3 * 2);
}

TEST_CASE("oracle-check passes on the baseline configuration without a potential") {
  Sandbox sb;
  REQUIRE(run("oracle-check", sb.write(base_config()), sb.root / "o") == cli::ok);
  const std::string c = slurp(sb.root / "o" / "oracle_check.csv");
  CHECK(c.rfind("case_id,primary,oracle,abs_diff,rel_diff,tolerance,pass\n", 0) == 0);
  CHECK(c.find(",false\n") == std::string::npos);
}

TEST_CASE("the executable maps errors to exit codes") {
  Sandbox sb;
  auto code = [&](const std::string& args) {
    const int rc = std::system((std::string(JSCATTER_CLI_PATH) + " " + args + " 2>/dev/null").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };
  const auto good = sb.write(base_config());
  CHECK(code("validate --config " + good + " --out " + (sb.root / "e").string()) == 0);
  json bad = base_config();
  bad["physical"]["A"] = 2.0;
  CHECK(code("validate --config " + sb.write(bad, "bad.json") + " --out " + (sb.root / "f").string()) == 2);
  CHECK(code("validate") == 2);
  CHECK(code("nonsense --config " + good) == 2);
}
