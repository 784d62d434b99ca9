#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const std::string cli = RESIDUA_CLI_PATH;

int run(const std::string& args) {
  const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / "residua_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("noether subcommand on the shift") {
  auto out = temp_dir() / "noether.json";
  REQUIRE(run("noether --u \"exp(i t)\" --truncation 96 --out " + out.string()) == 0);
  const auto rep = json::parse(slurp(out));
  CHECK(rep["kernel_count_index"] == -1);
  CHECK(rep["winding"] == 1);
  CHECK(std::abs(rep["symbolic"]["value"][0].get<double>() + 1.0) < 1e-6);
  CHECK(std::abs(rep["spectral"]["value"][0].get<double>() + 1.0) < 1e-6);
  CHECK(rep["within_tolerance"] == true);
  CHECK(rep["config"]["seed"] == 1);
}

TEST_CASE("noether on a constant and on a vanishing function") {
  auto out = temp_dir() / "noether1.json";
  REQUIRE(run("noether --u \"1\" --truncation 96 --out " + out.string()) == 0);
  CHECK(json::parse(slurp(out))["kernel_count_index"] == 0);
  // cos(t) vanishes on the circle: input validation error
  CHECK(run("noether --u \"cos(t)\" --truncation 96") == 2);
}

TEST_CASE("deterministic byte-identical reports") {
  auto out1 = temp_dir() / "det1.json";
  auto out2 = temp_dir() / "det2.json";
  const std::string args = "noether --u \"(2 + exp(i t)) * exp(-1 i t)\" --truncation 96 --seed 7";
  REQUIRE(run(args + " --out " + out1.string()) == 0);
  REQUIRE(run(args + " --out " + out2.string()) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(!slurp(out1).empty());
}

TEST_CASE("cone traces pole diagram") {
  auto cfg = temp_dir() / "cone.json";
  {
    std::ofstream out(cfg);
    out << R"({"m":2,"p":0,"n":2,"tr_partial_sigma":{"4":[4.0,0.0]}})";
  }
  auto csv_path = temp_dir() / "poles.csv";
  REQUIRE(run("cone-traces --config " + cfg.string() + " --format csv --out " +
              csv_path.string()) == 0);
  const std::string csv = slurp(csv_path);
  CHECK(csv.find("re_z,order,abs_leading") == 0);
  CHECK(csv.find("0,2,") != std::string::npos);  // double pole at z = 0

  // empty spec: header only, still a pass
  auto empty_cfg = temp_dir() / "empty.json";
  {
    std::ofstream out(empty_cfg);
    out << R"({"m":2,"p":0,"n":2})";
  }
  auto empty_csv = temp_dir() / "empty.csv";
  REQUIRE(run("cone-traces --config " + empty_cfg.string() + " --format csv --out " +
              empty_csv.string()) == 0);
  CHECK(slurp(empty_csv) == "re_z,order,abs_leading\n");

  // malformed JSON: input error with a position-annotated message
  auto bad_cfg = temp_dir() / "bad.json";
  {
    std::ofstream out(bad_cfg);
    out << "{\"m\": 2,,}";
  }
  CHECK(run("cone-traces --config " + bad_cfg.string()) == 2);
}

TEST_CASE("heat fit subcommand") {
  // synthesize 1.5 t^{-1} log t + 0.25 on a log grid
  auto samples = temp_dir() / "samples.csv";
  {
    std::ofstream out(samples);
    out << "t,value\n";
    for (int i = 0; i < 40; ++i) {
      const double t = 1e-3 * std::pow(1e3, i / 39.0);
      out.precision(17);
      out << t << "," << (1.5 * std::log(t) / t + 0.25) << "\n";
    }
  }
  auto cfg = temp_dir() / "fitspec.json";
  {
    std::ofstream out(cfg);
    out << R"({"terms":[{"alpha":-1.0,"logpow":1},{"alpha":0.0,"logpow":0}]})";
  }
  auto out_path = temp_dir() / "fit.json";
  REQUIRE(run("heat-fit --samples " + samples.string() + " --config " + cfg.string() +
              " --out " + out_path.string()) == 0);
  const auto rep = json::parse(slurp(out_path));
  CHECK(std::abs(rep["coefficients"][0]["coeff"][0].get<double>() - 1.5) < 1e-8);
  CHECK(std::abs(rep["coefficients"][1]["coeff"][0].get<double>() - 0.25) < 1e-8);

  // constant samples against a constant-only spec: zero residual
  auto flat = temp_dir() / "flat.csv";
  {
    std::ofstream out(flat);
    out << "t,value\n0.1,2.0\n0.2,2.0\n0.4,2.0\n0.8,2.0\n";
  }
  auto cfg_const = temp_dir() / "fitconst.json";
  {
    std::ofstream out(cfg_const);
    out << R"({"terms":[{"alpha":0.0,"logpow":0}]})";
  }
  auto out_flat = temp_dir() / "fitflat.json";
  REQUIRE(run("heat-fit --samples " + flat.string() + " --config " + cfg_const.string() +
              " --out " + out_flat.string()) == 0);
  const auto rep_flat = json::parse(slurp(out_flat));
  CHECK(std::abs(rep_flat["coefficients"][0]["coeff"][0].get<double>() - 2.0) < 1e-12);
  CHECK(rep_flat["residual_norm"].get<double>() < 1e-12);

  // duplicate exponents are a precondition violation
  auto cfg_dup = temp_dir() / "fitdup.json";
  {
    std::ofstream out(cfg_dup);
    out << R"({"terms":[{"alpha":0.0,"logpow":0},{"alpha":0.0,"logpow":0}]})";
  }
  CHECK(run("heat-fit --samples " + flat.string() + " --config " + cfg_dup.string()) == 2);
}

TEST_CASE("b-residue subcommand reproduces the worked value") {
  auto cfg = temp_dir() / "density.json";
  {
    std::ofstream out(cfg);
    out << R"({"p":2,"coeffs":[
      {"k":0,"trig":{"0":[1.0,0.0]}},
      {"k":1,"trig":{"0":[1.0,0.0]}},
      {"k":2,"trig":{"0":[3.0,0.0],"1":[0.5,0.0],"-1":[0.5,0.0]}}],
      "remainder":"none"})";
  }
  auto out_path = temp_dir() / "bres.json";
  REQUIRE(run("b-residue --config " + cfg.string() + " --tolerance 1e-8 --out " +
              out_path.string()) == 0);
  const auto rep = json::parse(slurp(out_path));
  CHECK(std::abs(rep["residue_boundary_formula"][0].get<double>() - 6.0 * 3.14159265358979324) <
        1e-9);
  CHECK(rep["agree"] == true);
}

TEST_CASE("radul and cm-check subcommands") {
  auto out_path = temp_dir() / "radul.json";
  REQUIRE(run("radul --u \"exp(i t)\" --out " + out_path.string()) == 0);
  const auto rep = json::parse(slurp(out_path));
  CHECK(std::abs(rep["report"]["value"][0].get<double>() + 1.0) < 1e-8);
  CHECK(rep["winding"] == 1);

  auto cm_out = temp_dir() / "cm.json";
  REQUIRE(run("cm-check --u \"1 + 0.3*exp(i t)\" --truncation 64 --n-max 3 --out " +
              cm_out.string()) == 0);
  const auto cm = json::parse(slurp(cm_out));
  CHECK(cm["remainder_at_z0_exactly_zero"] == true);
  CHECK(cm["order_drops_per_step"] == true);
}

TEST_CASE("zeta subcommand") {
  auto out_path = temp_dir() / "zeta.json";
  REQUIRE(run("zeta --u \"exp(i t)\" --out " + out_path.string()) == 0);
  const auto rep = json::parse(slurp(out_path));
  // Toeplitz symbol of a nonvanishing u: pole at z = 1 from the order-0 part
  CHECK(rep["poles"].size() == 1);
  CHECK(rep["poles"][0]["z"] == 1.0);
  CHECK(rep["poles"][0]["order"] == 1);
}
