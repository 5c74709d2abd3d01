#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using namespace nevpick;
using io::Json;

namespace {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("nevpick_cli_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "nevpick");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::istringstream in(csv);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("solve writes solution and trajectory") {
  TempDir dir;
  REQUIRE(run({"solve", "--input", testing::data_path("system_identification.json"), "--output", dir / "out"}) ==
          cli::kOk);
  const Json sol = io::read_json_file(dir / "out/solution.json");
  CHECK(sol.at("max_interpolation_residual").get<double>() < 1e-10);
  CHECK(sol.at("config").at("command") == "solve");
  const auto rows = data_lines(slurp(dir / "out/trajectory.csv"));
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0].rfind("nu,", 0) == 0);
  CHECK(rows.size() - 1 == sol.at("path").at("accepted_states").get<std::size_t>());
  CHECK(rows[1].rfind("0,0,0,0,0,0,0,0,", 0) == 0);
}

TEST_CASE("solve rejects a node inside the disk") {
  TempDir dir;
  auto j = io::read_json_file(testing::data_path("system_identification.json"));
  for (auto& node : j.at("nodes")) {
    if (node.is_object() && node.value("im", 0.0) == 0.0) {
      node = Json{{"re", 0.9}, {"im", 0.0}};
      break;
    }
  }
  io::write_text_file(dir / "bad.json", j.dump());
  CHECK(run({"solve", "--input", dir / "bad.json", "--output", dir / "out"}) == cli::kInvalidInput);
  CHECK(run({"solve", "--input", dir / "missing.json", "--output", dir / "out"}) == cli::kInvalidInput);
  CHECK(run({"solve", "--input", testing::data_path("system_identification.json"), "--output", dir / "o",
             "--mu", "-1"}) == cli::kInvalidInput);
}

TEST_CASE("solve reports path failure") {
  TempDir dir;
  CHECK(run({"solve", "--input", testing::data_path("system_identification.json"), "--output", dir / "out",
             "--mu", "1e-300"}) == cli::kNumericalFailure);
}

TEST_CASE("simulate is deterministic and flat for an all-pass system") {
  TempDir dir;
  const Json allpass{{"sigma_roots", Json::array({Json{{"re", 0.4}, {"im", 0.3}}, Json{{"re", 0.4}, {"im", -0.3}}})},
                     {"a_roots", Json::array({Json{{"re", 0.4}, {"im", 0.3}}, Json{{"re", 0.4}, {"im", -0.3}}})},
                     {"order", 2}};
  io::write_text_file(dir / "system.json", allpass.dump());
  REQUIRE(run({"simulate", "--input", dir / "system.json", "--output", dir / "out_a", "--samples", "100000"}) ==
          cli::kOk);
  const Json p = io::read_json_file(dir / "out_a/problem.json");
  for (const auto& w : p.at("values")) CHECK(std::abs(io::complex_from_json(w) - 0.5) < 0.02);

  REQUIRE(run({"simulate", "--input", dir / "system.json", "--output", dir / "out_b", "--samples", "100000"}) ==
          cli::kOk);
  CHECK(slurp(dir / "out_a/problem.json").size() > 0);
  // Outputs embed the output path; compare after rewriting it.
  auto strip = [](std::string s, const std::string& from) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from)) s.replace(pos, from.size(), "OUT");
    return s;
  };
  CHECK(strip(slurp(dir / "out_a/problem.json"), dir / "out_a") == strip(slurp(dir / "out_b/problem.json"), dir / "out_b"));
  CHECK(strip(slurp(dir / "out_a/series.csv"), dir / "out_a") == strip(slurp(dir / "out_b/series.csv"), dir / "out_b"));
  // Same output directory twice: byte-identical files.
  const std::string first = slurp(dir / "out_b/series.csv");
  REQUIRE(run({"simulate", "--input", dir / "system.json", "--output", dir / "out_b", "--samples", "100000"}) ==
          cli::kOk);
  CHECK(slurp(dir / "out_b/series.csv") == first);
}

TEST_CASE("simulate output for the degree-2 system validates") {
  TempDir dir;
  REQUIRE(run({"simulate", "--input", testing::data_path("degree2_n3.json"), "--output", dir / "s"}) == cli::kOk);
  const auto problem = io::problem_from_json(io::read_json_file(dir / "s/problem.json"));
  CHECK(validate(problem).empty());
  CHECK(run({"solve", "--input", dir / "s/problem.json", "--output", dir / "t"}) == cli::kOk);

  const Json unstable{{"sigma_coeffs", {1, 0.1}}, {"a_coeffs", {1, -1.2}}, {"order", 1}};
  io::write_text_file(dir / "unstable.json", unstable.dump());
  CHECK(run({"simulate", "--input", dir / "unstable.json", "--output", dir / "u"}) == cli::kInvalidInput);
}

TEST_CASE("detect-degree") {
  TempDir dir;
  REQUIRE(run({"detect-degree", "--input", testing::data_path("degree2_n3.json"), "--output", dir / "d", "--variant",
               "exact"}) == cli::kOk);
  const Json rep = io::read_json_file(dir / "d/degree_report.json");
  CHECK(rep.at("estimated_degree") == 2);
  CHECK(rep.at("config").at("variant") == "exact");

  REQUIRE(run({"detect-degree", "--input", testing::data_path("degree2_n3.json"), "--output", dir / "m", "--runs",
               "4", "--samples", "5000", "--seed", "3"}) == cli::kOk);
  const auto rows = data_lines(slurp(dir / "m/runs.csv"));
  CHECK(rows.size() == 5);

  CHECK(run({"detect-degree", "--input", testing::data_path("degree2_n3.json"), "--output", dir / "x", "--variant",
             "bogus"}) == cli::kInvalidInput);
}

TEST_CASE("detect-degree exit code rule") {
  CHECK(cli::monte_carlo_exit_code(10, 10) == cli::kOk);
  CHECK(cli::monte_carlo_exit_code(5, 10) == cli::kOk);
  CHECK(cli::monte_carlo_exit_code(4, 10) == cli::kPartialMonteCarlo);
  CHECK(cli::monte_carlo_exit_code(1, 10) == cli::kPartialMonteCarlo);
  CHECK(cli::monte_carlo_exit_code(0, 10) == cli::kNumericalFailure);
  CHECK(cli::monte_carlo_exit_code(1, 1) == cli::kOk);
}

TEST_CASE("reduce") {
  TempDir dir;
  REQUIRE(run({"simulate", "--input", testing::data_path("degree6_system.json"), "--output", dir / "sim",
               "--variant", "exact"}) == cli::kOk);
  REQUIRE(run({"reduce", "--input", dir / "sim/problem.json", "--output", dir / "r", "--target-degree", "4"}) ==
          cli::kOk);
  const Json red = io::read_json_file(dir / "r/reduced_solution.json");
  CHECK(red.at("log_spectral_deviation").get<double>() < 0.5);
  const auto rows = data_lines(slurp(dir / "r/spectra.csv"));
  CHECK(rows.size() == 257);
  CHECK(rows[0] == "theta,phi_full,phi_reduced");

  REQUIRE(run({"reduce", "--input", dir / "sim/problem.json", "--output", dir / "same", "--target-degree", "6"}) ==
          cli::kOk);
  for (const auto& row : data_lines(slurp(dir / "same/spectra.csv"))) {
    if (row[0] == 't') continue;
    std::istringstream in(row);
    double theta, full, reduced;
    char c;
    in >> theta >> c >> full >> c >> reduced;
    CHECK(std::abs(full - reduced) < 1e-12);
  }

  CHECK(run({"reduce", "--input", dir / "sim/problem.json", "--output", dir / "split", "--target-degree", "3"}) ==
        cli::kInvalidInput);
}

TEST_CASE("usage errors") {
  CHECK(run({}) == cli::kInvalidInput);
  CHECK(run({"frobnicate"}) == cli::kInvalidInput);
  CHECK(run({"solve", "--input", "x.json"}) == cli::kInvalidInput);
  CHECK(run({"--help"}) == cli::kOk);
}
