// End-to-end tests of the command-line surface: exit codes, JSON
// contracts and determinism, exercised by spawning the real binary.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path();
  const std::string tag = std::to_string(::getpid()) + "_" + std::to_string(counter++);
  const fs::path out_path = dir / ("fano_cli_" + tag + ".out");
  const fs::path err_path = dir / ("fano_cli_" + tag + ".err");
  const std::string cmd = std::string(FANO_CLI_PATH) + " " + args + " >" + out_path.string() +
                          " 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  fs::remove(out_path);
  fs::remove(err_path);
  return result;
}

fs::path write_instance(const std::string& name, const std::string& content) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("classify emits the report and exit code 0") {
  const auto r = run_cli("classify --n 3 --degrees 2 --k 1 --json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("t") == 1);
  CHECK(j.at("status") == "NonemptyPositiveDim");
  CHECK(j.at("component_count") == "Two");
  CHECK(j.at("canonical_degree") == -1);
  CHECK(j.at("rationally_connected") == true);
  CHECK(j.at("scope_note") == "AllSmoothX");
  CHECK(j.at("normalized_setup").at("n") == 3);

  // Byte stability across runs.
  CHECK(run_cli("classify --n 3 --degrees 2 --k 1 --json").out == r.out);
}

TEST_CASE("classify rejects the linear case with exit 2") {
  const auto r = run_cli("classify --n 3 --degrees 1,1,1 --k 1");
  CHECK(r.code == 2);
  CHECK(r.err.find("linear") != std::string::npos);
}

TEST_CASE("classify reports empty quadric ranges") {
  const auto r = run_cli("classify --n 4 --degrees 2 --k 2 --json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("status") == "EmptyForAllSmooth");
  CHECK(j.at("canonical_degree").is_null());
}

TEST_CASE("certify follows the exit-code contract") {
  CHECK(run_cli("certify --n 7 --degrees 5 --k 1").code == 0);
  CHECK(run_cli("certify --n 8 --degrees 5 --k 1").code == 3);
  CHECK(run_cli("certify --n 5 --degrees 2 --k 1").code == 2);  // quadric excluded
  CHECK(run_cli("certify --n 3 --degrees 1,1,1 --k 1").code == 2);
}

TEST_CASE("enumerate writes the point set and a consistency summary") {
  const auto path = write_instance("fermat_cubic_7.json",
                                   R"({"p": 7, "n": 3, "polys": ["x0^3+x1^3+x2^3+x3^3"]})");
  const fs::path out = fs::temp_directory_path() / "fermat_cubic_7_lines.json";
  const auto r =
      run_cli("enumerate --input " + path.string() + " --k 1 --out " + out.string());
  REQUIRE(r.code == 0);
  const json j = json::parse(slurp(out));
  CHECK(j.at("count") == 27);
  CHECK(j.at("planes").size() == 27);
  CHECK(r.out.find("27") != std::string::npos);
  CHECK(r.out.find("t=0") != std::string::npos);
  fs::remove(out);
  fs::remove(path);
}

TEST_CASE("enumerate components of the split quadric") {
  const auto path = write_instance("split_quadric_5.json",
                                   R"({"p": 5, "n": 3, "polys": ["x0*x3-x1*x2"]})");
  const auto r = run_cli("enumerate --input " + path.string() + " --k 1 --components --json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("count") == 12);
  REQUIRE(j.at("meet_components").size() == 2);
  CHECK(j.at("meet_components")[0].size() == 6);
  CHECK(j.at("meet_components")[1].size() == 6);
  CHECK_FALSE(j.contains("meets"));
  const auto with_meets =
      run_cli("enumerate --input " + path.string() + " --k 1 --meets --json");
  CHECK(json::parse(with_meets.out).at("meets").size() == 12);
  fs::remove(path);
}

TEST_CASE("enumerate refuses oversized Grassmannians with exit 4") {
  const auto path = write_instance(
      "big_quadric.json",
      R"({"p": 7, "n": 6, "polys": ["x0^2+x1^2+x2^2+x3^2+x4^2+x5^2+x6^2"]})");
  const auto r = run_cli("enumerate --input " + path.string() + " --k 2");
  CHECK(r.code == 4);
  CHECK(r.err.find("exceed") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("enumerate propagates file and parse failures as exit 2") {
  CHECK(run_cli("enumerate --input /nonexistent/file.json --k 1").code == 2);
  const auto path = write_instance("bad_poly.json", R"({"p": 5, "n": 3, "polys": ["x9"]})");
  const auto r = run_cli("enumerate --input " + path.string() + " --k 1");
  CHECK(r.code == 2);
  CHECK(r.err.find("polynomial #0") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("ideal exports chart generators") {
  const auto path = write_instance("quadric_for_ideal.json",
                                   R"({"p": 5, "n": 3, "polys": ["x0*x3-x1*x2"]})");
  const auto r = run_cli("ideal --input " + path.string() + " --k 1 --chart 0,1");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("pivots") == json::array({0, 1}));
  CHECK(j.at("generators").size() == 3);  // C(2+1, 1)

  const fs::path dir = fs::temp_directory_path() / "fano_charts_test";
  fs::remove_all(dir);
  const auto all =
      run_cli("ideal --input " + path.string() + " --k 1 --chart all --out " + dir.string());
  REQUIRE(all.code == 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    ++files;
    CHECK(entry.path().extension() == ".json");
  }
  CHECK(files == 6);  // C(4, 2) pivot sets
  fs::remove_all(dir);

  CHECK(run_cli("ideal --input " + path.string() + " --k 1 --chart 0,9").code == 2);
  CHECK(run_cli("ideal --input " + path.string() + " --k 1 --chart 0,0").code == 2);
  fs::remove(path);
}

TEST_CASE("sweep emits one row per valid cell") {
  const auto r = run_cli("sweep --n-max 10 --d-min 3 --d-max 5 --k-max 1");
  REQUIRE(r.code == 0);
  std::size_t lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 25);  // header + 24 rows

  const auto empty = run_cli("sweep --n-max 2 --d-min 3 --d-max 5 --k-max 1");
  CHECK(empty.code == 0);
  std::size_t empty_lines = 0;
  for (char c : empty.out)
    if (c == '\n') ++empty_lines;
  CHECK(empty_lines == 1);  // header only

  CHECK(run_cli("sweep --n-min 0 --n-max 5 --d-max 3 --k-max 1").code == 2);
}

TEST_CASE("sweep JSON is parseable and carries verdicts") {
  const auto r = run_cli("sweep --n-max 7 --d-min 5 --d-max 5 --k-max 1 --json");
  REQUIRE(r.code == 0);
  const json rows = json::parse(r.out);
  REQUIRE(rows.size() == 5);  // n = 3..7
  CHECK(rows.back().at("curve_free_certificate") == true);  // n = 7, d = 5
}

TEST_CASE("count-planes prints the subspace count") {
  const auto r = run_cli("count-planes --n 3 --k 1 --p 7");
  REQUIRE(r.code == 0);
  CHECK(r.out == "2850\n");
  const auto j = json::parse(run_cli("count-planes --n 10 --k 3 --p 101 --json").out);
  CHECK(j.at("count").is_string());  // too large for 64 bits, emitted as decimal string
}

TEST_CASE("malformed invocations exit with 2") {
  CHECK(run_cli("classify --n 3 --degrees 2").code == 2);       // missing --k
  CHECK(run_cli("classify --bogus 1").code == 2);               // unknown flag
  CHECK(run_cli("").code == 2);                                 // missing subcommand
  CHECK(run_cli("classify --n 3 --degrees 2,x --k 1").code == 2);
}
