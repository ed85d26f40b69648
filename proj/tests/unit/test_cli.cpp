#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "cli.hpp"
#include "weylchar/error.hpp"

using namespace weylchar;
namespace fs = std::filesystem;

namespace {

cli::RunReport run(std::vector<std::string> args) {
  args.insert(args.begin(), {"weylchar", "--data-dir", WEYLCHAR_TEST_DATA_DIR});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("weylchar_test_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"datum", "show", "g2aff"}).exit_code == 0);
  CHECK(run({}).exit_code == 2);
  CHECK(run({"frobnicate"}).exit_code == 2);
  CHECK(run({"classes"}).exit_code == 2);
  CHECK(run({"--format", "yaml", "datum", "show", "g2aff"}).exit_code == 2);
  CHECK(run({"classes", "--datum", "g2aff", "--bogus"}).exit_code == 2);
  CHECK(run({"datum", "show", "x9aff"}).exit_code == 3);
  CHECK(run({"chartable", "--group", "groups/missing.json"}).exit_code == 3);
  CHECK(run({"--help"}).exit_code == 0);
}

TEST_CASE("status tracks the exit code") {
  CHECK(run({"verify-g2"}).status == cli::Status::ok);
  const auto bad = run({"tau", "--rep", "reps/broken.json"});
  CHECK(bad.status == cli::Status::error);
  CHECK(bad.exit_code == 3);
  REQUIRE_FALSE(bad.diagnostics.empty());
  CHECK(bad.diagnostics.front().find("(M1*M2)^6 = 1") != std::string::npos);
}

TEST_CASE("datum show") {
  const auto r = run({"datum", "show", "g2aff"});
  CHECK(r.payload.find("m(0,1)=3") != std::string::npos);
  CHECK(r.payload.find("m(1,2)=6") != std::string::npos);
  CHECK(r.payload.find("m(0,2)=2") != std::string::npos);
  CHECK(r.payload.find("|Omega| = 1") != std::string::npos);
}

TEST_CASE("a mismatching table exits 4") {
  const auto r = run({"verify-g2", "--expected", fs::path(WEYLCHAR_TEST_GOLDEN_DIR "/data/perturbed_expected.json").string()});
  CHECK(r.exit_code == 4);
  CHECK(r.status == cli::Status::mismatch);
}

TEST_CASE("a non-integral phi exits 4") {
  const auto r = run({"phi", "--assignment", WEYLCHAR_TEST_GOLDEN_DIR "/data/nonintegral.json", "--v", "(1,1)"});
  CHECK(r.exit_code == 4);
}

TEST_CASE("schema errors carry a pointer") {
  const auto p = scratch("nonsquare.json", R"({"datum": "g2aff", "dimension": 2,
    "generators": {"0": [[1, 0], [0]], "1": [[1, 0], [0, 1]], "2": [[1, 0], [0, 1]]}})");
  try {
    cli::Loader(WEYLCHAR_TEST_DATA_DIR).rep(p.string());
    FAIL("expected a schema error");
  } catch (const DataError& e) {
    const std::string what = e.what();
    CHECK(what.find("/generators/0/1") != std::string::npos);
    CHECK(what.find("generator 0") != std::string::npos);
  }
  const auto g = scratch("nonassoc.json", R"({"mult": [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]})");
  CHECK_THROWS_AS(cli::Loader(WEYLCHAR_TEST_DATA_DIR).group(g.string()), DataError);
}

TEST_CASE("load_data_file by kind") {
  const cli::Loader loader(WEYLCHAR_TEST_DATA_DIR);
  const auto s3 = cli::load_data_file(loader, "groups/s3.json", cli::DataKind::group);
  CHECK(std::get<MSet>(s3).gamma().order() == 6);
  CHECK(std::get<RepData>(cli::load_data_file(loader, "reps/sign.json", cli::DataKind::rep)).dimension == 1);
  CHECK(std::get<FamilyData>(cli::load_data_file(loader, "families/g2_families.json", cli::DataKind::family))
            .families.size() == 3);
  CHECK(std::get<SphericalAssignment>(
            cli::load_data_file(loader, "assignments/g2_demo.json", cli::DataKind::assignment))
            .mprime.size() == 4);
}

TEST_CASE("datum JSON output loads back as a datum") {
  for (const std::string name : {"a1aff", "a2aff", "c2aff", "g2aff"}) {
    const auto r = run({"--format", "json", "datum", "show", name});
    REQUIRE(r.exit_code == 0);
    const auto p = scratch(name + ".json", r.payload);
    const AffineDatum loaded = cli::Loader(WEYLCHAR_TEST_DATA_DIR).datum(p.string());
    const AffineDatum builtin = AffineDatum::builtin(name);
    CHECK(loaded.name() == name);
    CHECK(loaded.affine_cartan() == builtin.affine_cartan());
    CHECK(loaded.omega_group().size() == builtin.omega_group().size());
  }
}

TEST_CASE("output goes to a file when asked") {
  const fs::path out = fs::temp_directory_path() / "weylchar_test_out.txt";
  fs::remove(out);
  const auto r = run({"--output", out.string(), "datum", "show", "a1aff"});
  CHECK(r.output_path == out.string());
}

TEST_CASE("runs are deterministic") {
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"verify-g2"}, {"--format", "json", "fourier", "--group", "groups/d8.json"},
        {"classes", "--datum", "c2aff"}}) {
    CHECK(run(args).payload == run(args).payload);
  }
}
