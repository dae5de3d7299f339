// End-to-end tests of the `syz` binary: exit-code contract, report schemas,
// figure/report pairing, and byte stability. The binary path comes from the
// build system via SYZ_CLI_BINARY.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const fs::path& work_root() {
  static const fs::path root = [] {
    fs::path p = fs::temp_directory_path() / ("syz-cli-tests-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = work_root() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code = -1;
  std::string out, err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = work_root() / ("stdout" + std::to_string(counter) + ".txt");
  fs::path err = work_root() / ("stderr" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = std::string(SYZ_CLI_BINARY) + " " + args + " >" + out.string() + " 2>" +
                    err.string();
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

Json slurp_json(const fs::path& p) { return Json::parse(slurp(p)); }

fs::path kp2_f() {
  static fs::path p = write_file(work_root(), "kp2.f", "4 + z1 + z2 + z1^-1*z2^-1\n");
  return p;
}

fs::path kp2_lifting() {
  static fs::path p = write_file(work_root(), "kp2_lift.json", R"js({"(0,0)": "-1"})js");
  return p;
}

fs::path two_wall_f() {
  static fs::path p = write_file(work_root(), "a1.f", "2 - 3 z1 + z1^2\n");
  return p;
}

}  // namespace

TEST_CASE("mirror emits the certified fan report and its figure") {
  auto dir = fresh_dir("mirror_ok");
  auto r = run_cli("mirror --f " + kp2_f().string() + " --lifting " + kp2_lifting().string() +
                   " --out " + dir.string());
  REQUIRE(r.code == 0);

  auto j = slurp_json(dir / "mirror_report.json");
  REQUIRE(j.at("command") == "mirror");
  REQUIRE(j.at("seed") == 12345);
  REQUIRE(j.at("fan").at("rays") ==
          Json::parse("[[-1,-1,1],[0,0,1],[0,1,1],[1,0,1]]"));
  REQUIRE(j.at("fan").at("max_cones") == Json::parse("[[0,1,2],[0,1,3],[1,2,3]]"));
  REQUIRE(j.at("fan").at("calabi_yau") == Json::parse("[0,0,1]"));
  REQUIRE(j.at("fan").at("smooth") == true);
  REQUIRE(j.at("fan").at("convex_support") == true);
  REQUIRE(j.at("subdivision").at("cells").size() == 3);
  REQUIRE(j.at("dual_curve").at("vertices").size() == 3);

  REQUIRE(fs::exists(dir / "subdivision.svg"));
  REQUIRE(slurp(dir / "subdivision.svg").substr(0, 4) == "<svg");
}

TEST_CASE("reports and figures are byte-stable across runs") {
  auto d1 = fresh_dir("stable1"), d2 = fresh_dir("stable2");
  std::string args = "mirror --f " + kp2_f().string() + " --lifting " + kp2_lifting().string();
  REQUIRE(run_cli(args + " --out " + d1.string()).code == 0);
  REQUIRE(run_cli(args + " --out " + d2.string()).code == 0);
  REQUIRE(slurp(d1 / "mirror_report.json") == slurp(d2 / "mirror_report.json"));
  REQUIRE(slurp(d1 / "subdivision.svg") == slurp(d2 / "subdivision.svg"));
}

TEST_CASE("a non-smooth mirror exits 2 but still writes its report") {
  auto dir = fresh_dir("mirror_bad");
  auto f = write_file(dir, "coarse.f", "1 + z1^2 + z2^2\n");
  auto r = run_cli("mirror --f " + f.string() + " --out " + dir.string());
  REQUIRE(r.code == 2);
  REQUIRE_THAT(r.err, Catch::Matchers::ContainsSubstring("smooth"));
  auto j = slurp_json(dir / "mirror_report.json");
  REQUIRE(j.at("fan").at("smooth") == false);
}

TEST_CASE("argument and input errors exit 1") {
  auto dir = fresh_dir("errors");

  auto bad = write_file(dir, "bad.f", "1 + + z1\n");
  auto r = run_cli("mirror --f " + bad.string() + " --out " + dir.string());
  REQUIRE(r.code == 1);
  REQUIRE_THAT(r.err, Catch::Matchers::ContainsSubstring("parse error"));

  REQUIRE(run_cli("mirror").code == 1);         // missing required --f
  REQUIRE(run_cli("frobnicate").code == 1);     // unknown subcommand
  REQUIRE(run_cli("--help").code == 0);

  REQUIRE(run_cli("base --f " + two_wall_f().string() + " --mode 4d").code == 1);
  REQUIRE(run_cli("amoeba --f " + kp2_f().string() + " --resolution 8").code == 1);

  // two roots on the same circle: no wall structure
  auto equal = write_file(dir, "equal.f", "-1 + z1^2\n");
  auto e = run_cli("base --f " + equal.string() + " --out " + dir.string());
  REQUIRE(e.code == 1);
  REQUIRE_THAT(e.err, Catch::Matchers::ContainsSubstring("not separated"));
}

TEST_CASE("2d base report lists walls, chambers and the wall monodromy") {
  auto dir = fresh_dir("base2d");
  auto r = run_cli("base --f " + two_wall_f().string() + " --out " + dir.string());
  REQUIRE(r.code == 0);

  auto j = slurp_json(dir / "base2d_report.json");
  REQUIRE(j.at("mode") == "2d");
  auto walls = j.at("walls").get<std::vector<double>>();
  REQUIRE(walls.size() == 2);
  REQUIRE(std::abs(walls[0] - 0.0) < 1e-12);               // log 1
  REQUIRE(std::abs(walls[1] - std::log(2.0)) < 1e-12);
  REQUIRE(j.at("chambers").size() == 3);
  REQUIRE(j.at("chambers").at(0).at("name") == "U0");
  REQUIRE(j.at("chambers").at(0).at("lo").is_null());      // unbounded end
  REQUIRE(j.at("chambers").at(2).at("hi").is_null());
  REQUIRE(j.at("monodromy") == Json::parse("[[1,1],[0,1]]"));
  REQUIRE(j.at("discriminant").size() == 2);
  REQUIRE(fs::exists(dir / "base2d.svg"));
}

TEST_CASE("3d base labels the four chambers of the quartic spine") {
  auto dir = fresh_dir("base3d");
  auto r = run_cli("base --f " + kp2_f().string() + " --mode 3d --lifting " +
                   kp2_lifting().string() + " --resolution 64 --out " + dir.string());
  REQUIRE(r.code == 0);

  auto j = slurp_json(dir / "base3d_report.json");
  REQUIRE(j.at("mode") == "3d");
  REQUIRE(j.at("raster").at("nx") == 64);
  REQUIRE(j.at("dual_curve").at("edges").size() == 3);
  REQUIRE(j.at("labeling").at("count") == 4);

  auto labels = j.at("labeling").at("labels");
  auto unbounded = j.at("labeling").at("unbounded").get<std::vector<bool>>();
  REQUIRE(labels.size() == 4);
  bool found_origin = false;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels.at(i) == Json::parse("[0,0]")) {
      found_origin = true;
      REQUIRE_FALSE(unbounded[i]);  // the origin chamber is the bounded one
    } else {
      REQUIRE(unbounded[i]);
    }
  REQUIRE(found_origin);

  REQUIRE(fs::exists(dir / "base3d.svg"));
  REQUIRE(slurp(dir / "amoeba.pgm").substr(0, 11) == "P2\n64 64\n1\n");
}

TEST_CASE("an unresolvable raster exits 2 with the failure recorded") {
  auto dir = fresh_dir("base3d_tiny");
  auto r = run_cli("base --f " + kp2_f().string() + " --mode 3d --box -0.4 -0.4 0.4 0.4" +
                   " --resolution 16 --out " + dir.string());
  REQUIRE(r.code == 2);
  auto j = slurp_json(dir / "base3d_report.json");
  REQUIRE(j.at("labeling").is_null());
  REQUIRE_THAT(j.at("error").get<std::string>(),
               Catch::Matchers::ContainsSubstring("components"));
}

TEST_CASE("amoeba defaults its box from the tropical spine") {
  auto dir = fresh_dir("amoeba_tri");
  auto f = write_file(dir, "tri.f", "1 + z1 + z2\n");
  auto r = run_cli("amoeba --f " + f.string() + " --out " + dir.string() + " --seed 777");
  REQUIRE(r.code == 0);

  auto j = slurp_json(dir / "amoeba_report.json");
  REQUIRE(j.at("seed") == 777);
  REQUIRE(j.at("raster").at("box") == Json::parse("[-4.0,-4.0,4.0,4.0]"));
  REQUIRE(j.at("raster").at("rows").size() == 64);
  REQUIRE(j.at("raster").at("rows").at(0).get<std::string>().size() == 64);
  REQUIRE(j.at("labeling").at("count") == 3);
  REQUIRE(fs::exists(dir / "amoeba.svg"));
  REQUIRE(fs::exists(dir / "amoeba.pgm"));

  // json-only format suppresses the figures but keeps the report
  auto jdir = fresh_dir("amoeba_json_only");
  REQUIRE(run_cli("amoeba --f " + f.string() + " --out " + jdir.string() +
                  " --format json").code == 0);
  REQUIRE(fs::exists(jdir / "amoeba_report.json"));
  REQUIRE_FALSE(fs::exists(jdir / "amoeba.svg"));
  REQUIRE_FALSE(fs::exists(jdir / "amoeba.pgm"));
}

TEST_CASE("transform2d reports the degree identity") {
  auto bdir = fresh_dir("t2_base");
  REQUIRE(run_cli("base --f " + two_wall_f().string() + " --out " + bdir.string() +
                  " --format json").code == 0);

  auto dir = fresh_dir("t2");
  auto sec = write_file(dir, "sec.json", R"({"path": [[1.5, -1.0], [1.5, 1.0]], "cut": [1.0, 2.0]})");
  auto r = run_cli("transform2d --section " + sec.string() + " --base " +
                   (bdir / "base2d_report.json").string() + " --out " + dir.string());
  REQUIRE(r.code == 0);

  auto j = slurp_json(dir / "transform2d_report.json");
  REQUIRE(j.at("wall_values") == Json::parse("[0,1]"));
  REQUIRE(j.at("intersection_number") == 1);
  REQUIRE(j.at("bundle").at("degree") == 1);
  REQUIRE(j.at("degree_matches_intersection") == true);
  REQUIRE(j.at("bundle").at("charts") == Json::parse(R"js(["U(0,1)","U(1,2)"])js"));
  REQUIRE_THAT(j.at("bundle").at("transitions").at(0).at("text").get<std::string>(),
               Catch::Matchers::ContainsSubstring("(1+w)"));

  // direct wall values: no path, so no intersection number to compare against
  auto sec2 = write_file(dir, "sec2.json", R"({"wall_values": [2, 2]})");
  auto r2 = run_cli("transform2d --section " + sec2.string() + " --base " +
                    (bdir / "base2d_report.json").string() + " --out " + dir.string());
  REQUIRE(r2.code == 0);
  auto j2 = slurp_json(dir / "transform2d_report.json");
  REQUIRE(j2.at("bundle").at("degree") == 0);
  REQUIRE(j2.at("bundle").at("structure_sheaf") == true);
  REQUIRE(j2.at("degree_matches_intersection").is_null());
}

TEST_CASE("transform3d validates sections against the stored dual curve") {
  auto bdir = fresh_dir("t3_base");
  REQUIRE(run_cli("base --f " + kp2_f().string() + " --mode 3d --lifting " +
                  kp2_lifting().string() + " --format json --out " + bdir.string()).code == 0);
  auto base_report = (bdir / "base3d_report.json").string();

  auto dir = fresh_dir("t3");
  auto zero = write_file(dir, "zero.json", R"({"gradient": ["0", "0"]})");
  auto r = run_cli("transform3d --section " + zero.string() + " --base " + base_report +
                   " --out " + dir.string());
  REQUIRE(r.code == 0);
  auto j = slurp_json(dir / "transform3d_report.json");
  REQUIRE(j.at("bundle").at("charts").size() == 6);
  REQUIRE(j.at("bundle").at("structure_sheaf") == true);
  REQUIRE(j.at("cocycle_verified") == true);

  // a half-integer gradient violates the integrality gate
  auto half = write_file(dir, "half.json", R"({"gradient": ["1/2", "0"]})");
  auto r2 = run_cli("transform3d --section " + half.string() + " --base " + base_report +
                    " --out " + dir.string());
  REQUIRE(r2.code == 1);
  REQUIRE_THAT(r2.err, Catch::Matchers::ContainsSubstring("integrality violated"));

  // a section file naming a pair that is not a dual-curve edge
  auto stray = write_file(dir, "stray.json",
                          R"({"legs": [{"alpha": [5, 5], "beta": [6, 6], "n": "1"}]})");
  auto r3 = run_cli("transform3d --section " + stray.string() + " --base " + base_report +
                    " --out " + dir.string());
  REQUIRE(r3.code == 1);
}
