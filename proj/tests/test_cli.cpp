#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"
#include "paraferm/report.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(PF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string tmp_path(const std::string& name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/" + name;
}

}  // namespace

TEST_CASE("holo-verify passes at the integrable point and fails off it") {
  RunResult ok = run("holo-verify --model dense --gamma 0.7853981633974483 --alpha 1.2 --rows 2 --cols 2 --spin auto");
  CHECK(ok.exit_code == 0);
  json j = json::parse(ok.out);
  CHECK(j["pass"] == true);
  CHECK(j["interior_max_residual"].get<double>() < 1e-12);
  CHECK(j["verb"] == "holo-verify");
  CHECK(j["per_plaquette"].size() == 4);

  RunResult bad = run("holo-verify --model dense --gamma 0.7853981633974483 --alpha 1.2 --rows 2 --cols 2 --spin 0.61");
  CHECK(bad.exit_code == 1);
  json jb = json::parse(bad.out);
  CHECK(jb["pass"] == false);
}

TEST_CASE("det-scan reports the embedding-independent c2 root at n = 1") {
  RunResult r = run(
      "det-scan --model c2 --eta 1.0471975512 --alpha 1.5707963268 --s-range -1,1 --steps 4000 --format json");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  bool found = false;
  for (const auto& root : j["roots"])
    if (std::abs(root["s"].get<double>()) < 1e-6) found = true;
  CHECK(found);
}

TEST_CASE("det-scan csv output carries the scan data") {
  RunResult r = run("det-scan --model dense --gamma 0.7853981634 --alpha 1.5707963268 --s-range 0,1 --steps 10");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("s,det") != std::string::npos);
  CHECK(r.out.find("# root") != std::string::npos);
}

TEST_CASE("cg table equates the spin and h31 columns on a gamma grid") {
  RunResult r = run("cg --grid gamma:0.05:1.5207963268:16 --format json");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  for (const auto& row : j["rows"])
    CHECK(std::abs(row["s"].get<double>() - row["h31"].get<double>()) < 1e-12);
}

TEST_CASE("solve emits weights, roots and null-space data") {
  RunResult r = run("solve --model on --eta 0.8 --alpha 1.1");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["null_space"]["dim"] == 1);
  CHECK(j["null_space"]["alignment"].get<double>() > 1.0 - 1e-8);
  CHECK(j["weights"].size() == 6);
  bool physical = false;
  for (const auto& root : j["spin_roots"])
    if (root["kind"] == "physical" && root["closed_form_match"].get<double>() < 1e-8) physical = true;
  CHECK(physical);
}

TEST_CASE("ybe-verify records the found convention") {
  RunResult r = run("ybe-verify --model on --eta 0.8 --psi1 0.4 --psi2 0.9");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["convention"] == "sum:spin-phase");

  RunResult d = run("ybe-verify --model dense --gamma 0.7 --psi1 0.3 --psi2 0.5");
  CHECK(d.exit_code == 0);
  json jd = json::parse(d.out);
  CHECK(jd["tl_residual"].get<double>() < 1e-12);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("holo-verify --model dense --alpha 1.0").exit_code == 2);  // missing gamma
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("holo-verify --model banana --gamma 0.3 --alpha 1.0").exit_code == 2);
  CHECK(run("cg --grid nope").exit_code == 2);
}

TEST_CASE("identical configurations produce byte-identical reports") {
  std::string a = tmp_path("pf_rep_a.json"), b = tmp_path("pf_rep_b.json");
  std::string args =
      "holo-verify --model on --eta 0.9 --alpha 1.2 --rows 2 --cols 2 --spin auto --out ";
  CHECK(run(args + a).exit_code == 0);
  CHECK(run(args + b).exit_code == 0);
  CHECK(paraferm::read_file(a) == paraferm::read_file(b));
  CHECK(!paraferm::read_file(a).empty());

  std::string c = tmp_path("pf_rep_c.json"), d = tmp_path("pf_rep_d.json");
  std::string args2 = "solve --model c2 --eta 0.9 --alpha 1.1 --out ";
  CHECK(run(args2 + c).exit_code == 0);
  CHECK(run(args2 + d).exit_code == 0);
  CHECK(paraferm::read_file(c) == paraferm::read_file(d));
}

TEST_CASE("report aggregation") {
  // empty list: empty summary, exit 0
  RunResult empty = run("report");
  CHECK(empty.exit_code == 0);
  json je = json::parse(empty.out);
  CHECK(je["all_pass"] == true);
  CHECK(je["runs"].empty());

  // two passing runs and one failing run
  std::string p1 = tmp_path("pf_run1.json"), p2 = tmp_path("pf_run2.json"), p3 = tmp_path("pf_run3.json");
  REQUIRE(run("holo-verify --model dense --gamma 0.7853981634 --alpha 1.2 --rows 2 --cols 2 --out " + p1)
              .exit_code == 0);
  REQUIRE(run("cg --grid gamma:0.1:1.5:8 --format json --out " + p2).exit_code == 0);
  REQUIRE(run("holo-verify --model dense --gamma 0.7853981634 --alpha 1.2 --rows 2 --cols 2 --spin 0.6 "
              "--out " + p3).exit_code == 1);

  RunResult pass2 = run("report " + p1 + " " + p2);
  CHECK(pass2.exit_code == 0);
  json jp = json::parse(pass2.out);
  CHECK(jp["all_pass"] == true);
  CHECK(jp["matrix"]["dense"]["holo-verify"] == true);

  RunResult mixed = run("report " + p1 + " " + p2 + " " + p3);
  CHECK(mixed.exit_code == 1);
  json jm = json::parse(mixed.out);
  CHECK(jm["all_pass"] == false);
  CHECK(jm["matrix"]["dense"]["holo-verify"] == false);

  CHECK(run("report /nonexistent/file.json").exit_code == 1);
}

TEST_CASE("json writer formatting") {
  paraferm::JsonWriter w;
  w.begin_object();
  w.key("text").value("a\"b\\c\nd");
  w.key("half").value(0.5);
  w.key("third").value(1.0 / 3.0);
  w.key("flag").value(true);
  w.key("list").begin_array().value(1).value(2).end_array();
  w.end_object();
  CHECK(w.str() ==
        "{\"text\":\"a\\\"b\\\\c\\nd\",\"half\":0.5,\"third\":0.33333333333333331,"
        "\"flag\":true,\"list\":[1,2]}");
}

TEST_CASE("degrees flag converts angles at parse time") {
  RunResult deg = run("--degrees holo-verify --model dense --gamma 45 --alpha 90 --rows 2 --cols 2");
  CHECK(deg.exit_code == 0);
  json j = json::parse(deg.out);
  CHECK(j["angle"].get<double>() == doctest::Approx(0.7853981633974483));
}
