#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "doctest.h"
#include "lj/cli.hpp"

using namespace lj;

namespace {

const std::string kPrograms = std::string(LJ_SOURCE_DIR) + "/programs/";

struct Run {
  int code;
  std::string out, err;
};

Run ljw(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name, const std::string& body) {
  auto dir = std::filesystem::temp_directory_path() / "ljw_test";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST_CASE("documented invocations") {
  auto t = ljw({"typecheck", kPrograms + "noninterference.gml"});
  CHECK(t.code == 1);
  CHECK(t.out.find("def=leak verdict=reject message=grade violation: y used at low, declared high") !=
        std::string::npos);

  auto l = ljw({"laws", "--algebra", "natinf"});
  CHECK(l.code == 0);
  CHECK(l.out.find("status=fail") == std::string::npos);
  CHECK(l.out.find("clause=distributive-left status=pass") != std::string::npos);

  auto e = ljw({"eval", kPrograms + "core.gml", "--def", "letbox_beta", "--fuel", "2"});
  CHECK(e.code == 0);
  CHECK(e.out == "def=letbox_beta fuel=2 result=\\u. u\nstatus=pass\n");
  CHECK(ljw({"eval", kPrograms + "core.gml", "--def", "letbox_beta", "--fuel", "1"}).out.find("result=diverged") !=
        std::string::npos);
}

TEST_CASE("json status matches the exit code") {
  const std::vector<std::vector<std::string>> runs = {
      {"typecheck", kPrograms + "noninterference.gml"},
      {"typecheck", kPrograms + "metric.gml"},
      {"eval", kPrograms + "core.gml", "--def", "Omega", "--fuel", "500"},
      {"eval", kPrograms + "core.gml", "--def", "nope", "--fuel", "5"},
      {"laws", "--extension", "kripke", "--frame", "F2"},
      {"simcheck", kPrograms + "similar.sim"},
      {"simcheck", kPrograms + "seeded.sim"},
      {"distance", kPrograms + "boxes.sim", "--quantale", "boolean"},
      {"distance", kPrograms + "boxes.sim", "--depth", "1"},
      {"noninterference", kPrograms + "noninterference.gml", "--def", "leak"},
      {"noninterference", kPrograms + "noninterference.gml", "--def", "branch_on_public"},
      {"metric", kPrograms + "metric.gml", "--def", "neg", "--pairs", kPrograms + "neg.pairs"},
      {"metric", kPrograms + "metric.gml", "--def", "neg", "--pairs", kPrograms + "nonexistent.pairs"},
      {"frobnicate"},
  };
  std::set<int> seen;
  for (auto args : runs) {
    args.push_back("--json");
    CAPTURE(args.front());
    auto r = ljw(args);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_object());
    CHECK(exit_code(doc.at("status").get<std::string>()) == r.code);
    seen.insert(r.code);
    // same input, same report
    CHECK(ljw(args).out == r.out);
  }
  CHECK(seen == std::set<int>{0, 1, 2});
}

TEST_CASE("usage, parse and type errors exit 2") {
  CHECK(ljw({}).code == 2);
  CHECK(ljw({"eval", kPrograms + "core.gml", "--fuel", "3"}).code == 2);
  CHECK(ljw({"eval", kPrograms + "metric.gml", "--def", "neg", "--fuel", "3"}).code == 2);
  CHECK(ljw({"eval", kPrograms + "noninterference.gml", "--def", "leak", "--fuel", "3"}).code == 2);
  CHECK(ljw({"distance", kPrograms + "boxes.sim", "--quantale", "euclid"}).code == 2);
  auto bad = scratch("bad.gml", "#algebra natinf\ndef x : Bool = (\n");
  auto r = ljw({"typecheck", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") == 0);
  CHECK(ljw({"--help"}).code == 0);
}

TEST_CASE("simcheck witnesses reproduce") {
  auto r = ljw({"simcheck", kPrograms + "seeded.sim"});
  CHECK(r.code == 1);
  CHECK(r.out.find("clause=box witness=(b2t, b2f, 0) grade=2") != std::string::npos);

  // the witness alone, added to the identity candidate, fails the same clause
  auto spec = scratch("witness.sim", "program: " + kPrograms +
                                         "metric.gml\nframe: lawvere4\ncandidate: identity\nrelate: b2t, b2f, 0\n");
  auto again = ljw({"simcheck", spec});
  CHECK(again.code == 1);
  CHECK(again.out.find("clause=box witness=(b2t, b2f, 0) grade=2") != std::string::npos);

  CHECK(ljw({"simcheck", kPrograms + "identity.sim"}).code == 0);
  CHECK(ljw({"simcheck", kPrograms + "similar.sim"}).code == 0);
  auto d = ljw({"simcheck", kPrograms + "dissimilar.sim"});
  CHECK(d.code == 1);
  CHECK(d.out.find("witness=(not, idb, 0)") != std::string::npos);
}

TEST_CASE("distance, metric and non-interference reports") {
  auto d = ljw({"distance", kPrograms + "boxes.sim"});
  CHECK(d.code == 0);
  CHECK(d.out.find("pair=(b0t, b0f) distance=0\n") != std::string::npos);
  CHECK(d.out.find("pair=(b2t, b2f) distance=inf\n") != std::string::npos);
  CHECK(d.out.find("pair=(not, not2) distance=0\n") != std::string::npos);
  auto shallow = ljw({"distance", kPrograms + "boxes.sim", "--depth", "1"});
  CHECK(shallow.code == 1);
  CHECK(shallow.out.find("status=inconclusive") != std::string::npos);

  CHECK(ljw({"metric", kPrograms + "metric.gml", "--def", "neg", "--pairs", kPrograms + "neg.pairs"}).code == 0);
  auto pairs = scratch("sel.pairs", "case\nx = tt ~ ff\n");
  CHECK(ljw({"metric", kPrograms + "metric.gml", "--def", "sel", "--pairs", pairs}).code == 2);

  auto leak = ljw({"noninterference", kPrograms + "noninterference.gml", "--def", "leak"});
  CHECK(leak.code == 1);
  CHECK(leak.out.find("status=rejected") != std::string::npos);
  for (const char* def : {"box_secret", "ignore_secret", "pass_secret", "branch_on_public"})
    CHECK(ljw({"noninterference", kPrograms + "noninterference.gml", "--def", def}).code == 0);
  CHECK(ljw({"noninterference", kPrograms + "noninterference.gml", "--def", "pass_secret", "--secrets",
             kPrograms + "boxed.secrets"})
            .code == 0);
}
