#include "doctest.h"

#include "obk/formats.hpp"
#include "obk/presets.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(OBK_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path work_dir() {
  fs::path p = fs::temp_directory_path() / "obk_cli_test";
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("preset generation, surface info and determinism") {
  fs::path dir = work_dir();
  auto gen = run("preset prop12 --p 4 --q 4 --n -1 --out " + (dir / "p12").string());
  CHECK(gen.exit_code == 0);

  auto info = run("--json surface info " + (dir / "p12/surface.json").string());
  CHECK(info.exit_code == 0);
  obk::Json j = obk::Json::parse(info.output);
  CHECK(j["genus"] == 0);
  CHECK(j["boundary_count"] == 8);
  CHECK(j["euler_characteristic"] == -6);
  CHECK(j["valid"] == true);
  bool lantern_ok = false;
  for (const auto& r : j["relation_instances"])
    if (r["name"] == "lantern" && r["level"] == "pi1-exact" && r["pass"] == true) lantern_ok = true;
  CHECK(lantern_ok);

  // Identical inputs produce byte-identical reports, and the global flag is
  // accepted on either side of the subcommand.
  auto info2 = run("--json surface info " + (dir / "p12/surface.json").string());
  CHECK(info.output == info2.output);
  auto info3 = run("surface info " + (dir / "p12/surface.json").string() + " --json");
  CHECK(info.output == info3.output);

  // Unknown subcommands and missing arguments are input errors.
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("classify").exit_code == 2);

  // Regenerating the preset produces byte-identical files.
  auto gen2 = run("preset prop12 --p 4 --q 4 --n -1 --out " + (dir / "p12b").string());
  CHECK(gen2.exit_code == 0);
  for (const auto& name : {"surface.json", "word.txt", "relations.json", "cover.json", "movie.json",
                           "scenario.json"})
    CHECK(obk::read_file(dir / "p12" / name) == obk::read_file(dir / "p12b" / name));
}

TEST_CASE("genus-4 example end to end through the CLI") {
  fs::path dir = work_dir();
  REQUIRE(run("preset example43 --out " + (dir / "e43").string()).exit_code == 0);

  auto build = run("--json cover build " + (dir / "e43/surface.json").string() + " " +
                   (dir / "e43/cover.json").string());
  CHECK(build.exit_code == 0);
  obk::Json j = obk::Json::parse(build.output);
  CHECK(j["genus"] == 7);
  CHECK(j["boundary_count"] == 4);

  auto lifted = run("--json lift " + (dir / "e43/surface.json").string() + " " +
                    (dir / "e43/cover.json").string() + " \"T[a]^2 T[b]^2 T[c] T[d] T[e]^-1 T[f]\"");
  CHECK(lifted.exit_code == 0);
  obk::Json lj = obk::Json::parse(lifted.output);
  CHECK(lj["status"] == "lifted");
  CHECK(lj["lifted_word"] ==
        "T[a~] T[b~] T[c~] T[d~] T[e~]^-1 T[f~] T[c~'] T[d~'] T[e~']^-1 T[f~']");
  CHECK(lj["commutativity"]["pass"] == true);
}

TEST_CASE("exit codes: 1 for domain rejections, 2 for input errors") {
  fs::path dir = work_dir();

  SUBCASE("corrupt surface file") {
    obk::write_file(dir / "bad.json", "{ not json");
    CHECK(run("surface info " + (dir / "bad.json").string()).exit_code == 2);
  }
  SUBCASE("missing file") {
    CHECK(run("surface info " + (dir / "absent.json").string()).exit_code == 2);
  }
  SUBCASE("preset rejects p = 1") {
    auto r = run("preset prop12 --p 1 --q 4 --out " + (dir / "x").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("p, q >= 2") != std::string::npos);
  }
  SUBCASE("non-liftable exponent") {
    // With k = 3 the factor T_a^2 violates the divisibility rule. A lift of
    // the whole word still exists at the homology level (planar base), so the
    // word-level answer is inconclusive, carrying the failing factor.
    REQUIRE(run("preset example41 --alpha 1 --beta 1 --k 3 --out " + (dir / "e41").string()).exit_code == 0);
    auto r = run("--json lift " + (dir / "e41/surface.json").string() + " " +
                 (dir / "e41/cover.json").string() + " \"T[a]^2 T[b]^2 T[c] T[d] T[e]^-1\"");
    CHECK(r.exit_code == 1);
    obk::Json j = obk::Json::parse(r.output);
    CHECK(j["status"] == "inconclusive");
    CHECK(j["diagnostics"]["curve"] == "a");
    CHECK(j["diagnostics"]["component_degree"] == 3);
    CHECK(j["diagnostics"]["exponent"] == 2);
  }
  SUBCASE("invalid movie") {
    REQUIRE(run("preset case1 --p 4 --q 4 --out " + (dir / "c1").string()).exit_code == 0);
    obk::Json j = obk::Json::parse(obk::read_file(dir / "c1/movie.json"));
    j["events"].erase(1);
    obk::write_file(dir / "c1/broken.json", j.dump(2));
    auto r = run("movie check " + (dir / "c1/broken.json").string());
    CHECK(r.exit_code == 1);
  }
  SUBCASE("wrong parity for a bundled movie case") {
    CHECK(run("preset case1 --p 3 --q 3 --out " + (dir / "bad").string()).exit_code == 2);
  }
}

TEST_CASE("genus-4 example surface info") {
  fs::path dir = work_dir();
  REQUIRE(run("preset example43 --out " + (dir / "e43").string()).exit_code == 0);
  auto info = run("--json surface info " + (dir / "e43/surface.json").string());
  CHECK(info.exit_code == 0);
  obk::Json j = obk::Json::parse(info.output);
  CHECK(j["genus"] == 4);
  CHECK(j["boundary_count"] == 2);
  CHECK(j["euler_characteristic"] == -8);
}

TEST_CASE("a disconnected cover is flagged in the report") {
  fs::path dir = work_dir();
  REQUIRE(run("preset example43 --out " + (dir / "e43").string()).exit_code == 0);
  obk::Json spec;
  spec["format"] = "obk-cover/1";
  spec["k"] = 2;
  spec["lambda"] = obk::Json::object();  // the zero homomorphism
  obk::write_file(dir / "zero.json", spec.dump(2));
  auto r = run("--json cover build " + (dir / "e43/surface.json").string() + " " +
               (dir / "zero.json").string());
  CHECK(r.exit_code == 0);
  obk::Json j = obk::Json::parse(r.output);
  CHECK(j["connected"] == false);
  CHECK(j["components"] == 2);
}

TEST_CASE("k = 3 lift of the four-holed family with alpha = beta = 2 has exponents 1") {
  fs::path dir = work_dir();
  REQUIRE(run("preset example41 --alpha 2 --beta 2 --k 3 --out " + (dir / "e41").string()).exit_code == 0);
  auto r = run("--json lift " + (dir / "e41/surface.json").string() + " " +
               (dir / "e41/cover.json").string() + " \"$(cat " + (dir / "e41/word.txt").string() + ")\"");
  CHECK(r.exit_code == 0);
  obk::Json j = obk::Json::parse(r.output);
  CHECK(j["status"] == "lifted");
  std::string lifted = j["lifted_word"];
  CHECK(lifted.find("T[a~] T[b~]") == 0);               // degree-3 lifts with exponent 1
  CHECK(lifted.find("T[a~]^") == std::string::npos);    // no higher power on a~
  CHECK(j["commutativity"]["pass"] == true);
}

TEST_CASE("classify exits 1 on a contradictory scenario") {
  fs::path dir = work_dir();
  // The complexity-one movie lives on the disk page, so the open book is the
  // disk with the empty twist word.
  obk::Surface s = obk::make_surface(0, 1);
  obk::MoviePresentation disk = obk::presets::complexity_one_movie();
  auto write_ref = [&](const std::string& name, const obk::Json& j) {
    std::string content = j.dump(2) + "\n";
    obk::write_file(dir / name, content);
    return obk::ScenarioFileRef{name, obk::fnv1a64_hex(content)};
  };
  obk::Scenario sc;
  sc.openbooks.push_back({"base", write_ref("surface.json", obk::surface_to_json(s)), ""});
  obk::ScenarioCertificate movie_cert;
  movie_cert.type = "ot_disk_movie";
  movie_cert.openbook = "base";
  movie_cert.movie = write_ref("movie.json", obk::movie_to_json(disk));
  sc.certificates.push_back(movie_cert);
  obk::ScenarioCertificate axiom;
  axiom.type = "external_axiom";
  axiom.openbook = "base";
  axiom.statement = "tight";
  sc.certificates.push_back(axiom);
  obk::write_file(dir / "clash.json", obk::scenario_to_json(sc).dump(2));
  auto r = run("--json classify " + (dir / "clash.json").string());
  CHECK(r.exit_code == 1);
  obk::Json j = obk::Json::parse(r.output);
  CHECK(j["consistent"] == false);
}

TEST_CASE("regenerated presets match the bundled golden copies byte for byte") {
  fs::path dir = work_dir();
  fs::path golden = fs::path(OBK_PRESET_SOURCE_DIR);
  struct Row {
    std::string args, subdir;
  };
  std::vector<Row> rows = {
      {"preset prop12 --p 4 --q 4 --n -1", "prop12_p4q4_n-1"},
      {"preset prop12 --p 3 --q 3 --n -1", "prop12_p3q3_n-1"},
      {"preset prop12 --p 4 --q 4 --n 0", "prop12_p4q4_n0"},
      {"preset prop12 --p 4 --q 4 --n -2", "prop12_p4q4_n-2"},
      {"preset example41 --alpha 1 --beta 1 --k 2", "example41_a1b1_k2"},
      {"preset example43", "example43"},
      {"preset case1 --p 4 --q 4", "case1_p4q4"},
      {"preset case2 --p 3 --q 3", "case2_p3q3"},
  };
  for (const auto& row : rows) {
    fs::path out = dir / row.subdir;
    REQUIRE(run(row.args + " --out " + out.string()).exit_code == 0);
    for (const auto& entry : fs::directory_iterator(golden / row.subdir)) {
      CAPTURE(entry.path().string());
      CHECK(obk::read_file(entry.path()) == obk::read_file(out / entry.path().filename()));
    }
  }
}

TEST_CASE("preset outputs pass their own validators") {
  fs::path dir = work_dir();
  REQUIRE(run("preset prop12 --p 4 --q 4 --n -1 --out " + (dir / "p").string()).exit_code == 0);
  obk::Surface s = obk::surface_from_json(obk::Json::parse(obk::read_file(dir / "p/surface.json")));
  CHECK(obk::validate_surface(s).ok());
  obk::MoviePresentation m =
      obk::movie_from_json(obk::Json::parse(obk::read_file(dir / "p/movie.json")));
  CHECK(obk::validate_movie(m).ok());
  obk::CoverSpec spec =
      obk::cover_spec_from_json(obk::Json::parse(obk::read_file(dir / "p/cover.json")), s);
  CHECK_NOTHROW(obk::build_cyclic_cover(s, spec));
}

TEST_CASE("classify: tight-only, unknown and contradiction scenarios") {
  fs::path dir = work_dir();

  REQUIRE(run("preset example41 --alpha 1 --beta 1 --k 2 --out " + (dir / "e41").string()).exit_code == 0);
  auto tight = run("--json classify " + (dir / "e41/scenario.json").string());
  CHECK(tight.exit_code == 0);
  obk::Json tj = obk::Json::parse(tight.output);
  CHECK(tj["classification"] == "tight");
  CHECK(tj["n_bounds"] == obk::Json::array({0, 0}));

  REQUIRE(run("preset prop12 --p 4 --q 4 --n 0 --out " + (dir / "ut").string()).exit_code == 0);
  auto ut = run("--json classify " + (dir / "ut/scenario.json").string());
  CHECK(ut.exit_code == 0);
  CHECK(obk::Json::parse(ut.output)["classification"] == "universally_tight");

  REQUIRE(run("preset prop12 --p 4 --q 4 --n -2 --out " + (dir / "unk").string()).exit_code == 0);
  auto unk = run("--json classify " + (dir / "unk/scenario.json").string());
  CHECK(unk.exit_code == 0);
  CHECK(obk::Json::parse(unk.output)["classification"] == "unknown");

  // An empty scenario classifies as unknown.
  obk::Scenario empty;
  obk::write_file(dir / "empty.json", obk::scenario_to_json(empty).dump(2));
  auto e = run("--json classify " + (dir / "empty.json").string());
  CHECK(e.exit_code == 0);
  CHECK(obk::Json::parse(e.output)["classification"] == "unknown");
}
