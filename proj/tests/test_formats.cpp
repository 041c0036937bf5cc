#include "doctest.h"

#include "obk/formats.hpp"
#include "obk/presets.hpp"

#include <cstdlib>
#include <filesystem>

using namespace obk;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("obk_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("surface files round trip with automorphisms and relations") {
  Surface s = presets::prop12_surface(3, 3);
  Json j = surface_to_json(s);
  Surface t = surface_from_json(j);
  CHECK(t.genus() == s.genus());
  CHECK(t.boundary_count() == s.boundary_count());
  CHECK(t.curves().size() == s.curves().size());
  REQUIRE(t.relation_instances.size() == 1);
  CHECK(validate_surface(t).ok());
  // The reloaded instance still verifies exactly.
  auto rep = verify_relation_instance(t, t.relation_instances[0]);
  CHECK(rep.level == RelationLevel::pi1_exact);
  CHECK(rep.pass);
  // Identical serialization both ways.
  CHECK(surface_to_json(t) == j);
}

TEST_CASE("surface files reject malformed data with located diagnostics") {
  Json j = surface_to_json(presets::example41_surface());
  SUBCASE("bad format tag") {
    j["format"] = "nope";
    CHECK_THROWS_AS(surface_from_json(j), ParseError);
  }
  SUBCASE("unknown generator in a curve word") {
    j["curves"][0]["word"] = "z9";
    try {
      surface_from_json(j);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.where.find("/curves/0/word") != std::string::npos);
    }
  }
  SUBCASE("boundary_count zero is rejected") {
    j["boundary_count"] = 0;
    CHECK_THROWS_AS(surface_from_json(j), ParseError);
  }
}

TEST_CASE("cover specs round trip, including the cutting-class form") {
  Surface s = presets::prop12_surface(4, 4);
  CoverSpec spec = presets::prop12_cover_spec(4, 4);
  Json j = cover_spec_to_json(spec, s);
  CoverSpec back = cover_spec_from_json(j, s);
  CHECK(back.k == spec.k);
  CHECK(back.lambda.values == spec.lambda.values);

  // The same homomorphism via a cutting class: on a planar surface the
  // pairing vanishes, so the derived lambda is zero; exercise the parse path.
  Json j2;
  j2["format"] = "obk-cover/1";
  j2["k"] = 2;
  j2["cutting_class"] = std::vector<Int>(static_cast<std::size_t>(s.rank()), 1);
  CoverSpec from_class = cover_spec_from_json(j2, s);
  CHECK(from_class.k == 2);

  // On the one-holed torus the cutting class pairs nontrivially.
  Surface t = make_surface(1, 1);
  Json j3;
  j3["format"] = "obk-cover/1";
  j3["k"] = 2;
  j3["cutting_class"] = std::vector<Int>{0, 1};  // the b1 class
  CoverSpec tspec = cover_spec_from_json(j3, t);
  CHECK(tspec.lambda.values == std::vector<Int>{1, 0});  // <a1, b1> = 1, <b1, b1> = 0
}

TEST_CASE("movie files round trip") {
  MoviePresentation m = presets::case_movie(1, 4, 4);
  Json j = movie_to_json(m);
  MoviePresentation back = movie_from_json(j);
  CHECK(validate_movie(back).ok());
  CHECK(movie_to_json(back) == j);
  SingularityCensus c = singularity_census(back);
  CHECK(c.e_plus == 4);
  CHECK(c.h_minus == 1);

  SUBCASE("empty pages list is a parse error") {
    j["pages"] = Json::array();
    CHECK_THROWS_AS(movie_from_json(j), ParseError);
  }
  SUBCASE("region tags ride along") {
    j["events"][0]["region_tag"] = "outer annulus";
    MoviePresentation tagged = movie_from_json(j);
    REQUIRE(tagged.events[0].region_tag);
    CHECK(*tagged.events[0].region_tag == "outer annulus");
    CHECK(movie_to_json(tagged)["events"][0]["region_tag"] == "outer annulus");
  }
  SUBCASE("a movie with a bad b-arc parses but fails validation") {
    j["pages"][0]["b_arcs"][0]["negative"] = "P1";
    MoviePresentation bad = movie_from_json(j);
    CHECK(!validate_movie(bad).ok());
  }
}

TEST_CASE("scenario loading verifies certificates and hashes") {
  fs::path dir = temp_dir("scenario");
  Surface s = presets::prop12_surface(4, 4);
  TwistWord word = presets::prop12_word(4, 4, -1);
  CoverSpec spec = presets::prop12_cover_spec(4, 4);
  MoviePresentation movie = presets::case_movie(1, 4, 4);

  auto write_ref = [&](const std::string& name, const Json& j) {
    std::string content = j.dump(2) + "\n";
    write_file(dir / name, content);
    return ScenarioFileRef{name, fnv1a64_hex(content)};
  };
  Scenario sc;
  sc.openbooks.push_back({"base", write_ref("surface.json", surface_to_json(s)), twistword_to_string(word)});
  sc.covers.push_back({"cover", "base", write_ref("cover.json", cover_spec_to_json(spec, s))});
  ScenarioCertificate pos;
  pos.type = "positive_word";
  pos.openbook = "base";
  pos.search_depth = 1;
  sc.certificates.push_back(pos);
  ScenarioCertificate rel;
  rel.type = "cover_relation";
  rel.cover = "cover";
  sc.certificates.push_back(rel);
  ScenarioCertificate disk;
  disk.type = "ot_disk_movie";
  disk.openbook = "cover";
  disk.movie = write_ref("movie.json", movie_to_json(movie));
  sc.certificates.push_back(disk);
  write_file(dir / "scenario.json", scenario_to_json(sc).dump(2));

  LoadedScenario loaded = load_scenario(dir / "scenario.json", std::nullopt);
  CHECK(loaded.certificates.size() == 3);
  CHECK(loaded.links.size() == 1);

  auto res = classify("base", loaded.certificates, loaded.links);
  REQUIRE(std::holds_alternative<Verdict>(res));
  CHECK(std::get<Verdict>(res).main.classification == Classification::virtually_overtwisted);

  SUBCASE("hash mismatches are input errors") {
    Scenario broken = sc;
    broken.openbooks[0].surface.hash = "fnv1a64:0000000000000000";
    write_file(dir / "broken.json", scenario_to_json(broken).dump(2));
    CHECK_THROWS_AS(load_scenario(dir / "broken.json", std::nullopt), ParseError);
  }
  SUBCASE("a movie that fails recognition cannot enter as a disk certificate") {
    MoviePresentation bad = movie;
    bad.events[0].sign = 1;  // flips sl to 3
    Scenario broken = sc;
    broken.certificates[2].movie = write_ref("bad_movie.json", movie_to_json(bad));
    write_file(dir / "broken2.json", scenario_to_json(broken).dump(2));
    CHECK_THROWS_AS(load_scenario(dir / "broken2.json", std::nullopt), std::runtime_error);
  }
  SUBCASE("a failing positivity search is a domain rejection") {
    Scenario broken = sc;
    broken.certificates[0].search_depth = 0;  // the word is not yet positive
    write_file(dir / "broken4.json", scenario_to_json(broken).dump(2));
    try {
      load_scenario(dir / "broken4.json", std::nullopt);
      FAIL("expected failure");
    } catch (const ParseError&) {
      FAIL("verification failures are not parse errors");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("depth 0") != std::string::npos);
    }
    // A depth override can rescue it.
    CHECK_NOTHROW(load_scenario(dir / "broken4.json", 1));
  }
  SUBCASE("the movie must live on the linked cover") {
    MoviePresentation other = presets::case_movie(2, 3, 3);  // different cover topology
    Scenario broken = sc;
    broken.certificates[2].movie = write_ref("other_movie.json", movie_to_json(other));
    write_file(dir / "broken3.json", scenario_to_json(broken).dump(2));
    CHECK_THROWS_AS(load_scenario(dir / "broken3.json", std::nullopt), ParseError);
  }
}

TEST_CASE("hashing is stable") {
  CHECK(fnv1a64_hex("") == "fnv1a64:cbf29ce484222325");
  CHECK(fnv1a64_hex("obk") == fnv1a64_hex("obk"));
  CHECK(fnv1a64_hex("a") != fnv1a64_hex("b"));
}
