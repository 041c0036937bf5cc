// Command-line front end: loads preset and user files, runs the constructions
// and emits reports. Exit status: 0 success, 1 domain rejection, 2 input error.

#include "obk/formats.hpp"
#include "obk/presets.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>

namespace fs = std::filesystem;
using namespace obk;

namespace {

constexpr int kOk = 0, kDomainRejection = 1, kInputError = 2;

Json load_json(const fs::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string(), e.what());
  }
}

void emit(const Json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // Text output mirrors the JSON contract line by line.
  std::function<void(const Json&, int)> walk = [&](const Json& v, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (v.is_object()) {
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (it.value().is_object() || it.value().is_array()) {
          std::cout << pad << it.key() << ":\n";
          walk(it.value(), indent + 1);
        } else {
          std::cout << pad << it.key() << ": " << it.value().dump() << "\n";
        }
      }
    } else if (v.is_array()) {
      for (const auto& item : v) {
        if (item.is_object() || item.is_array()) {
          std::cout << pad << "-\n";
          walk(item, indent + 1);
        } else {
          std::cout << pad << "- " << item.dump() << "\n";
        }
      }
    } else {
      std::cout << pad << v.dump() << "\n";
    }
  };
  walk(j, 0);
}

int cmd_surface_info(const fs::path& file, bool as_json) {
  Surface s = surface_from_json(load_json(file));
  auto diag = validate_surface(s);
  Json j;
  j["format"] = "obk-surface-report/1";
  j["genus"] = s.genus();
  j["boundary_count"] = s.boundary_count();
  j["euler_characteristic"] = s.euler_characteristic();
  j["generators"] = s.generator_names();
  Json boundary = Json::array();
  for (int i = 1; i <= s.boundary_count(); ++i) {
    IntVec cls = s.boundary_class(i);
    Json row;
    row["index"] = i;
    row["word"] = word_to_string(s.boundary_words()[static_cast<std::size_t>(i - 1)], s.generator_names());
    row["class"] = std::vector<Int>(cls.data(), cls.data() + cls.size());
    boundary.push_back(std::move(row));
  }
  j["boundary"] = std::move(boundary);
  Json curves = Json::array();
  for (const Curve& c : s.curves()) {
    Json row;
    row["name"] = c.name;
    row["word"] = word_to_string(c.word, s.generator_names());
    row["kind"] = c.kind.boundary_parallel ? Json{{"boundary_parallel", c.kind.boundary_index}}
                                           : Json("interior");
    row["class"] = std::vector<Int>(c.homology.data(), c.homology.data() + c.homology.size());
    row["has_twist_action"] = c.pi1_automorphism.has_value();
    if (c.pants) row["pants"] = Json{{"x", c.pants->x}, {"y", c.pants->y}};
    curves.push_back(std::move(row));
  }
  j["curves"] = std::move(curves);
  Json rels = Json::array();
  for (const auto& r : s.relation_instances) {
    auto rep = verify_relation_instance(s, r);
    rels.push_back(Json{{"name", r.name},
                        {"level", rep.level == RelationLevel::pi1_exact ? "pi1-exact" : "homology-only"},
                        {"pass", rep.pass}});
  }
  j["relation_instances"] = std::move(rels);
  j["valid"] = diag.ok();
  if (!diag.ok()) j["diagnostics"] = diag.failures;
  emit(j, as_json);
  return diag.ok() ? kOk : kDomainRejection;
}

Json cover_report_json(const Surface& base, const CyclicCover& cover) {
  Json j;
  j["format"] = "obk-cover-report/1";
  j["k"] = cover.k();
  j["connected"] = cover.connected();
  j["components"] = cover.component_count();
  j["euler_characteristic"] = cover.total_euler_characteristic();
  j["boundary_count"] = cover.total_boundary_count();
  j["genus"] = cover.total_genus();
  Json boundary = Json::array();
  for (const auto& bl : cover.boundary_lifts())
    boundary.push_back(Json{{"name", bl.name},
                            {"base_index", bl.base_index},
                            {"degree", bl.degree},
                            {"min_sheet", bl.min_sheet}});
  j["boundary_lifts"] = std::move(boundary);
  Json lifts = Json::array();
  for (const Curve& c : base.curves()) {
    LiftedCurve lc = cover.lift_curve(c.name);
    Json comps = Json::array();
    for (const auto& comp : lc.components)
      comps.push_back(Json{{"name", comp.name}, {"degree", comp.degree}, {"sheets", comp.sheets}});
    lifts.push_back(Json{{"curve", c.name}, {"components", std::move(comps)}});
  }
  j["lift_table"] = std::move(lifts);
  return j;
}

int cmd_cover_build(const fs::path& surface_file, const fs::path& cover_file, bool as_json) {
  Surface base = surface_from_json(load_json(surface_file));
  CoverSpec spec = cover_spec_from_json(load_json(cover_file), base);
  CyclicCover cover = build_cyclic_cover(base, spec);
  emit(cover_report_json(base, cover), as_json);
  return kOk;
}

int cmd_lift(const fs::path& surface_file, const fs::path& cover_file, const std::string& word_text,
             bool as_json) {
  Surface base = surface_from_json(load_json(surface_file));
  CoverSpec spec = cover_spec_from_json(load_json(cover_file), base);
  CyclicCover cover = build_cyclic_cover(base, spec);
  TwistWord word = parse_twistword(word_text);
  for (const auto& [name, exp] : word.factors)
    if (!base.has_curve(name)) throw ParseError("word", "unknown curve '" + name + "'");

  Json j;
  j["format"] = "obk-lift-report/1";
  j["word"] = twistword_to_string(word.normalized());
  j["cover"] = cover_report_json(base, cover);
  auto res = cover.lift_monodromy(word);
  int exit_code = kOk;
  if (std::holds_alternative<TwistWord>(res)) {
    const TwistWord& lifted = std::get<TwistWord>(res);
    j["status"] = "lifted";
    j["lifted_word"] = twistword_to_string(lifted);
    auto comm = cover.check_commutativity(word, lifted);
    j["commutativity"] = Json{{"pass", comm.pass}, {"detail", comm.detail}};
    if (!comm.pass) exit_code = kDomainRejection;
  } else if (std::holds_alternative<CyclicCover::NotLiftable>(res)) {
    const auto& nl = std::get<CyclicCover::NotLiftable>(res);
    j["status"] = "not_liftable";
    j["diagnostics"] = Json{{"curve", nl.curve}, {"component_degree", nl.degree}, {"exponent", nl.exponent}};
    exit_code = kDomainRejection;
  } else {
    const auto& inc = std::get<CyclicCover::Inconclusive>(res);
    j["status"] = "inconclusive";
    j["diagnostics"] = Json{{"curve", inc.first_failure.curve},
                            {"component_degree", inc.first_failure.degree},
                            {"exponent", inc.first_failure.exponent},
                            {"note", inc.note}};
    exit_code = kDomainRejection;
  }
  emit(j, as_json);
  return exit_code;
}

int cmd_movie_check(const fs::path& file, bool as_json) {
  MoviePresentation movie = movie_from_json(load_json(file));
  auto diag = validate_movie(movie);
  Json j;
  j["format"] = "obk-movie-report/1";
  j["valid"] = diag.ok();
  if (!diag.ok()) {
    j["diagnostics"] = diag.failures;
    emit(j, as_json);
    return kDomainRejection;
  }
  SingularityCensus c = singularity_census(movie);
  j["census"] =
      Json{{"e_plus", c.e_plus}, {"e_minus", c.e_minus}, {"h_plus", c.h_plus}, {"h_minus", c.h_minus}};
  j["euler_characteristic"] = euler_characteristic(c);
  j["self_linking"] = self_linking(c);
  GirouxGraphs g = giroux_graphs(movie);
  j["giroux"] = Json{{"negative", Json{{"vertices", g.negative.vertices.size()},
                                       {"edges", g.negative.edges.size()},
                                       {"tree", g.negative.tree}}},
                     {"positive", Json{{"vertices", g.positive.vertices.size()},
                                       {"edges", g.positive.edges.size()},
                                       {"single_cycle", g.positive.single_cycle}}}};
  auto rec = recognize_ot_disk(movie);
  if (std::holds_alternative<OTDiskMovieCert>(rec)) {
    const auto& cert = std::get<OTDiskMovieCert>(rec);
    j["overtwisted_disk"] = Json{{"recognized", true},
                                 {"e_minus", cert.e_minus},
                                 {"level", cert.level},
                                 {"complexity_upper_bound", cert.e_minus}};
  } else {
    j["overtwisted_disk"] = Json{{"recognized", false},
                                 {"failed_conditions", std::get<OTDiskRejection>(rec).failed_conditions}};
  }
  emit(j, as_json);
  return kOk;
}

int cmd_classify(const fs::path& file, bool as_json, std::optional<int> depth) {
  LoadedScenario loaded = load_scenario(file, depth);
  std::string target = loaded.scenario.openbooks.empty() ? std::string("openbook")
                                                         : loaded.scenario.openbooks.front().id;
  auto res = classify(target, loaded.certificates, loaded.links);
  if (std::holds_alternative<InconsistencyReport>(res)) {
    Json j = inconsistency_to_json(std::get<InconsistencyReport>(res));
    j["notes"] = loaded.notes;
    emit(j, as_json);
    return kDomainRejection;
  }
  Json j = verdict_to_json(std::get<Verdict>(res));
  j["notes"] = loaded.notes;
  emit(j, as_json);
  return kOk;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ScenarioFileRef write_with_hash(const fs::path& dir, const std::string& name, const std::string& content) {
  write_file(dir / name, content);
  return {name, fnv1a64_hex(content)};
}

int cmd_preset(const std::string& name, int p, int q, long long n, long long alpha, long long beta,
               long long k, const fs::path& out_dir, bool as_json) {
  std::vector<std::string> written;
  fs::create_directories(out_dir);

  if (name == "prop12") {
    Surface s = presets::prop12_surface(p, q);
    TwistWord word = presets::prop12_word(p, q, n);
    CoverSpec spec = presets::prop12_cover_spec(p, q);
    int parity = presets::prop12_parity_case(p, q);

    auto surface_ref = write_with_hash(out_dir, "surface.json", dump(surface_to_json(s)));
    write_file(out_dir / "word.txt", twistword_to_string(word) + "\n");
    auto relations_ref =
        write_with_hash(out_dir, "relations.json", dump(relations_to_json(s.relation_instances)));
    auto cover_ref = write_with_hash(out_dir, "cover.json", dump(cover_spec_to_json(spec, s)));
    written = {"surface.json", "word.txt", "relations.json", "cover.json"};

    std::optional<ScenarioFileRef> movie_ref;
    if (parity == 1 || parity == 2) {
      MoviePresentation movie = presets::case_movie(parity, p, q);
      movie_ref = write_with_hash(out_dir, "movie.json", dump(movie_to_json(movie)));
      written.push_back("movie.json");
    }

    Scenario scenario;
    scenario.openbooks.push_back({"base", surface_ref, twistword_to_string(word)});
    scenario.covers.push_back({"cover", "base", cover_ref});
    scenario.relations.push_back(relations_ref);
    if (n == -1) {
      ScenarioCertificate pos;
      pos.type = "positive_word";
      pos.openbook = "base";
      pos.chain = {{"lantern", true, static_cast<std::size_t>(p + q - 2)}};
      pos.provenance = "lantern rewrite of the negative twist";
      scenario.certificates.push_back(std::move(pos));
      ScenarioCertificate rel;
      rel.type = "cover_relation";
      rel.cover = "cover";
      rel.provenance = "double cover from the parity-case cutting class";
      scenario.certificates.push_back(std::move(rel));
      if (movie_ref) {
        ScenarioCertificate disk;
        disk.type = "ot_disk_movie";
        disk.openbook = "cover";
        disk.movie = movie_ref;
        disk.provenance = "bundled transverse overtwisted disk movie";
        scenario.certificates.push_back(std::move(disk));
      }
    } else if (n >= 0) {
      ScenarioCertificate axiom;
      axiom.type = "external_axiom";
      axiom.openbook = "base";
      axiom.statement = "universally_tight";
      axiom.citation = "[EV, Example 5.2]";
      scenario.certificates.push_back(std::move(axiom));
    } else {
      // n <= -2: an overtwisted disk exists but no transcription is bundled;
      // the engine reports unknown.
      ScenarioCertificate rel;
      rel.type = "cover_relation";
      rel.cover = "cover";
      scenario.certificates.push_back(std::move(rel));
    }
    write_file(out_dir / "scenario.json", dump(scenario_to_json(scenario)));
    written.push_back("scenario.json");
  } else if (name == "example41") {
    Surface s = presets::example41_surface();
    TwistWord word = presets::example41_word(alpha, beta);
    CoverSpec spec = presets::example41_cover_spec(k);
    auto surface_ref = write_with_hash(out_dir, "surface.json", dump(surface_to_json(s)));
    write_file(out_dir / "word.txt", twistword_to_string(word) + "\n");
    auto relations_ref =
        write_with_hash(out_dir, "relations.json", dump(relations_to_json(s.relation_instances)));
    auto cover_ref = write_with_hash(out_dir, "cover.json", dump(cover_spec_to_json(spec, s)));
    written = {"surface.json", "word.txt", "relations.json", "cover.json"};

    Scenario scenario;
    scenario.openbooks.push_back({"base", surface_ref, twistword_to_string(word)});
    scenario.covers.push_back({"cover", "base", cover_ref});
    scenario.relations.push_back(relations_ref);
    if (auto cert = positivity_search(s, word, s.relation_instances, 3)) {
      ScenarioCertificate pos;
      pos.type = "positive_word";
      pos.openbook = "base";
      pos.chain = cert->chain;
      pos.provenance = "lantern rewrite after commuting disjoint boundary twists";
      scenario.certificates.push_back(std::move(pos));
    }
    write_file(out_dir / "scenario.json", dump(scenario_to_json(scenario)));
    written.push_back("scenario.json");
  } else if (name == "example43") {
    Surface s = presets::example43_surface();
    TwistWord word = presets::example43_word();
    CoverSpec spec = presets::example43_cover_spec();
    write_with_hash(out_dir, "surface.json", dump(surface_to_json(s)));
    write_file(out_dir / "word.txt", twistword_to_string(word) + "\n");
    write_with_hash(out_dir, "cover.json", dump(cover_spec_to_json(spec, s)));
    written = {"surface.json", "word.txt", "cover.json"};
  } else if (name == "case1" || name == "case2") {
    int parity = name == "case1" ? 1 : 2;
    Surface s = presets::prop12_surface(p, q);
    CoverSpec spec = presets::prop12_cover_spec(p, q);
    MoviePresentation movie = presets::case_movie(parity, p, q);
    write_with_hash(out_dir, "surface.json", dump(surface_to_json(s)));
    write_with_hash(out_dir, "cover.json", dump(cover_spec_to_json(spec, s)));
    write_with_hash(out_dir, "movie.json", dump(movie_to_json(movie)));
    written = {"surface.json", "cover.json", "movie.json"};
  } else {
    throw ParseError("preset", "unknown preset '" + name +
                                   "' (expected prop12, example41, example43, case1 or case2)");
  }

  Json j;
  j["format"] = "obk-preset-report/1";
  j["preset"] = name;
  j["out"] = out_dir.string();
  j["files"] = written;
  emit(j, as_json);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations with abstract open books: cyclic covers, lifted twist words, "
               "open book foliation movies and classification certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit JSON instead of text");

  auto* surface = app.add_subcommand("surface", "surface file operations");
  surface->fallthrough();
  surface->require_subcommand(1);
  auto* info = surface->add_subcommand("info", "summarize a surface file");
  info->fallthrough();
  std::string surface_file;
  info->add_option("file", surface_file, "obk-surface/1 file")->required();

  auto* cover = app.add_subcommand("cover", "cyclic cover operations");
  cover->fallthrough();
  cover->require_subcommand(1);
  auto* build = cover->add_subcommand("build", "build a cyclic cover from a spec");
  build->fallthrough();
  std::string cb_surface, cb_cover;
  build->add_option("surface", cb_surface, "obk-surface/1 file")->required();
  build->add_option("cover", cb_cover, "obk-cover/1 file")->required();

  auto* lift = app.add_subcommand("lift", "lift a twist word along a cyclic cover");
  lift->fallthrough();
  std::string l_surface, l_cover, l_word;
  lift->add_option("surface", l_surface, "obk-surface/1 file")->required();
  lift->add_option("cover", l_cover, "obk-cover/1 file")->required();
  lift->add_option("word", l_word, "twist word, e.g. \"T[a]^2 T[e]^-1\"")->required();

  auto* movie = app.add_subcommand("movie", "movie presentation operations");
  movie->fallthrough();
  movie->require_subcommand(1);
  auto* check = movie->add_subcommand("check", "validate and analyze a movie file");
  check->fallthrough();
  std::string m_file;
  check->add_option("file", m_file, "obk-movie/1 file")->required();

  auto* cls = app.add_subcommand("classify", "classify a scenario of certificates");
  cls->fallthrough();
  std::string s_file;
  int depth = -1;
  cls->add_option("scenario", s_file, "obk-scenario/1 file")->required();
  cls->add_option("--depth", depth, "positivity search depth override");

  auto* preset = app.add_subcommand("preset", "generate bundled example data");
  preset->fallthrough();
  std::string preset_name;
  int p = 4, q = 4;
  long long n = -1, alpha = 1, beta = 1, k = 2;
  std::string out_dir;
  preset->add_option("name", preset_name, "prop12 | example41 | example43 | case1 | case2")->required();
  preset->add_option("--p", p, "left hole count parameter (default 4)");
  preset->add_option("--q", q, "right hole count parameter (default 4)");
  preset->add_option("--n", n, "twist exponent along alpha (default -1)");
  preset->add_option("--alpha", alpha, "exponent parameter alpha (default 1)");
  preset->add_option("--beta", beta, "exponent parameter beta (default 1)");
  preset->add_option("--k", k, "cover degree (default 2)");
  preset->add_option("--out", out_dir, "output directory (default $OBK_PRESET_DIR or ./presets)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (info->parsed()) return cmd_surface_info(surface_file, as_json);
    if (build->parsed()) return cmd_cover_build(cb_surface, cb_cover, as_json);
    if (lift->parsed()) return cmd_lift(l_surface, l_cover, l_word, as_json);
    if (check->parsed()) return cmd_movie_check(m_file, as_json);
    if (cls->parsed())
      return cmd_classify(s_file, as_json, depth >= 0 ? std::optional<int>(depth) : std::nullopt);
    if (preset->parsed()) {
      fs::path dir = out_dir;
      if (dir.empty()) {
        const char* env = std::getenv("OBK_PRESET_DIR");
        dir = env ? fs::path(env) : fs::path("presets");
      }
      return cmd_preset(preset_name, p, q, n, alpha, beta, k, dir, as_json);
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainRejection;
  }
  return kInputError;
}
