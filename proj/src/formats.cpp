#include "obk/formats.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace obk {

namespace {

std::string require_string(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) throw ParseError(where, "missing string field '" + key + "'");
  return j[key].get<std::string>();
}

Json require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where, "missing field '" + key + "'");
  return j[key];
}

void require_format(const Json& j, const std::string& tag, const std::string& where) {
  if (require_string(j, "format", where) != tag)
    throw ParseError(where, "expected format '" + tag + "'");
}

std::string factors_to_text(const std::vector<std::pair<std::string, Int>>& factors) {
  TwistWord w;
  w.factors = factors;
  return twistword_to_string(w);
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xf);
  return "fnv1a64:" + os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

// --- surfaces ---------------------------------------------------------------

Json surface_to_json(const Surface& s) {
  Json j;
  j["format"] = "obk-surface/1";
  j["genus"] = s.genus();
  j["boundary_count"] = s.boundary_count();
  Json curves = Json::array();
  for (const Curve& c : s.curves()) {
    Json jc;
    jc["name"] = c.name;
    jc["word"] = word_to_string(c.word, s.generator_names());
    if (c.kind.boundary_parallel) jc["kind"] = Json{{"boundary_parallel", c.kind.boundary_index}};
    else jc["kind"] = "interior";
    if (c.pants) jc["pants"] = Json{{"x", c.pants->x}, {"y", c.pants->y}};
    auto dump_map = [&](const GeneratorMap& m) {
      Json out;
      for (int i = 0; i < m.rank(); ++i)
        out[s.generator_names()[static_cast<std::size_t>(i)]] = word_to_string(m.image(i), s.generator_names());
      return out;
    };
    if (c.pi1_automorphism) jc["pi1_automorphism"] = dump_map(*c.pi1_automorphism);
    if (c.pi1_automorphism_inverse) jc["pi1_automorphism_inverse"] = dump_map(*c.pi1_automorphism_inverse);
    curves.push_back(std::move(jc));
  }
  j["curves"] = std::move(curves);
  Json rels = Json::array();
  for (const auto& r : s.relation_instances) {
    rels.push_back(Json{{"name", r.name},
                        {"lhs", factors_to_text(r.lhs)},
                        {"rhs", factors_to_text(r.rhs)},
                        {"citation", r.citation}});
  }
  j["relation_instances"] = std::move(rels);
  return j;
}

Surface surface_from_json(const Json& j) {
  require_format(j, "obk-surface/1", "/");
  if (!j.contains("genus") || !j["genus"].is_number_integer())
    throw ParseError("/genus", "missing integer genus");
  if (!j.contains("boundary_count") || !j["boundary_count"].is_number_integer())
    throw ParseError("/boundary_count", "missing integer boundary_count");
  Surface s;
  try {
    s = make_surface(j["genus"].get<int>(), j["boundary_count"].get<int>());
  } catch (const std::invalid_argument& e) {
    throw ParseError("/genus", e.what());
  }
  const auto& names = s.generator_names();
  for (std::size_t i = 0; i < j.value("curves", Json::array()).size(); ++i) {
    const Json& jc = j["curves"][i];
    std::string where = "/curves/" + std::to_string(i);
    Curve c;
    c.name = require_string(jc, "name", where);
    try {
      c.word = parse_word(require_string(jc, "word", where), names);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + "/word", e.what());
    }
    c.homology = c.word.abelianized(s.rank());
    Json kind = require(jc, "kind", where);
    if (kind.is_string() && kind.get<std::string>() == "interior") {
      c.kind = CurveKind::interior();
    } else if (kind.is_object() && kind.contains("boundary_parallel")) {
      c.kind = CurveKind::boundary(kind["boundary_parallel"].get<int>());
    } else {
      throw ParseError(where + "/kind", "expected \"interior\" or {\"boundary_parallel\": i}");
    }
    if (jc.contains("pants"))
      c.pants = PantsRecord{require_string(jc["pants"], "x", where + "/pants"),
                            require_string(jc["pants"], "y", where + "/pants")};
    auto load_map = [&](const Json& jm, const std::string& w) {
      std::vector<Word> images(names.size());
      for (std::size_t g = 0; g < names.size(); ++g) {
        if (!jm.contains(names[g])) throw ParseError(w, "missing image of generator " + names[g]);
        try {
          images[g] = parse_word(jm[names[g]].get<std::string>(), names);
        } catch (const std::invalid_argument& e) {
          throw ParseError(w + "/" + names[g], e.what());
        }
      }
      return GeneratorMap(std::move(images));
    };
    if (jc.contains("pi1_automorphism"))
      c.pi1_automorphism = load_map(jc["pi1_automorphism"], where + "/pi1_automorphism");
    if (jc.contains("pi1_automorphism_inverse"))
      c.pi1_automorphism_inverse =
          load_map(jc["pi1_automorphism_inverse"], where + "/pi1_automorphism_inverse");
    try {
      s.add_curve(std::move(c));
    } catch (const std::invalid_argument& e) {
      throw ParseError(where, e.what());
    }
  }
  for (std::size_t i = 0; i < j.value("relation_instances", Json::array()).size(); ++i) {
    const Json& jr = j["relation_instances"][i];
    std::string where = "/relation_instances/" + std::to_string(i);
    RelationInstance r;
    r.name = require_string(jr, "name", where);
    try {
      r.lhs = parse_twistword(require_string(jr, "lhs", where)).factors;
      r.rhs = parse_twistword(require_string(jr, "rhs", where)).factors;
    } catch (const std::invalid_argument& e) {
      throw ParseError(where, e.what());
    }
    r.citation = jr.value("citation", "");
    s.relation_instances.push_back(std::move(r));
  }
  return s;
}

// --- relations ----------------------------------------------------------------

Json relations_to_json(const std::vector<RelationInstance>& relations) {
  Json j;
  j["format"] = "obk-relations/1";
  Json rels = Json::array();
  for (const auto& r : relations)
    rels.push_back(Json{{"name", r.name},
                        {"lhs", factors_to_text(r.lhs)},
                        {"rhs", factors_to_text(r.rhs)},
                        {"citation", r.citation}});
  j["relations"] = std::move(rels);
  return j;
}

std::vector<RelationInstance> relations_from_json(const Json& j) {
  require_format(j, "obk-relations/1", "/");
  std::vector<RelationInstance> out;
  for (std::size_t i = 0; i < j.value("relations", Json::array()).size(); ++i) {
    const Json& jr = j["relations"][i];
    std::string where = "/relations/" + std::to_string(i);
    RelationInstance r;
    r.name = require_string(jr, "name", where);
    try {
      r.lhs = parse_twistword(require_string(jr, "lhs", where)).factors;
      r.rhs = parse_twistword(require_string(jr, "rhs", where)).factors;
    } catch (const std::invalid_argument& e) {
      throw ParseError(where, e.what());
    }
    r.citation = jr.value("citation", "");
    out.push_back(std::move(r));
  }
  return out;
}

// --- cover specs ---------------------------------------------------------------

Json cover_spec_to_json(const CoverSpec& spec, const Surface& base) {
  Json j;
  j["format"] = "obk-cover/1";
  j["k"] = spec.k;
  Json lambda;
  for (int i = 0; i < base.rank(); ++i)
    lambda[base.generator_names()[static_cast<std::size_t>(i)]] =
        spec.lambda.values[static_cast<std::size_t>(i)];
  j["lambda"] = std::move(lambda);
  return j;
}

CoverSpec cover_spec_from_json(const Json& j, const Surface& base) {
  require_format(j, "obk-cover/1", "/");
  if (!j.contains("k") || !j["k"].is_number_integer()) throw ParseError("/k", "missing integer k");
  CoverSpec spec;
  spec.k = j["k"].get<Int>();
  if (j.contains("lambda")) {
    spec.lambda.values.assign(static_cast<std::size_t>(base.rank()), 0);
    for (auto it = j["lambda"].begin(); it != j["lambda"].end(); ++it) {
      auto names = base.generator_names();
      auto pos = std::find(names.begin(), names.end(), it.key());
      if (pos == names.end()) throw ParseError("/lambda", "unknown generator '" + it.key() + "'");
      spec.lambda.values[static_cast<std::size_t>(pos - names.begin())] = it.value().get<Int>();
    }
  } else if (j.contains("cutting_class")) {
    IntVec cls(base.rank());
    const Json& arr = j["cutting_class"];
    if (!arr.is_array() || static_cast<int>(arr.size()) != base.rank())
      throw ParseError("/cutting_class", "expected an array of length " + std::to_string(base.rank()));
    for (int i = 0; i < base.rank(); ++i) cls[i] = arr[static_cast<std::size_t>(i)].get<Int>();
    spec = cover_spec_from_cutting_class(base, spec.k, cls);
  } else {
    throw ParseError("/", "cover spec needs 'lambda' or 'cutting_class'");
  }
  return spec;
}

// --- movies ---------------------------------------------------------------------

Json movie_to_json(const MoviePresentation& m) {
  Json j;
  j["format"] = "obk-movie/1";
  j["surface"] = Json{{"genus", m.surface.genus},
                      {"boundary_count", m.surface.boundary_count},
                      {"binding", m.surface.binding}};
  Json pages = Json::array();
  for (const auto& p : m.pages) {
    Json jp;
    jp["t"] = p.t;
    Json ells = Json::array();
    for (const auto& e : p.elliptics)
      ells.push_back(Json{{"id", e.id}, {"sign", e.sign}, {"binding", e.binding}});
    jp["elliptics"] = std::move(ells);
    Json as = Json::array();
    for (const auto& a : p.a_arcs)
      as.push_back(Json{{"id", a.id}, {"elliptic", a.elliptic}, {"braid_endpoint", a.braid_endpoint}});
    jp["a_arcs"] = std::move(as);
    Json bs = Json::array();
    for (const auto& b : p.b_arcs)
      bs.push_back(Json{{"id", b.id}, {"positive", b.positive_end}, {"negative", b.negative_end}});
    jp["b_arcs"] = std::move(bs);
    pages.push_back(std::move(jp));
  }
  j["pages"] = std::move(pages);
  Json events = Json::array();
  for (const auto& ev : m.events) {
    Json je;
    je["t"] = ev.t;
    je["sign"] = ev.sign;
    je["merged"] = Json::array({ev.merged[0], ev.merged[1]});
    je["produced"] = Json::array({ev.produced[0], ev.produced[1]});
    je["incident_elliptics"] = ev.incident_elliptics;
    if (ev.region_tag) je["region_tag"] = *ev.region_tag;
    events.push_back(std::move(je));
  }
  j["events"] = std::move(events);
  j["closure_map"] = Json{{"elliptics", m.closure.elliptics},
                          {"arcs", m.closure.arcs},
                          {"braid_endpoints", m.closure.braid_endpoints}};
  return j;
}

MoviePresentation movie_from_json(const Json& j) {
  require_format(j, "obk-movie/1", "/");
  MoviePresentation m;
  Json js = require(j, "surface", "/");
  m.surface.genus = require(js, "genus", "/surface").get<int>();
  m.surface.boundary_count = require(js, "boundary_count", "/surface").get<int>();
  for (const auto& b : js.value("binding", Json::array())) m.surface.binding.push_back(b.get<std::string>());

  Json pages = require(j, "pages", "/");
  if (!pages.is_array() || pages.empty()) throw ParseError("/pages", "movie needs a non-empty page list");
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const Json& jp = pages[i];
    std::string where = "/pages/" + std::to_string(i);
    PageConfig p;
    p.t = require(jp, "t", where).get<double>();
    for (const auto& je : jp.value("elliptics", Json::array())) {
      p.elliptics.push_back({require_string(je, "id", where + "/elliptics"),
                             require(je, "sign", where + "/elliptics").get<int>(),
                             require_string(je, "binding", where + "/elliptics")});
    }
    for (const auto& ja : jp.value("a_arcs", Json::array())) {
      p.a_arcs.push_back({require_string(ja, "id", where + "/a_arcs"),
                          require_string(ja, "elliptic", where + "/a_arcs"),
                          require_string(ja, "braid_endpoint", where + "/a_arcs")});
    }
    for (const auto& jb : jp.value("b_arcs", Json::array())) {
      p.b_arcs.push_back({require_string(jb, "id", where + "/b_arcs"),
                          require_string(jb, "positive", where + "/b_arcs"),
                          require_string(jb, "negative", where + "/b_arcs")});
    }
    m.pages.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < j.value("events", Json::array()).size(); ++i) {
    const Json& je = j["events"][i];
    std::string where = "/events/" + std::to_string(i);
    HyperbolicEvent ev;
    ev.t = require(je, "t", where).get<double>();
    ev.sign = require(je, "sign", where).get<int>();
    Json merged = require(je, "merged", where), produced = require(je, "produced", where);
    if (!merged.is_array() || merged.size() != 2 || !produced.is_array() || produced.size() != 2)
      throw ParseError(where, "a saddle merges exactly two arcs into two arcs");
    ev.merged = {merged[0].get<std::string>(), merged[1].get<std::string>()};
    ev.produced = {produced[0].get<std::string>(), produced[1].get<std::string>()};
    for (const auto& inc : je.value("incident_elliptics", Json::array()))
      ev.incident_elliptics.push_back(inc.get<std::string>());
    if (je.contains("region_tag")) ev.region_tag = je["region_tag"].get<std::string>();
    m.events.push_back(std::move(ev));
  }
  Json jc = require(j, "closure_map", "/");
  auto load_str_map = [&](const char* key) {
    std::map<std::string, std::string> out;
    Json sub = jc.value(key, Json::object());
    for (auto it = sub.begin(); it != sub.end(); ++it) out[it.key()] = it.value().get<std::string>();
    return out;
  };
  m.closure.elliptics = load_str_map("elliptics");
  m.closure.arcs = load_str_map("arcs");
  m.closure.braid_endpoints = load_str_map("braid_endpoints");
  return m;
}

// --- scenarios -------------------------------------------------------------------

namespace {

Json file_ref_to_json(const ScenarioFileRef& r) { return Json{{"path", r.path}, {"hash", r.hash}}; }

ScenarioFileRef file_ref_from_json(const Json& j, const std::string& where) {
  return {require_string(j, "path", where), j.value("hash", "")};
}

}  // namespace

Json scenario_to_json(const Scenario& s) {
  Json j;
  j["format"] = "obk-scenario/1";
  Json books = Json::array();
  for (const auto& b : s.openbooks)
    books.push_back(Json{{"id", b.id}, {"surface", file_ref_to_json(b.surface)}, {"word", b.word}});
  j["openbooks"] = std::move(books);
  Json covers = Json::array();
  for (const auto& c : s.covers)
    covers.push_back(Json{{"id", c.id}, {"base", c.base}, {"spec", file_ref_to_json(c.spec)}});
  j["covers"] = std::move(covers);
  Json rels = Json::array();
  for (const auto& r : s.relations) rels.push_back(file_ref_to_json(r));
  j["relations"] = std::move(rels);
  Json certs = Json::array();
  for (const auto& c : s.certificates) {
    Json jc;
    jc["type"] = c.type;
    if (!c.openbook.empty()) jc["openbook"] = c.openbook;
    if (c.movie) jc["movie"] = file_ref_to_json(*c.movie);
    if (!c.chain.empty()) {
      Json chain = Json::array();
      for (const auto& step : c.chain)
        chain.push_back(Json{{"instance", step.instance},
                             {"direction", step.lhs_to_rhs ? "lhs_to_rhs" : "rhs_to_lhs"},
                             {"position", step.position}});
      jc["chain"] = std::move(chain);
    }
    if (c.search_depth) jc["search_depth"] = *c.search_depth;
    if (!c.statement.empty()) jc["statement"] = c.statement;
    if (!c.citation.empty()) jc["citation"] = c.citation;
    if (!c.cover.empty()) jc["cover"] = c.cover;
    if (!c.provenance.empty()) jc["provenance"] = c.provenance;
    certs.push_back(std::move(jc));
  }
  j["certificates"] = std::move(certs);
  return j;
}

Scenario scenario_from_json(const Json& j) {
  require_format(j, "obk-scenario/1", "/");
  Scenario s;
  for (std::size_t i = 0; i < j.value("openbooks", Json::array()).size(); ++i) {
    const Json& jb = j["openbooks"][i];
    std::string where = "/openbooks/" + std::to_string(i);
    s.openbooks.push_back({require_string(jb, "id", where),
                           file_ref_from_json(require(jb, "surface", where), where + "/surface"),
                           require_string(jb, "word", where)});
  }
  for (std::size_t i = 0; i < j.value("covers", Json::array()).size(); ++i) {
    const Json& jc = j["covers"][i];
    std::string where = "/covers/" + std::to_string(i);
    s.covers.push_back({require_string(jc, "id", where), require_string(jc, "base", where),
                        file_ref_from_json(require(jc, "spec", where), where + "/spec")});
  }
  for (std::size_t i = 0; i < j.value("relations", Json::array()).size(); ++i)
    s.relations.push_back(file_ref_from_json(j["relations"][i], "/relations/" + std::to_string(i)));
  for (std::size_t i = 0; i < j.value("certificates", Json::array()).size(); ++i) {
    const Json& jc = j["certificates"][i];
    std::string where = "/certificates/" + std::to_string(i);
    ScenarioCertificate c;
    c.type = require_string(jc, "type", where);
    c.openbook = jc.value("openbook", "");
    if (jc.contains("movie")) c.movie = file_ref_from_json(jc["movie"], where + "/movie");
    for (const auto& js : jc.value("chain", Json::array())) {
      RewriteStep step;
      step.instance = require_string(js, "instance", where + "/chain");
      step.lhs_to_rhs = js.value("direction", "lhs_to_rhs") == "lhs_to_rhs";
      step.position = js.value("position", 0u);
      c.chain.push_back(std::move(step));
    }
    if (jc.contains("search_depth")) c.search_depth = jc["search_depth"].get<int>();
    c.statement = jc.value("statement", "");
    c.citation = jc.value("citation", "");
    c.cover = jc.value("cover", "");
    c.provenance = jc.value("provenance", "");
    s.certificates.push_back(std::move(c));
  }
  return s;
}

LoadedScenario load_scenario(const std::filesystem::path& file, std::optional<int> depth_override) {
  LoadedScenario out;
  std::filesystem::path dir = file.parent_path();
  Json j;
  try {
    j = Json::parse(read_file(file));
  } catch (const Json::parse_error& e) {
    throw ParseError(file.string(), e.what());
  }
  out.scenario = scenario_from_json(j);

  auto load_checked = [&](const ScenarioFileRef& ref) {
    std::string content = read_file(dir / ref.path);
    if (!ref.hash.empty() && fnv1a64_hex(content) != ref.hash)
      throw ParseError(ref.path, "content hash mismatch");
    try {
      return Json::parse(content);
    } catch (const Json::parse_error& e) {
      throw ParseError(ref.path, e.what());
    }
  };

  for (const auto& b : out.scenario.openbooks) {
    Surface s = surface_from_json(load_checked(b.surface));
    auto diag = validate_surface(s);
    if (!diag.ok()) throw ParseError(b.surface.path, "invalid surface: " + diag.failures.front());
    TwistWord w = parse_twistword(b.word);
    for (const auto& [name, exp] : w.factors)
      if (!s.has_curve(name)) throw ParseError(b.surface.path, "word references unknown curve '" + name + "'");
    for (const auto& r : s.relation_instances) out.relation_registry.push_back(r);
    out.surfaces.emplace(b.id, std::move(s));
    out.words.emplace(b.id, std::move(w));
  }
  for (const auto& ref : out.scenario.relations) {
    for (auto& r : relations_from_json(load_checked(ref))) out.relation_registry.push_back(std::move(r));
  }
  for (const auto& c : out.scenario.covers) {
    auto it = out.surfaces.find(c.base);
    if (it == out.surfaces.end()) throw ParseError(c.spec.path, "cover base '" + c.base + "' not declared");
    CoverSpec spec = cover_spec_from_json(load_checked(c.spec), it->second);
    out.covers.emplace(c.id, build_cyclic_cover(it->second, spec));
  }

  for (const auto& c : out.scenario.certificates) {
    Certificate cert;
    cert.provenance = c.provenance;
    if (c.type == "positive_word") {
      auto sit = out.surfaces.find(c.openbook);
      if (sit == out.surfaces.end()) throw ParseError("certificates", "unknown open book '" + c.openbook + "'");
      const Surface& s = sit->second;
      TwistWord w = out.words.at(c.openbook);
      // A certificate whose mathematical claim fails to verify is a domain
      // rejection, not a malformed file.
      if (!c.chain.empty()) {
        TwistWord cur = w;
        for (const auto& step : c.chain) {
          const RelationInstance* inst = nullptr;
          for (const auto& r : out.relation_registry)
            if (r.name == step.instance) inst = &r;
          if (!inst) throw ParseError("certificates", "unknown relation instance '" + step.instance + "'");
          auto rep = verify_relation_instance(s, *inst);
          if (!rep.pass)
            throw std::runtime_error("relation '" + inst->name + "' fails verification");
          try {
            cur = rewrite_with_relation(s, cur, *inst, step.position, step.lhs_to_rhs);
          } catch (const std::invalid_argument& e) {
            throw std::runtime_error("rewrite chain does not replay: " + std::string(e.what()));
          }
        }
        if (!cur.all_positive())
          throw std::runtime_error("rewrite chain does not end in a positive word");
        out.notes.push_back("positive word for '" + c.openbook + "' verified by replaying " +
                            std::to_string(c.chain.size()) + " rewrite(s)");
      } else {
        int depth = depth_override.value_or(c.search_depth.value_or(3));
        auto cert_opt = positivity_search(s, w, out.relation_registry, depth);
        if (!cert_opt)
          throw std::runtime_error("positivity search found no positive word at depth " +
                                   std::to_string(depth));
        out.notes.push_back("positive word for '" + c.openbook + "' found at depth " +
                            std::to_string(cert_opt->chain.size()));
      }
      cert.kind = Certificate::Kind::positive_word;
      cert.attached_to = c.openbook;
    } else if (c.type == "ot_disk_movie") {
      if (!c.movie) throw ParseError("certificates", "ot_disk_movie certificate needs a movie file");
      MoviePresentation movie = movie_from_json(load_checked(*c.movie));
      auto rec = recognize_ot_disk(movie);
      if (std::holds_alternative<OTDiskRejection>(rec))
        throw std::runtime_error("movie " + c.movie->path + " rejected: " +
                                 std::get<OTDiskRejection>(rec).failed_conditions.front());
      // The movie surface must match the node the certificate attaches to.
      auto cit = out.covers.find(c.openbook);
      if (cit != out.covers.end()) {
        const CyclicCover& cover = cit->second;
        if (movie.surface.genus != cover.total_genus() ||
            movie.surface.boundary_count != cover.total_boundary_count())
          throw ParseError(c.movie->path, "movie surface does not match the cover topology");
        std::set<std::string> lifts;
        for (const auto& bl : cover.boundary_lifts()) lifts.insert(bl.name);
        for (const auto& b : movie.surface.binding)
          if (!lifts.count(b))
            throw ParseError(c.movie->path, "movie binding '" + b + "' is not a boundary lift of the cover");
      } else if (auto sit = out.surfaces.find(c.openbook); sit != out.surfaces.end()) {
        if (movie.surface.genus != sit->second.genus() ||
            movie.surface.boundary_count != sit->second.boundary_count())
          throw ParseError(c.movie->path, "movie surface does not match the open book page");
      }
      cert.kind = Certificate::Kind::ot_disk_movie;
      cert.attached_to = c.openbook;
      cert.e_minus = std::get<OTDiskMovieCert>(rec).e_minus;
      out.notes.push_back("transverse overtwisted disk on '" + c.openbook + "' with e_- = " +
                          std::to_string(cert.e_minus));
    } else if (c.type == "external_axiom") {
      cert.kind = Certificate::Kind::external_axiom;
      cert.attached_to = c.openbook;
      cert.statement = c.statement;
      cert.citation = c.citation;
    } else if (c.type == "cover_relation") {
      auto cit = out.covers.find(c.cover);
      if (cit == out.covers.end()) throw ParseError("certificates", "unknown cover '" + c.cover + "'");
      std::string base;
      for (const auto& sc : out.scenario.covers)
        if (sc.id == c.cover) base = sc.base;
      const CyclicCover& cover = cit->second;
      if (!cover.preserves_kernel(out.words.at(base)))
        throw std::runtime_error("monodromy does not preserve ker(lambda); no lift along cover '" +
                                 c.cover + "'");
      if (!cover.connected())
        out.notes.push_back("warning: cover '" + c.cover + "' is disconnected");
      cert.kind = Certificate::Kind::cover_relation;
      cert.attached_to = base;
      cert.cover_id = c.cover;
      out.links.push_back({base, c.cover});
      out.notes.push_back("cover relation '" + base + "' -> '" + c.cover +
                          "' verified at the homology level");
    } else {
      throw ParseError("certificates", "unknown certificate type '" + c.type + "'");
    }
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

// --- verdicts --------------------------------------------------------------------

namespace {

Json interval_to_json(const Interval& iv) {
  Json j = Json::array();
  j.push_back(iv.lo);
  if (iv.hi) j.push_back(*iv.hi);
  else j.push_back(nullptr);
  return j;
}

Json node_verdict_to_json(const NodeVerdict& v) {
  Json j;
  j["classification"] = to_string(v.classification);
  j["n_bounds"] = interval_to_json(v.n_bounds);
  if (v.depth_B) j["depth_B"] = interval_to_json(*v.depth_B);
  else j["depth_B"] = nullptr;
  if (v.depth_L_note) j["depth_L"] = *v.depth_L_note;
  return j;
}

}  // namespace

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["format"] = "obk-verdict/1";
  j["openbook"] = v.openbook;
  j.update(node_verdict_to_json(v.main));
  Json rel;
  for (const auto& [id, nv] : v.related) rel[id] = node_verdict_to_json(nv);
  j["related"] = std::move(rel);
  Json deriv = Json::array();
  for (const auto& step : v.derivation)
    deriv.push_back(Json{{"rule", step.rule},
                         {"citation", step.citation},
                         {"node", step.node},
                         {"inputs", step.detail}});
  j["derivation"] = std::move(deriv);
  j["consistent"] = true;
  return j;
}

Json inconsistency_to_json(const InconsistencyReport& r) {
  Json j;
  j["format"] = "obk-verdict/1";
  j["consistent"] = false;
  j["conflicts"] = r.conflicts;
  return j;
}

}  // namespace obk
