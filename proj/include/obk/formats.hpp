#pragma once

#include "obk/certify.hpp"
#include "obk/covers.hpp"
#include "obk/foliation.hpp"
#include "obk/mcg.hpp"
#include "obk/surface.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace obk {

using Json = nlohmann::json;

/// Thrown on malformed input files; `where` is a JSON-pointer-style location.
struct ParseError : std::runtime_error {
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where(where) {}
  std::string where;
};

/// Non-cryptographic content hash used for cross-file references.
std::string fnv1a64_hex(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// --- obk-surface/1 -----------------------------------------------------------

Json surface_to_json(const Surface& s);
Surface surface_from_json(const Json& j);

// --- obk-relations/1 ---------------------------------------------------------

Json relations_to_json(const std::vector<RelationInstance>& relations);
std::vector<RelationInstance> relations_from_json(const Json& j);

// --- obk-cover/1 -------------------------------------------------------------

Json cover_spec_to_json(const CoverSpec& spec, const Surface& base);
CoverSpec cover_spec_from_json(const Json& j, const Surface& base);

// --- obk-movie/1 -------------------------------------------------------------

Json movie_to_json(const MoviePresentation& movie);
MoviePresentation movie_from_json(const Json& j);

// --- obk-scenario/1 ----------------------------------------------------------

struct ScenarioFileRef {
  std::string path;
  std::string hash;  // "fnv1a64:..." or empty to skip verification
};

struct ScenarioOpenBook {
  std::string id;
  ScenarioFileRef surface;
  std::string word;  // twist word text
};

struct ScenarioCover {
  std::string id;
  std::string base;
  ScenarioFileRef spec;
};

struct ScenarioCertificate {
  std::string type;  // positive_word | ot_disk_movie | external_axiom | cover_relation
  std::string openbook;
  std::optional<ScenarioFileRef> movie;
  std::vector<RewriteStep> chain;
  std::optional<int> search_depth;
  std::string statement, citation, cover, provenance;
};

struct Scenario {
  std::vector<ScenarioOpenBook> openbooks;
  std::vector<ScenarioCover> covers;
  std::vector<ScenarioFileRef> relations;
  std::vector<ScenarioCertificate> certificates;
};

Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

/// Loads a scenario, resolves and hash-checks every referenced file, verifies
/// each certificate with its producing module, and hands the verified set to
/// the classification engine.
struct LoadedScenario {
  Scenario scenario;
  std::map<std::string, Surface> surfaces;            // by open book id
  std::map<std::string, TwistWord> words;             // by open book id
  std::map<std::string, CyclicCover> covers;          // by cover id
  std::vector<RelationInstance> relation_registry;
  std::vector<Certificate> certificates;
  std::vector<CoverLink> links;
  std::vector<std::string> notes;
};

LoadedScenario load_scenario(const std::filesystem::path& file, std::optional<int> depth_override);

// --- obk-verdict/1 -----------------------------------------------------------

Json verdict_to_json(const Verdict& v);
Json inconsistency_to_json(const InconsistencyReport& r);

}  // namespace obk
