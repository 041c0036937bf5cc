#pragma once

#include "obk/words.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace obk {

enum class Classification { unknown, overtwisted, tight, virtually_overtwisted, universally_tight };

std::string to_string(Classification c);

/// Closed integer interval with an optional upper bound.
struct Interval {
  Int lo = 0;
  std::optional<Int> hi;
  bool operator==(const Interval&) const = default;
  bool is_point() const { return hi && *hi == lo; }
};

/// A verified piece of evidence attached to an open book node. Verification
/// happens before classification: a positive-word certificate replays its
/// rewrite chain, a disk certificate passes the movie recognizer, a cover
/// relation passes the kernel-preservation check.
struct Certificate {
  enum class Kind { positive_word, ot_disk_movie, external_axiom, cover_relation };
  Kind kind = Kind::external_axiom;
  std::string attached_to;   // node id; for cover_relation, the base node
  Int e_minus = 0;           // ot_disk_movie: negative elliptic count
  std::string statement;     // external_axiom: universally_tight | tight | overtwisted
  std::string citation;      // external_axiom source
  std::string cover_id;      // cover_relation: the covering node
  std::string provenance;
};

struct CoverLink {
  std::string base, cover;
};

struct DerivationStep {
  std::string rule;
  std::string citation;
  std::string node;
  std::string detail;
};

struct NodeVerdict {
  Classification classification = Classification::unknown;
  Interval n_bounds;                   // bounds for the overtwisted complexity
  std::optional<Interval> depth_B;     // binding depth; set when overtwisted
  std::optional<std::string> depth_L_note;  // Legendrian approximation bound
};

struct Verdict {
  std::string openbook;
  NodeVerdict main;
  std::map<std::string, NodeVerdict> related;
  std::vector<DerivationStep> derivation;
};

struct InconsistencyReport {
  std::vector<std::string> conflicts;
  bool consistent() const { return conflicts.empty(); }
};

/// Fixed-point application of the classification rules over the certificate
/// set. Returns the verdict for `openbook` together with verdicts for every
/// node linked through cover relations; a contradiction halts classification
/// and surfaces as an InconsistencyReport instead.
std::variant<Verdict, InconsistencyReport> classify(const std::string& openbook,
                                                    std::vector<Certificate> certificates,
                                                    std::vector<CoverLink> cover_links);

struct DepthReport {
  std::optional<Interval> depth_B;
  std::string note;
};

/// Binding-depth interval of a verdict, with the Legendrian-approximation
/// remark d(L) >= d(B) when it applies.
DepthReport depth_bounds(const Verdict& verdict);

/// Rule-level contradiction scan without producing a verdict.
InconsistencyReport check_consistency(const std::vector<Certificate>& certificates,
                                      const std::vector<CoverLink>& cover_links);

}  // namespace obk
