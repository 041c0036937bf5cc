#pragma once

#include "obk/surface.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace obk {

/// A Dehn-twist word: ordered factors (curve name, nonzero exponent).
/// The word acts as a composition with the rightmost factor applied first,
/// matching the usual T_a T_b notation.
struct TwistWord {
  std::vector<std::pair<std::string, Int>> factors;

  bool operator==(const TwistWord&) const = default;

  /// Merges adjacent equal-name factors and drops zero exponents. Idempotent.
  TwistWord normalized() const;
  TwistWord inverse() const;
  TwistWord operator*(const TwistWord& o) const;

  bool all_positive() const;

  /// Expansion into single twists T_c^{+1} / T_c^{-1}.
  std::vector<std::pair<std::string, int>> letters() const;
  static TwistWord from_letters(const std::vector<std::pair<std::string, int>>& ls);
};

std::string twistword_to_string(const TwistWord& w);
TwistWord parse_twistword(const std::string& text);  // "T[a]^2 T[e]^-1 ..."

/// Action on first homology; preserves the intersection form.
struct HomologyAction {
  IntMat matrix;
};

/// Matrix of x -> x + <[c], x>[c] for the positive twist along the curve.
HomologyAction twist_transvection(const Surface& s, const std::string& curve_name);
HomologyAction transvection_along(const Surface& s, const IntVec& curve_class);

/// Ordered product of transvection powers, rightmost factor applied first.
HomologyAction homology_action(const Surface& s, const TwistWord& w);

/// Image of a generator under the composite declared fundamental-group action.
/// Requires every factor's curve to declare an automorphism (and, for negative
/// exponents, its inverse).
Word pi1_apply(const Surface& s, const TwistWord& w, int generator_index);

enum class RelationLevel { pi1_exact, homology_only };

struct RelationReport {
  RelationLevel level = RelationLevel::homology_only;
  bool pass = false;
  std::vector<std::string> notes;
};

/// Compares the two sides of a relation instance, at the fundamental-group
/// level when every involved curve declares its twist action, otherwise only
/// on homology (necessary, not sufficient; flagged in the notes). The
/// fundamental-group check works with based loops, so twists along boundary
/// components away from the base vertex act trivially and are invisible to it.
RelationReport verify_relation_instance(const Surface& s, const RelationInstance& inst);

/// Replaces one side of the relation by the other at the given position in
/// the expanded letter sequence of the normalized word. `use_lhs` selects
/// which side must occur at that position.
TwistWord rewrite_with_relation(const Surface& s, const TwistWord& w, const RelationInstance& inst,
                                std::size_t position, bool use_lhs);

struct RewriteStep {
  std::string instance;
  bool lhs_to_rhs = true;
  std::size_t position = 0;
};

struct PositiveWordCert {
  TwistWord start;
  std::vector<RewriteStep> chain;
  TwistWord result;
};

/// Breadth-first search over relation rewrites, deterministic: candidate moves
/// at each word are ordered by (position, instance name, direction). Returns
/// the first all-positive word found within `depth` rewrites, or nothing —
/// never a proof of impossibility.
std::optional<PositiveWordCert> positivity_search(const Surface& s, const TwistWord& w,
                                                  const std::vector<RelationInstance>& registry,
                                                  int depth = 3);

struct PantsMatch {
  std::string x, y, z;
};

/// Finds triples (x, y, z): x, y boundary-parallel with net exponent +1,
/// z interior with net exponent -1 and a pants record naming x and y.
std::vector<PantsMatch> pants_pattern_scan(const Surface& s, const TwistWord& w);

}  // namespace obk
