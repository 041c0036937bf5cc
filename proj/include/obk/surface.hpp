#pragma once

#include "obk/words.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace obk {

/// Where a curve sits relative to the boundary.
struct CurveKind {
  bool boundary_parallel = false;
  int boundary_index = -1;  // 1-based when boundary_parallel

  static CurveKind interior() { return {}; }
  static CurveKind boundary(int i) { return {true, i}; }
  bool operator==(const CurveKind&) const = default;
};

/// Links an interior curve z to the two boundary components x, y of a pants
/// region it bounds with them.
struct PantsRecord {
  std::string x, y;
  bool operator==(const PantsRecord&) const = default;
};

/// A declared simple closed curve: a conjugacy-class word plus optional data.
/// The twist automorphism, when present, is the declared action of the
/// positive Dehn twist along the curve on the surface's fundamental group;
/// the inverse images, when present, describe the negative twist.
struct Curve {
  std::string name;
  Word word;
  CurveKind kind;
  IntVec homology;  // cached abelianization of word
  std::optional<GeneratorMap> pi1_automorphism;
  std::optional<GeneratorMap> pi1_automorphism_inverse;
  std::optional<PantsRecord> pants;
};

struct RelationInstance {
  std::string name;
  // Factors are (curve name, exponent); see mcg.hpp for the TwistWord type.
  std::vector<std::pair<std::string, Int>> lhs, rhs;
  std::string citation;
};

/// Compact oriented surface with boundary, modelled on a one-vertex ribbon
/// graph. Generators are free generators of the fundamental group; the
/// intersection matrix gives the algebraic pairing on first homology.
///
/// Standard model (make_surface): generators a1,b1,...,ag,bg,d1,...,d_{r-1},
/// boundary words d_i for i < r and ([a1,b1]...[ag,bg] d1...d_{r-1})^{-1} for
/// the last; pairing <a_i,b_i> = +1, everything else 0.
class Surface {
 public:
  Surface() = default;
  Surface(int genus, int boundary_count, std::vector<std::string> generator_names,
          std::vector<Word> boundary_words, IntMat intersection_matrix);

  int genus() const { return genus_; }
  int boundary_count() const { return boundary_count_; }
  int euler_characteristic() const { return 2 - 2 * genus_ - boundary_count_; }
  int rank() const { return static_cast<int>(generator_names_.size()); }

  const std::vector<std::string>& generator_names() const { return generator_names_; }
  const std::vector<Word>& boundary_words() const { return boundary_words_; }
  const IntMat& intersection_matrix() const { return intersection_matrix_; }

  IntVec boundary_class(int i) const {  // 1-based
    return boundary_words_.at(static_cast<std::size_t>(i - 1)).abelianized(rank());
  }

  void add_curve(Curve c);
  bool has_curve(const std::string& name) const { return curve_index_.count(name) > 0; }
  const Curve& curve(const std::string& name) const;
  const std::vector<Curve>& curves() const { return curves_; }

  std::vector<RelationInstance> relation_instances;

 private:
  int genus_ = 0;
  int boundary_count_ = 1;
  std::vector<std::string> generator_names_;
  std::vector<Word> boundary_words_;
  IntMat intersection_matrix_;
  std::vector<Curve> curves_;
  std::map<std::string, std::size_t> curve_index_;
};

/// Standard model of S_{g,r}. Rejects r = 0: open books need binding.
Surface make_surface(int genus, int boundary_count);

/// Exponent-sum vector of a word over the surface's generators.
IntVec homology_class(const Surface& s, const Word& w);

/// Algebraic intersection pairing x^T M y.
Int pairing(const Surface& s, const IntVec& x, const IntVec& y);

/// Builds a curve, caching its homology class.
Curve make_curve(const Surface& s, std::string name, Word word,
                 CurveKind kind = CurveKind::interior());

struct Diagnostics {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks every Curve invariant; failures name the offending field.
Diagnostics validate_curve(const Surface& s, const Curve& c);

/// Checks the Surface invariants (Euler characteristic bookkeeping,
/// boundary classes summing to zero, antisymmetry of the pairing).
Diagnostics validate_surface(const Surface& s);

}  // namespace obk
