#pragma once

#include "obk/fatgraph.hpp"
#include "obk/mcg.hpp"
#include "obk/surface.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace obk {

/// Homomorphism H_1(S;Z) -> Z/k, given by residues on the generators.
struct RelativeClass {
  std::vector<Int> values;  // length n, taken mod k
};

struct CoverSpec {
  Int k = 1;
  RelativeClass lambda;
};

/// Derives lambda from a relative cycle class via the intersection pairing.
CoverSpec cover_spec_from_cutting_class(const Surface& s, Int k, const IntVec& cutting_class);

struct BoundaryLift {
  int base_index = 1;          // 1-based boundary component of the base
  std::string name;            // e.g. "bd3~", "bd3~'"
  int min_sheet = 0;
  Int degree = 1;              // covering degree onto the base circle
};

struct LiftedCurveComponent {
  std::string name;            // base name + "~" + primes, by min sheet
  std::vector<int> sheets;     // visiting order from the minimal sheet
  Int degree = 1;
  IntVec homology_in_cover;    // in the cover's homology basis
};

struct LiftedCurve {
  std::string base_curve;
  std::vector<LiftedCurveComponent> components;
};

/// The ribbon-graph model of the standard surface S_{g,r}; generator j is edge j.
FatGraph standard_fatgraph(const Surface& s);

/// A k-fold cyclic cover of a standard-model surface determined by lambda.
/// All data is computed at construction; the object is immutable afterwards.
class CyclicCover {
 public:
  CyclicCover(const Surface& base, CoverSpec spec);

  const Surface& base() const { return base_; }
  const CoverSpec& spec() const { return spec_; }
  Int k() const { return spec_.k; }

  bool connected() const { return component_count_ == 1; }
  int component_count() const { return component_count_; }
  Int total_euler_characteristic() const { return total_chi_; }
  Int total_boundary_count() const { return static_cast<Int>(boundary_lifts_.size()); }
  Int total_genus() const { return total_genus_; }  // summed over components

  /// The covering surface with the graph-basis generators and the computed
  /// intersection form. Only available for connected covers.
  const Surface& total() const;

  const std::vector<BoundaryLift>& boundary_lifts() const { return boundary_lifts_; }

  /// Projection on first homology, columns indexed by the cover basis.
  const IntMat& projection() const { return projection_; }

  /// Deck rotation (sheet shift by one) on the cover homology basis.
  const IntMat& deck_action() const { return deck_; }

  /// Sum-of-all-lifts transfer H_1(S) -> H_1(cover).
  const IntMat& transfer() const { return transfer_; }

  LiftedCurve lift_curve(const std::string& curve_name) const;

  struct NotLiftable {
    std::string curve;
    Int degree = 1;    // required divisor
    Int exponent = 0;  // offending exponent
  };
  using LiftPowerResult = std::variant<std::vector<std::pair<std::string, Int>>, NotLiftable>;

  /// T_curve^exponent lifts iff the common component degree divides the
  /// exponent; each component then receives exponent/degree.
  LiftPowerResult lift_twist_power(const std::string& curve_name, Int exponent) const;

  struct Inconclusive {
    NotLiftable first_failure;
    std::string note;
  };
  using LiftWordResult = std::variant<TwistWord, NotLiftable, Inconclusive>;

  /// Lifts a twist word factor by factor, then regroups components by sheet
  /// where the regrouping provably acts identically on cover homology (this
  /// reproduces the usual sheet-by-sheet presentation of lifted words). If a
  /// factor fails the divisibility rule but the word still maps ker(lambda)
  /// to itself the result is Inconclusive: a lift exists although it is not
  /// reachable factor by factor.
  LiftWordResult lift_monodromy(const TwistWord& word) const;

  struct CommutativityReport {
    bool pass = false;
    std::string detail;
  };

  /// Homology-level check of projection ∘ lifted = base ∘ projection.
  CommutativityReport check_commutativity(const TwistWord& base_word, const TwistWord& lifted_word) const;

  /// Whether homology_action(word) preserves ker(lambda) (multiplier check).
  bool preserves_kernel(const TwistWord& base_word) const;

  const FatGraph& graph() const { return graph_; }
  const SpanningForest& forest() const { return forest_; }

  /// Intersection form on the cover homology basis (block-diagonal over
  /// components when disconnected).
  const IntMat& cover_form() const { return form_; }

 private:
  Int lambda_of(const IntVec& cls) const;
  std::vector<int> trace_component(const Word& w, int start_sheet, Int* out_degree,
                                   std::vector<int>* out_sheets) const;

  Surface base_;
  CoverSpec spec_;
  FatGraph graph_;
  SpanningForest forest_;
  int component_count_ = 1;
  Int total_chi_ = 0;
  Int total_genus_ = 0;
  std::vector<BoundaryLift> boundary_lifts_;
  IntMat projection_;
  IntMat deck_;
  IntMat transfer_;
  IntMat form_;
  std::optional<Surface> total_;
  std::map<std::string, LiftedCurve> lifted_;  // cache, filled at construction
};

/// Builds the cover and checks the Euler characteristic, boundary gcd count
/// and genus integrality invariants, throwing on violation.
CyclicCover build_cyclic_cover(const Surface& base, const CoverSpec& spec);

}  // namespace obk
