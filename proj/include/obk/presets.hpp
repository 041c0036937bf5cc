#pragma once

#include "obk/covers.hpp"
#include "obk/foliation.hpp"
#include "obk/mcg.hpp"
#include "obk/surface.hpp"

namespace obk::presets {

/// Twist automorphisms on a holed sphere, with loops d_1..d_n around the
/// holes based at the outer boundary. A positive twist along a convex curve
/// enclosing consecutive holes conjugates the enclosed loops by the curve
/// word; the twist parallel to the outer boundary conjugates everything by
/// the full product.
GeneratorMap consecutive_twist_auto(int n, int lo, int hi, bool inverse);
GeneratorMap outer_boundary_twist_auto(int n, bool inverse);

/// Twist along the chain curve enclosing the holes [a_lo..a_hi] together with
/// the single hole `extra`, passing around the block between them. Built from
/// Artin generators so the inverse is exact.
GeneratorMap chain_twist_auto(int n, int a_lo, int a_hi, int extra, bool inverse);

/// The word of the chain curve: d_{a_lo}..d_{a_hi} (w d_extra w^{-1}) with w
/// the word of the skipped block.
Word chain_curve_word(int a_lo, int a_hi, int extra);

// --- the planar family phi = T T_alpha^n T_beta T_gamma ---------------------

/// Sphere with p+q holes (p, q >= 2) carrying boundary-parallel curves
/// bd1..bd{p+q}, the curves alpha, beta, gamma, and the lantern companions
/// rho, tau, together with a machine-verified lantern relation instance.
Surface prop12_surface(int p, int q);
TwistWord prop12_word(int p, int q, Int n);

/// Parity case of the double-cover cutting pattern: 1 for p-1, q-1 both odd,
/// 2 for both even, 3 for odd/even, 4 for even/odd.
int prop12_parity_case(int p, int q);
CoverSpec prop12_cover_spec(int p, int q);

// --- the four-holed sphere family Phi_{alpha,beta} --------------------------

Surface example41_surface();
TwistWord example41_word(Int alpha, Int beta);
CoverSpec example41_cover_spec(Int k);

// --- the genus-4 example and its double cover -------------------------------

Surface example43_surface();
TwistWord example43_word();
CoverSpec example43_cover_spec();

// --- transverse overtwisted disk movies on the double covers ----------------

/// Movie presentation of a transverse overtwisted disk in the double cover of
/// the planar family, for parity cases 1 and 2. Two negative elliptic points
/// sit on the lifts of the last two boundary components; census (4,2,4,1).
MoviePresentation case_movie(int parity_case, int p, int q);

/// A one-negative-elliptic disk movie: complexity-one evidence used to
/// exercise the depth-one rules.
MoviePresentation complexity_one_movie();

}  // namespace obk::presets
