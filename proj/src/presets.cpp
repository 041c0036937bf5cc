#include "obk/presets.hpp"

#include <stdexcept>

namespace obk::presets {

namespace {

Word run_word(int lo, int hi) {  // d_lo ... d_hi, 0-based generator indices
  Word w;
  for (int j = lo; j <= hi; ++j) w = w * Word::generator(j);
  return w;
}

GeneratorMap conjugate_enclosed(int n, int lo, int hi, const Word& conjugator) {
  std::vector<Word> im;
  im.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    if (j >= lo && j <= hi) im.push_back(Word::generator(j).conjugated_by(conjugator));
    else im.push_back(Word::generator(j));
  }
  return GeneratorMap(std::move(im));
}

}  // namespace

GeneratorMap consecutive_twist_auto(int n, int lo, int hi, bool inverse) {
  Word w = run_word(lo, hi);
  return conjugate_enclosed(n, lo, hi, inverse ? w.inverse() : w);
}

GeneratorMap outer_boundary_twist_auto(int n, bool inverse) {
  Word w = run_word(0, n - 1);
  return conjugate_enclosed(n, 0, n - 1, inverse ? w.inverse() : w);
}

GeneratorMap chain_twist_auto(int n, int a_lo, int a_hi, int extra, bool inverse) {
  if (!(a_lo <= a_hi && a_hi + 1 < extra && extra < n))
    throw std::invalid_argument("chain twist needs a skipped block between the enclosed holes");
  // Twist along the consecutive curve [a_lo .. a_hi+1], conjugated by the
  // braid that carries the hole at a_hi+1 across the skipped block to sit at
  // `extra`; the conjugated twist runs around the enclosed holes and the
  // extra hole, passing around the block.
  GeneratorMap slide = artin_generator(n, extra - 1, false);
  for (int i = extra - 2; i > a_hi; --i) slide = slide.compose_after(artin_generator(n, i, false));
  GeneratorMap slide_inv = artin_generator(n, a_hi + 1, true);
  for (int i = a_hi + 2; i < extra; ++i) slide_inv = slide_inv.compose_after(artin_generator(n, i, true));
  GeneratorMap core = consecutive_twist_auto(n, a_lo, a_hi + 1, inverse);
  return slide.compose_after(core).compose_after(slide_inv);
}

Word chain_curve_word(int a_lo, int a_hi, int extra) {
  Word w = run_word(a_lo, a_hi);
  Word block = run_word(a_hi + 1, extra - 1);
  return w * Word::generator(extra).conjugated_by(block);
}

Surface prop12_surface(int p, int q) {
  if (p < 2 || q < 2) throw std::invalid_argument("the planar family needs p, q >= 2");
  const int m = p + q;
  const int n = m - 1;
  Surface s = make_surface(0, m);

  for (int i = 1; i <= m; ++i) {
    Curve c;
    if (i < m) {
      c = make_curve(s, "bd" + std::to_string(i), Word::generator(i - 1), CurveKind::boundary(i));
      c.pi1_automorphism = GeneratorMap::identity(n);
      c.pi1_automorphism_inverse = GeneratorMap::identity(n);
    } else {
      c = make_curve(s, "bd" + std::to_string(i), s.boundary_words().back(), CurveKind::boundary(i));
      c.pi1_automorphism = outer_boundary_twist_auto(n, false);
      c.pi1_automorphism_inverse = outer_boundary_twist_auto(n, true);
    }
    s.add_curve(std::move(c));
  }

  // alpha encloses the last labelled hole together with the outer boundary,
  // equivalently the two clusters; beta the left cluster, gamma the right.
  Curve alpha = make_curve(s, "alpha", run_word(0, m - 3));
  alpha.pi1_automorphism = consecutive_twist_auto(n, 0, m - 3, false);
  alpha.pi1_automorphism_inverse = consecutive_twist_auto(n, 0, m - 3, true);
  alpha.pants = PantsRecord{"bd" + std::to_string(m - 1), "bd" + std::to_string(m)};
  s.add_curve(std::move(alpha));

  Curve beta = make_curve(s, "beta", run_word(0, p - 2));
  beta.pi1_automorphism = consecutive_twist_auto(n, 0, p - 2, false);
  beta.pi1_automorphism_inverse = consecutive_twist_auto(n, 0, p - 2, true);
  s.add_curve(std::move(beta));

  Curve gamma = make_curve(s, "gamma", run_word(p - 1, m - 3));
  gamma.pi1_automorphism = consecutive_twist_auto(n, p - 1, m - 3, false);
  gamma.pi1_automorphism_inverse = consecutive_twist_auto(n, p - 1, m - 3, true);
  s.add_curve(std::move(gamma));

  Curve rho = make_curve(s, "rho", chain_curve_word(0, p - 2, m - 2));
  rho.pi1_automorphism = chain_twist_auto(n, 0, p - 2, m - 2, false);
  rho.pi1_automorphism_inverse = chain_twist_auto(n, 0, p - 2, m - 2, true);
  s.add_curve(std::move(rho));

  Curve tau = make_curve(s, "tau", run_word(p - 1, m - 2));
  tau.pi1_automorphism = consecutive_twist_auto(n, p - 1, m - 2, false);
  tau.pi1_automorphism_inverse = consecutive_twist_auto(n, p - 1, m - 2, true);
  s.add_curve(std::move(tau));

  RelationInstance lantern;
  lantern.name = "lantern";
  lantern.lhs = {{"bd" + std::to_string(m - 1), 1}, {"bd" + std::to_string(m), 1}, {"alpha", -1},
                 {"beta", 1},                      {"gamma", 1}};
  lantern.rhs = {{"rho", 1}, {"tau", 1}};
  lantern.citation =
      "lantern relation on the four-holed sphere spanned by beta, gamma and the last two boundary "
      "components (cf. Farb-Margalit, A Primer on Mapping Class Groups, Prop. 5.1); commuting "
      "boundary twists absorbed";
  s.relation_instances.push_back(std::move(lantern));
  return s;
}

TwistWord prop12_word(int p, int q, Int n) {
  const int m = p + q;
  TwistWord w;
  for (int i = 1; i <= m; ++i) w.factors.emplace_back("bd" + std::to_string(i), 1);
  w.factors.emplace_back("alpha", n);
  w.factors.emplace_back("beta", 1);
  w.factors.emplace_back("gamma", 1);
  return w.normalized();
}

int prop12_parity_case(int p, int q) {
  bool p_odd = (p - 1) % 2 == 1, q_odd = (q - 1) % 2 == 1;
  if (p_odd && q_odd) return 1;
  if (!p_odd && !q_odd) return 2;
  if (p_odd && !q_odd) return 3;
  return 4;
}

CoverSpec prop12_cover_spec(int p, int q) {
  const int m = p + q;
  const int n = m - 1;
  int which = prop12_parity_case(p, q);
  CoverSpec spec;
  spec.k = 2;
  spec.lambda.values.assign(static_cast<std::size_t>(n), 1);
  // The cutting arcs chain the last labelled hole into the left cluster in
  // the odd cases only.
  spec.lambda.values[static_cast<std::size_t>(n - 1)] = (which == 1 || which == 3) ? 1 : 0;
  return spec;
}

Surface example41_surface() {
  Surface s = make_surface(0, 4);
  const int n = 3;

  auto add_boundary = [&](const std::string& name, int i, const Word& w, GeneratorMap fwd,
                          GeneratorMap bwd) {
    Curve c = make_curve(s, name, w, CurveKind::boundary(i));
    c.pi1_automorphism = std::move(fwd);
    c.pi1_automorphism_inverse = std::move(bwd);
    s.add_curve(std::move(c));
  };
  add_boundary("a", 1, Word::generator(0), GeneratorMap::identity(n), GeneratorMap::identity(n));
  add_boundary("b", 2, Word::generator(1), GeneratorMap::identity(n), GeneratorMap::identity(n));
  add_boundary("c", 3, Word::generator(2), GeneratorMap::identity(n), GeneratorMap::identity(n));
  add_boundary("d", 4, s.boundary_words().back(), outer_boundary_twist_auto(n, false),
               outer_boundary_twist_auto(n, true));

  Curve e = make_curve(s, "e", run_word(0, 1));
  e.pi1_automorphism = consecutive_twist_auto(n, 0, 1, false);
  e.pi1_automorphism_inverse = consecutive_twist_auto(n, 0, 1, true);
  e.pants = PantsRecord{"c", "d"};
  s.add_curve(std::move(e));

  Curve r = make_curve(s, "r", chain_curve_word(0, 0, 2));
  r.pi1_automorphism = chain_twist_auto(n, 0, 0, 2, false);
  r.pi1_automorphism_inverse = chain_twist_auto(n, 0, 0, 2, true);
  s.add_curve(std::move(r));

  Curve t = make_curve(s, "s", run_word(1, 2));
  t.pi1_automorphism = consecutive_twist_auto(n, 1, 2, false);
  t.pi1_automorphism_inverse = consecutive_twist_auto(n, 1, 2, true);
  s.add_curve(std::move(t));

  RelationInstance lantern;
  lantern.name = "lantern";
  lantern.lhs = {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", -1}};
  lantern.rhs = {{"r", 1}, {"s", 1}};
  lantern.citation =
      "lantern relation on the four-holed sphere (cf. Farb-Margalit, Prop. 5.1); the negative "
      "twist along e moved across the commuting boundary twists";
  s.relation_instances.push_back(std::move(lantern));

  RelationInstance comm;
  comm.name = "comm-ab";
  comm.lhs = {{"a", 1}, {"b", 1}};
  comm.rhs = {{"b", 1}, {"a", 1}};
  comm.citation = "twists along disjoint curves commute";
  s.relation_instances.push_back(std::move(comm));
  return s;
}

TwistWord example41_word(Int alpha, Int beta) {
  TwistWord w;
  w.factors = {{"a", alpha + 1}, {"b", beta + 1}, {"c", 1}, {"d", 1}, {"e", -1}};
  return w.normalized();
}

CoverSpec example41_cover_spec(Int k) {
  if (k < 2) throw std::invalid_argument("the branched family needs k >= 2");
  CoverSpec spec;
  spec.k = k;
  spec.lambda.values = {1, k - 1, 0};
  return spec;
}

Surface example43_surface() {
  Surface s = make_surface(4, 2);
  auto names = s.generator_names();
  s.add_curve(make_curve(s, "a", parse_word("a1", names)));
  s.add_curve(make_curve(s, "b", parse_word("a2", names)));
  {
    Curve c = make_curve(s, "c", parse_word("d1", names), CurveKind::boundary(1));
    s.add_curve(std::move(c));
  }
  {
    Curve d = make_curve(s, "d", s.boundary_words()[1], CurveKind::boundary(2));
    s.add_curve(std::move(d));
  }
  {
    Curve e = make_curve(
        s, "e",
        parse_word("a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1 a3 b3 a3^-1 b3^-1 a4 b4 a4^-1 b4^-1", names));
    e.pants = PantsRecord{"c", "d"};
    s.add_curve(std::move(e));
  }
  s.add_curve(make_curve(s, "f", parse_word("a4", names)));
  return s;
}

TwistWord example43_word() { return parse_twistword("T[a]^2 T[b]^2 T[c] T[d] T[e]^-1 T[f]"); }

CoverSpec example43_cover_spec() {
  CoverSpec spec;
  spec.k = 2;
  spec.lambda.values = {1, 0, 1, 0, 0, 0, 0, 0, 0};
  return spec;
}

namespace {

MoviePresentation disk_movie_skeleton(const std::string& x_binding, const std::string& y_binding,
                                      const std::string& px_binding, const std::string& py_binding) {
  MoviePresentation m;
  auto page = [&](double t, std::vector<AArc> as, std::vector<BArc> bs) {
    PageConfig p;
    p.t = t;
    p.elliptics = {{"P1", 1, px_binding}, {"P2", 1, py_binding}, {"P3", 1, px_binding},
                   {"P4", 1, py_binding}, {"N1", -1, x_binding}, {"N2", -1, y_binding}};
    p.a_arcs = std::move(as);
    p.b_arcs = std::move(bs);
    return p;
  };
  m.pages.push_back(page(0.0, {{"A1", "P1", "S1"}, {"A2", "P3", "S2"}},
                         {{"B1", "P2", "N1"}, {"B2", "P4", "N2"}}));
  m.pages.push_back(page(0.2, {{"A1", "P1", "S1"}, {"A2", "P3", "S2"}},
                         {{"B3", "P2", "N2"}, {"B4", "P4", "N1"}}));
  m.pages.push_back(page(0.4, {{"A3", "P2", "S1"}, {"A2", "P3", "S2"}},
                         {{"B5", "P1", "N2"}, {"B4", "P4", "N1"}}));
  m.pages.push_back(page(0.6, {{"A3", "P2", "S1"}, {"A4", "P4", "S2"}},
                         {{"B5", "P1", "N2"}, {"B6", "P3", "N1"}}));
  m.pages.push_back(page(0.8, {{"A5", "P3", "S1"}, {"A4", "P4", "S2"}},
                         {{"B5", "P1", "N2"}, {"B7", "P2", "N1"}}));
  m.pages.push_back(page(1.0, {{"A5", "P3", "S1"}, {"A6", "P1", "S2"}},
                         {{"B7", "P2", "N1"}, {"B8", "P4", "N2"}}));

  m.events.push_back({0.1, -1, {"B1", "B2"}, {"B3", "B4"}, {"P2", "N1", "P4", "N2"}, std::nullopt});
  m.events.push_back({0.3, 1, {"A1", "B3"}, {"A3", "B5"}, {"P1", "P2", "N2"}, std::nullopt});
  m.events.push_back({0.5, 1, {"A2", "B4"}, {"A4", "B6"}, {"P3", "P4", "N1"}, std::nullopt});
  m.events.push_back({0.7, 1, {"A3", "B6"}, {"A5", "B7"}, {"P2", "P3", "N1"}, std::nullopt});
  m.events.push_back({0.9, 1, {"A4", "B5"}, {"A6", "B8"}, {"P1", "P4", "N2"}, std::nullopt});

  m.closure.elliptics = {{"P1", "P1"}, {"P2", "P2"}, {"P3", "P3"},
                         {"P4", "P4"}, {"N1", "N1"}, {"N2", "N2"}};
  m.closure.braid_endpoints = {{"S1", "S2"}, {"S2", "S1"}};
  m.closure.arcs = {{"A5", "A2"}, {"A6", "A1"}, {"B7", "B1"}, {"B8", "B2"}};
  return m;
}

}  // namespace

MoviePresentation case_movie(int parity_case, int p, int q) {
  if (parity_case != 1 && parity_case != 2)
    throw std::invalid_argument("bundled disk movies exist for parity cases 1 and 2 only");
  if (prop12_parity_case(p, q) != parity_case)
    throw std::invalid_argument("p, q parities do not match the requested case");
  const int m = p + q;
  Surface s = prop12_surface(p, q);
  CyclicCover cover = build_cyclic_cover(s, prop12_cover_spec(p, q));

  auto lift_name = [&](int boundary_index, bool second) {
    for (const auto& bl : cover.boundary_lifts())
      if (bl.base_index == boundary_index && (bl.name.back() == '\'') == second) return bl.name;
    throw std::logic_error("missing boundary lift");
  };

  std::string x = lift_name(m - 1, false);
  std::string y = lift_name(m, false);
  // In the even case the pants boundaries each have two lifts; the positive
  // points sit on the companion circles, in the odd case on the same ones.
  std::string px = parity_case == 2 ? lift_name(m - 1, true) : x;
  std::string py = parity_case == 2 ? lift_name(m, true) : y;

  MoviePresentation movie = disk_movie_skeleton(x, y, px, py);
  movie.surface.genus = static_cast<int>(cover.total_genus());
  movie.surface.boundary_count = static_cast<int>(cover.total_boundary_count());
  for (const auto& bl : cover.boundary_lifts()) movie.surface.binding.push_back(bl.name);
  return movie;
}

MoviePresentation complexity_one_movie() {
  MoviePresentation m;
  m.surface.genus = 0;
  m.surface.boundary_count = 1;
  m.surface.binding = {"bd1"};
  auto page = [&](double t, std::vector<AArc> as, std::vector<BArc> bs) {
    PageConfig p;
    p.t = t;
    p.elliptics = {{"P1", 1, "bd1"}, {"P2", 1, "bd1"}, {"N1", -1, "bd1"}};
    p.a_arcs = std::move(as);
    p.b_arcs = std::move(bs);
    return p;
  };
  m.pages.push_back(page(0.0, {{"A1", "P1", "S1"}}, {{"B1", "P2", "N1"}}));
  m.pages.push_back(page(0.5, {{"A2", "P2", "S1"}}, {{"B2", "P1", "N1"}}));
  m.pages.push_back(page(1.0, {{"A3", "P1", "S1"}}, {{"B3", "P2", "N1"}}));
  m.events.push_back({0.25, 1, {"A1", "B1"}, {"A2", "B2"}, {"P1", "P2", "N1"}, std::nullopt});
  m.events.push_back({0.75, 1, {"A2", "B2"}, {"A3", "B3"}, {"P2", "P1", "N1"}, std::nullopt});
  m.closure.elliptics = {{"P1", "P1"}, {"P2", "P2"}, {"N1", "N1"}};
  m.closure.braid_endpoints = {{"S1", "S1"}};
  m.closure.arcs = {{"A3", "A1"}, {"B3", "B1"}};
  return m;
}

}  // namespace obk::presets
