#include "obk/covers.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace obk {

namespace {

Int mod_k(Int v, Int k) { return ((v % k) + k) % k; }

Int gcd_k(Int v, Int k) { return std::gcd(static_cast<long long>(mod_k(v, k)), static_cast<long long>(k)); }

std::string prime_suffix(int ordinal) { return std::string(static_cast<std::size_t>(ordinal), '\''); }

/// Cover of the standard one-vertex ribbon graph: sheets are vertices, edge
/// j*k + s is the lift of generator j starting on sheet s. The cyclic order
/// at each sheet copies the base vertex; the base order is chosen so that the
/// thickened graph realizes the orientation with <a_i, b_i> = +1.
FatGraph build_cover_graph(const Surface& base, Int k, const std::vector<Int>& lambda) {
  const int n = base.rank();
  const int kk = static_cast<int>(k);
  FatGraph g;
  g.edges.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(kk));
  for (int j = 0; j < n; ++j) {
    for (int s = 0; s < kk; ++s) {
      auto& e = g.edges[static_cast<std::size_t>(j * kk + s)];
      e.tail = s;
      e.head = static_cast<int>(mod_k(s + lambda[static_cast<std::size_t>(j)], k));
    }
  }
  std::vector<std::pair<int, bool>> slots;  // (generator, is_head)
  for (int j = 0; j < base.genus(); ++j) {
    slots.push_back({2 * j, false});
    slots.push_back({2 * j + 1, false});
    slots.push_back({2 * j, true});
    slots.push_back({2 * j + 1, true});
  }
  for (int i = 0; i < base.boundary_count() - 1; ++i) {
    slots.push_back({2 * base.genus() + i, false});
    slots.push_back({2 * base.genus() + i, true});
  }
  std::reverse(slots.begin(), slots.end());

  g.order.resize(static_cast<std::size_t>(kk));
  for (int s = 0; s < kk; ++s) {
    auto& cyc = g.order[static_cast<std::size_t>(s)];
    for (const auto& [j, is_head] : slots) {
      if (!is_head) {
        cyc.push_back(2 * (j * kk + s));
      } else {
        int src = static_cast<int>(mod_k(s - lambda[static_cast<std::size_t>(j)], k));
        cyc.push_back(2 * (j * kk + src) + 1);
      }
    }
  }
  return g;
}

}  // namespace

FatGraph standard_fatgraph(const Surface& s) {
  std::vector<Int> lambda(static_cast<std::size_t>(s.rank()), 0);
  return build_cover_graph(s, 1, lambda);
}

CoverSpec cover_spec_from_cutting_class(const Surface& s, Int k, const IntVec& cutting_class) {
  CoverSpec spec;
  spec.k = k;
  spec.lambda.values.resize(static_cast<std::size_t>(s.rank()));
  for (int j = 0; j < s.rank(); ++j) {
    IntVec e = IntVec::Zero(s.rank());
    e[j] = 1;
    spec.lambda.values[static_cast<std::size_t>(j)] = mod_k(pairing(s, e, cutting_class), k);
  }
  return spec;
}

Int CyclicCover::lambda_of(const IntVec& cls) const {
  Int v = 0;
  for (int j = 0; j < base_.rank(); ++j) v += spec_.lambda.values[static_cast<std::size_t>(j)] * cls[j];
  return mod_k(v, spec_.k);
}

std::vector<int> CyclicCover::trace_component(const Word& w, int start_sheet, Int* out_degree,
                                              std::vector<int>* out_sheets) const {
  const Int k = spec_.k;
  const int kk = static_cast<int>(k);
  Int shift = lambda_of(w.abelianized(base_.rank()));
  Int degree = k / gcd_k(shift, k);
  std::vector<int> path;
  std::vector<int> sheets;
  int s = start_sheet;
  for (Int rep = 0; rep < degree; ++rep) {
    sheets.push_back(s);
    for (Letter l : w.letters()) {
      int j = letter_index(l);
      if (letter_sign(l) > 0) {
        path.push_back(j * kk + s + 1);
        s = static_cast<int>(mod_k(s + spec_.lambda.values[static_cast<std::size_t>(j)], k));
      } else {
        int src = static_cast<int>(mod_k(s - spec_.lambda.values[static_cast<std::size_t>(j)], k));
        path.push_back(-(j * kk + src + 1));
        s = src;
      }
    }
  }
  if (s != start_sheet) throw std::logic_error("curve lift did not close up");
  if (out_degree) *out_degree = degree;
  if (out_sheets) *out_sheets = sheets;
  return path;
}

CyclicCover::CyclicCover(const Surface& base, CoverSpec spec) : base_(base), spec_(std::move(spec)) {
  if (spec_.k < 1) throw std::invalid_argument("cover degree k must be >= 1");
  const int n = base_.rank();
  if (static_cast<int>(spec_.lambda.values.size()) != n)
    throw std::invalid_argument("lambda must assign a residue to every generator");
  for (auto& v : spec_.lambda.values) v = mod_k(v, spec_.k);

  const Int k = spec_.k;
  const int kk = static_cast<int>(k);
  total_chi_ = k * base_.euler_characteristic();

  if (n == 0) {  // disk base: the cover is k disjoint disks
    component_count_ = kk;
    total_genus_ = 0;
    graph_.order.resize(static_cast<std::size_t>(kk));
    forest_ = spanning_forest(graph_);
    for (int s = 0; s < kk; ++s)
      boundary_lifts_.push_back({1, "bd1~" + prime_suffix(s), s, 1});
    projection_ = IntMat::Zero(0, 0);
    deck_ = IntMat::Zero(0, 0);
    transfer_ = IntMat::Zero(0, 0);
    form_ = IntMat::Zero(0, 0);
    if (kk == 1) {
      total_ = make_surface(0, 1);
    }
    return;
  }

  graph_ = build_cover_graph(base_, k, spec_.lambda.values);
  forest_ = spanning_forest(graph_);
  component_count_ = static_cast<int>(forest_.roots.size());

  // --- boundary faces -------------------------------------------------------
  FatGraph base_graph = build_cover_graph(base_, 1, std::vector<Int>(static_cast<std::size_t>(n), 0));
  auto base_faces = base_graph.faces();
  if (static_cast<int>(base_faces.size()) != base_.boundary_count())
    throw std::logic_error("base face count does not match boundary count");

  // Base face -> boundary index: boundary i < r owns the face through +d_i;
  // the last boundary is the remaining face.
  std::vector<int> base_face_boundary(base_faces.size(), -1);
  std::vector<int> dir_to_base_face(static_cast<std::size_t>(2 * n), -1);
  for (std::size_t fi = 0; fi < base_faces.size(); ++fi)
    for (int dir : base_faces[fi])
      dir_to_base_face[static_cast<std::size_t>(2 * FatGraph::edge_of(dir) + (dir > 0 ? 0 : 1))] =
          static_cast<int>(fi);
  std::vector<bool> face_taken(base_faces.size(), false);
  for (int i = 1; i <= base_.boundary_count() - 1; ++i) {
    int edge = 2 * base_.genus() + (i - 1);
    int fi = dir_to_base_face[static_cast<std::size_t>(2 * edge)];
    if (fi < 0 || face_taken[static_cast<std::size_t>(fi)])
      throw std::logic_error("boundary face identification failed");
    base_face_boundary[static_cast<std::size_t>(fi)] = i;
    face_taken[static_cast<std::size_t>(fi)] = true;
  }
  for (std::size_t fi = 0; fi < base_faces.size(); ++fi)
    if (!face_taken[fi]) base_face_boundary[fi] = base_.boundary_count();

  auto cover_faces = graph_.faces();
  struct FaceInfo {
    int base_index;
    int min_sheet;
    Int degree;
    std::vector<int> dirs;
  };
  std::vector<FaceInfo> infos;
  for (auto& face : cover_faces) {
    FaceInfo info;
    int first = face.front();
    int base_edge = FatGraph::edge_of(first) / kk;
    int base_dir_id = 2 * base_edge + (first > 0 ? 0 : 1);
    int bf = dir_to_base_face[static_cast<std::size_t>(base_dir_id)];
    info.base_index = base_face_boundary[static_cast<std::size_t>(bf)];
    info.min_sheet = graph_.vertex_count();
    for (int dir : face) info.min_sheet = std::min(info.min_sheet, graph_.tail_vertex(dir));
    info.degree =
        static_cast<Int>(face.size()) / static_cast<Int>(base_faces[static_cast<std::size_t>(bf)].size());
    info.dirs = std::move(face);
    infos.push_back(std::move(info));
  }
  std::stable_sort(infos.begin(), infos.end(), [](const FaceInfo& a, const FaceInfo& b) {
    return std::tie(a.base_index, a.min_sheet) < std::tie(b.base_index, b.min_sheet);
  });

  Int expected_boundaries = 0;
  for (int i = 1; i <= base_.boundary_count(); ++i)
    expected_boundaries += gcd_k(lambda_of(base_.boundary_class(i)), k);
  if (static_cast<Int>(infos.size()) != expected_boundaries)
    throw std::logic_error("cover boundary count disagrees with the gcd formula");

  std::map<int, int> per_base_count;
  for (const auto& info : infos) {
    BoundaryLift lift;
    lift.base_index = info.base_index;
    lift.min_sheet = info.min_sheet;
    lift.degree = info.degree;
    lift.name = "bd" + std::to_string(info.base_index) + "~" + prime_suffix(per_base_count[info.base_index]++);
    boundary_lifts_.push_back(lift);
  }

  // --- genus bookkeeping ----------------------------------------------------
  {
    std::vector<Int> comp_chi(static_cast<std::size_t>(component_count_), 0);
    std::vector<Int> comp_faces(static_cast<std::size_t>(component_count_), 0);
    for (int v = 0; v < graph_.vertex_count(); ++v)
      comp_chi[static_cast<std::size_t>(forest_.component[static_cast<std::size_t>(v)])] += 1;
    for (const auto& e : graph_.edges)
      comp_chi[static_cast<std::size_t>(forest_.component[static_cast<std::size_t>(e.tail)])] -= 1;
    for (const auto& info : infos) {
      int v = graph_.tail_vertex(info.dirs.front());
      comp_faces[static_cast<std::size_t>(forest_.component[static_cast<std::size_t>(v)])] += 1;
    }
    total_genus_ = 0;
    for (int c = 0; c < component_count_; ++c) {
      Int twice_genus = 2 - comp_chi[static_cast<std::size_t>(c)] - comp_faces[static_cast<std::size_t>(c)];
      if (twice_genus % 2 != 0 || twice_genus < 0)
        throw std::logic_error("cover component genus is not a non-negative integer");
      total_genus_ += twice_genus / 2;
    }
  }

  // --- homology data --------------------------------------------------------
  const int rank = forest_.rank();
  projection_ = IntMat::Zero(n, rank);
  deck_ = IntMat::Zero(rank, rank);
  for (int b = 0; b < rank; ++b) {
    auto path = basis_loop_path(graph_, forest_, b);
    for (int dir : path) {
      int j = FatGraph::edge_of(dir) / kk;
      projection_(j, b) += FatGraph::sign_of(dir);
    }
    IntVec shifted = IntVec::Zero(rank);
    for (int dir : path) {
      int e = FatGraph::edge_of(dir);
      int j = e / kk, s = e % kk;
      int se = j * kk + static_cast<int>(mod_k(s + 1, k));
      int idx = forest_.basis_of_edge[static_cast<std::size_t>(se)];
      if (idx >= 0) shifted[idx] += FatGraph::sign_of(dir);
    }
    deck_.col(b) = shifted;
  }
  transfer_ = IntMat::Zero(rank, n);
  for (int j = 0; j < n; ++j) {
    for (int s = 0; s < kk; ++s) {
      int idx = forest_.basis_of_edge[static_cast<std::size_t>(j * kk + s)];
      if (idx >= 0) transfer_(idx, j) += 1;
    }
  }
  form_ = fatgraph_intersection_form(graph_, forest_);

  // --- lifted curves --------------------------------------------------------
  for (const Curve& c : base_.curves()) {
    LiftedCurve lc;
    lc.base_curve = c.name;
    Int shift = lambda_of(c.homology);
    Int comp_count = gcd_k(shift, k);
    std::set<int> seen;
    int ordinal = 0;
    for (int start = 0; start < kk; ++start) {
      if (seen.count(start)) continue;
      LiftedCurveComponent comp;
      Int degree = 0;
      std::vector<int> sheets;
      auto path = trace_component(c.word, start, &degree, &sheets);
      for (int s : sheets) seen.insert(s);
      comp.name = c.name + "~" + prime_suffix(ordinal++);
      comp.sheets = std::move(sheets);
      comp.degree = degree;
      comp.homology_in_cover = path_class(graph_, forest_, path);
      lc.components.push_back(std::move(comp));
    }
    if (static_cast<Int>(lc.components.size()) != comp_count)
      throw std::logic_error("lifted component count disagrees with gcd");
    lifted_[c.name] = std::move(lc);
  }

  // --- total surface (connected covers only) --------------------------------
  if (component_count_ == 1) {
    std::vector<std::string> names;
    for (int b = 0; b < rank; ++b) {
      int e = forest_.edge_of_basis[static_cast<std::size_t>(b)];
      names.push_back(base_.generator_names()[static_cast<std::size_t>(e / kk)] + "@" + std::to_string(e % kk));
    }
    std::vector<Word> boundary_words;
    for (const auto& info : infos) {
      std::vector<Letter> ls;
      for (int dir : info.dirs) {
        int idx = forest_.basis_of_edge[static_cast<std::size_t>(FatGraph::edge_of(dir))];
        if (idx >= 0) ls.push_back(static_cast<Letter>(FatGraph::sign_of(dir) * (idx + 1)));
      }
      boundary_words.push_back(Word(std::move(ls)));
    }
    Surface total(static_cast<int>(total_genus_), static_cast<int>(boundary_lifts_.size()),
                  std::move(names), std::move(boundary_words), form_);
    for (const auto& [base_name, lc] : lifted_) {
      for (const auto& comp : lc.components) {
        auto path = trace_component(base_.curve(base_name).word, comp.sheets.front(), nullptr, nullptr);
        std::vector<Letter> ls;
        for (int dir : path) {
          int idx = forest_.basis_of_edge[static_cast<std::size_t>(FatGraph::edge_of(dir))];
          if (idx >= 0) ls.push_back(static_cast<Letter>(FatGraph::sign_of(dir) * (idx + 1)));
        }
        total.add_curve(make_curve(total, comp.name, Word(std::move(ls))));
      }
    }
    total_ = std::move(total);
  }
}

const Surface& CyclicCover::total() const {
  if (!total_) throw std::runtime_error("cover is disconnected: no single total surface");
  return *total_;
}

LiftedCurve CyclicCover::lift_curve(const std::string& curve_name) const {
  auto it = lifted_.find(curve_name);
  if (it == lifted_.end()) throw std::out_of_range("unknown curve '" + curve_name + "'");
  return it->second;
}

CyclicCover::LiftPowerResult CyclicCover::lift_twist_power(const std::string& curve_name, Int exponent) const {
  auto it = lifted_.find(curve_name);
  if (it == lifted_.end()) throw std::out_of_range("unknown curve '" + curve_name + "'");
  const LiftedCurve& lc = it->second;
  Int d = lc.components.front().degree;  // common to all components
  if (exponent % d != 0) return NotLiftable{curve_name, d, exponent};
  std::vector<std::pair<std::string, Int>> out;
  for (const auto& comp : lc.components) out.emplace_back(comp.name, exponent / d);
  return out;
}

bool CyclicCover::preserves_kernel(const TwistWord& base_word) const {
  IntMat a = homology_action(base_, base_word).matrix;
  const int n = base_.rank();
  IntVec lam(n);
  for (int j = 0; j < n; ++j) lam[j] = spec_.lambda.values[static_cast<std::size_t>(j)];
  IntVec row = a.transpose() * lam;  // lambda ∘ A on the generators
  for (Int t = 0; t < spec_.k; ++t) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = mod_k(row[j] - t * lam[j], spec_.k) == 0;
    if (ok) return true;
  }
  return false;
}

CyclicCover::LiftWordResult CyclicCover::lift_monodromy(const TwistWord& word) const {
  struct Piece {
    std::string name;
    Int exponent;
    int min_sheet;
    const IntVec* cls;
  };
  std::vector<Piece> pieces;
  for (const auto& [name, exp] : word.normalized().factors) {
    auto res = lift_twist_power(name, exp);
    if (std::holds_alternative<NotLiftable>(res)) {
      NotLiftable nl = std::get<NotLiftable>(res);
      if (preserves_kernel(word))
        return Inconclusive{nl,
                            "factor-by-factor lifting fails but the word preserves ker(lambda); "
                            "a lift exists although not as a product of these lifted twists"};
      return nl;
    }
    const LiftedCurve& lc = lifted_.at(name);
    const auto& factors = std::get<std::vector<std::pair<std::string, Int>>>(res);
    for (std::size_t i = 0; i < lc.components.size(); ++i)
      pieces.push_back({factors[i].first, factors[i].second, lc.components[i].sheets.front(),
                        &lc.components[i].homology_in_cover});
  }

  // Regroup by sheet when provably harmless on cover homology: bubble passes
  // swapping adjacent factors only when their classes pair to zero. This
  // reproduces the usual sheet-by-sheet presentation of lifted words.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      if (pieces[i].min_sheet > pieces[i + 1].min_sheet &&
          pieces[i].cls->dot(form_ * (*pieces[i + 1].cls)) == 0) {
        std::swap(pieces[i], pieces[i + 1]);
        changed = true;
      }
    }
  }

  TwistWord out;
  for (const auto& p : pieces) out.factors.emplace_back(p.name, p.exponent);
  return out.normalized();
}

CyclicCover::CommutativityReport CyclicCover::check_commutativity(const TwistWord& base_word,
                                                                  const TwistWord& lifted_word) const {
  const int rank = forest_.rank();
  std::map<std::string, const IntVec*> classes;
  for (const auto& [base_name, lc] : lifted_)
    for (const auto& comp : lc.components) classes[comp.name] = &comp.homology_in_cover;

  IntMat lifted_action = IntMat::Identity(rank, rank);
  for (const auto& [name, exp] : lifted_word.normalized().factors) {
    auto it = classes.find(name);
    if (it == classes.end()) return {false, "unknown lifted curve '" + name + "'"};
    const IntVec& c = *it->second;
    IntMat t = IntMat::Identity(rank, rank);
    IntVec row = form_.transpose() * c;
    for (int j = 0; j < rank; ++j) t.col(j) += exp * row[j] * c;
    lifted_action = lifted_action * t;
  }
  IntMat base_action = homology_action(base_, base_word).matrix;
  bool pass = (projection_ * lifted_action) == (base_action * projection_);
  return {pass, pass ? "projection intertwines the homology actions"
                     : "projection does not intertwine the homology actions"};
}

CyclicCover build_cyclic_cover(const Surface& base, const CoverSpec& spec) {
  return CyclicCover(base, spec);
}

}  // namespace obk
