#include "obk/fatgraph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

namespace obk {

namespace {
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
}  // namespace

int FatGraph::face_next(int dir) const {
  int arrive = head_end(dir);
  int v = end_vertex(arrive);
  const auto& cyc = order[static_cast<std::size_t>(v)];
  auto it = std::find(cyc.begin(), cyc.end(), arrive);
  if (it == cyc.end()) throw std::logic_error("half-edge missing from vertex order");
  ++it;
  if (it == cyc.end()) it = cyc.begin();
  return leave_through(*it);
}

std::vector<std::vector<int>> FatGraph::faces() const {
  std::vector<std::vector<int>> out;
  std::vector<char> used(static_cast<std::size_t>(2 * edge_count()), 0);
  auto dir_id = [&](int dir) { return 2 * edge_of(dir) + (dir > 0 ? 0 : 1); };
  for (int e = 0; e < edge_count(); ++e) {
    for (int dir : {e + 1, -(e + 1)}) {
      if (used[static_cast<std::size_t>(dir_id(dir))]) continue;
      std::vector<int> face;
      int d = dir;
      do {
        used[static_cast<std::size_t>(dir_id(d))] = 1;
        face.push_back(d);
        d = face_next(d);
      } while (d != dir);
      out.push_back(std::move(face));
    }
  }
  return out;
}

SpanningForest spanning_forest(const FatGraph& g) {
  SpanningForest f;
  const int V = g.vertex_count(), E = g.edge_count();
  f.parent_edge.assign(static_cast<std::size_t>(V), -1);
  f.parent_dir.assign(static_cast<std::size_t>(V), 0);
  f.component.assign(static_cast<std::size_t>(V), -1);
  f.in_forest.assign(static_cast<std::size_t>(E), 0);

  // Incidence lists in edge-index order.
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(V));
  for (int e = 0; e < E; ++e) {
    incident[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].tail)].push_back(e + 1);
    incident[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].head)].push_back(-(e + 1));
  }

  for (int root = 0; root < V; ++root) {
    if (f.component[static_cast<std::size_t>(root)] != -1) continue;
    int comp = static_cast<int>(f.roots.size());
    f.roots.push_back(root);
    f.component[static_cast<std::size_t>(root)] = comp;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int dir : incident[static_cast<std::size_t>(v)]) {
        int w = g.head_vertex(dir);
        if (f.component[static_cast<std::size_t>(w)] != -1) continue;
        f.component[static_cast<std::size_t>(w)] = comp;
        f.parent_edge[static_cast<std::size_t>(w)] = FatGraph::edge_of(dir);
        f.parent_dir[static_cast<std::size_t>(w)] = dir;
        f.in_forest[static_cast<std::size_t>(FatGraph::edge_of(dir))] = 1;
        queue.push_back(w);
      }
    }
  }
  f.basis_of_edge.assign(static_cast<std::size_t>(E), -1);
  for (int e = 0; e < E; ++e) {
    if (!f.in_forest[static_cast<std::size_t>(e)]) {
      f.basis_of_edge[static_cast<std::size_t>(e)] = static_cast<int>(f.edge_of_basis.size());
      f.edge_of_basis.push_back(e);
    }
  }
  return f;
}

IntVec path_class(const FatGraph& g, const SpanningForest& f, const std::vector<int>& path) {
  (void)g;
  IntVec v = IntVec::Zero(f.rank());
  for (int dir : path) {
    int b = f.basis_of_edge[static_cast<std::size_t>(FatGraph::edge_of(dir))];
    if (b >= 0) v[b] += FatGraph::sign_of(dir);
  }
  return v;
}

namespace {

std::vector<int> forest_path_from_root(const FatGraph& g, const SpanningForest& f, int v) {
  (void)g;
  std::vector<int> rev;
  while (f.parent_edge[static_cast<std::size_t>(v)] != -1) {
    rev.push_back(f.parent_dir[static_cast<std::size_t>(v)]);
    int dir = f.parent_dir[static_cast<std::size_t>(v)];
    v = g.tail_vertex(dir);
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace

std::vector<int> basis_loop_path(const FatGraph& g, const SpanningForest& f, int basis_index) {
  int e = f.edge_of_basis.at(static_cast<std::size_t>(basis_index));
  std::vector<int> path = forest_path_from_root(g, f, g.edges[static_cast<std::size_t>(e)].tail);
  path.push_back(e + 1);
  std::vector<int> back = forest_path_from_root(g, f, g.edges[static_cast<std::size_t>(e)].head);
  for (auto it = back.rbegin(); it != back.rend(); ++it) path.push_back(-*it);
  return path;
}

namespace {

// Exact inverse of a unimodular integer matrix via rational Gauss-Jordan.
IntMat exact_inverse(const IntMat& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<std::vector<BigRat>> a(static_cast<std::size_t>(n), std::vector<BigRat>(static_cast<std::size_t>(2 * n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = BigInt(m(i, j));
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) { pivot = row; break; }
    if (pivot < 0) throw std::runtime_error("singular matrix in exact_inverse");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
    BigRat p = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int j = 0; j < 2 * n; ++j) a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= p;
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      BigRat factor = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
      if (factor == 0) continue;
      for (int j = 0; j < 2 * n; ++j)
        a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
            factor * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
    }
  }
  IntMat inv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      BigRat v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
      if (denominator(v) != 1) throw std::runtime_error("non-integer inverse: matrix not unimodular");
      BigInt num = numerator(v);
      if (num > std::numeric_limits<Int>::max() || num < std::numeric_limits<Int>::min())
        throw std::runtime_error("inverse entry overflows 64-bit range");
      inv(i, j) = static_cast<Int>(num);
    }
  }
  return inv;
}

// One face word per component after capping and merging, plus the homology
// substitution for each symbol eliminated by a merge.
struct MergedRelators {
  std::vector<std::vector<int>> relators;               // signed symbols, one per component
  std::vector<std::pair<int, std::vector<int>>> elims;  // (symbol, replacement word) in order
};

MergedRelators merge_faces(std::vector<std::vector<int>> faces, int symbol_count) {
  MergedRelators out;
  while (true) {
    // Occurrences of each symbol across faces.
    std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> occ;  // symbol -> (face, pos)
    for (std::size_t fi = 0; fi < faces.size(); ++fi)
      for (std::size_t p = 0; p < faces[fi].size(); ++p)
        occ[std::abs(faces[fi][p]) - 1].push_back({fi, p});

    int chosen = -1;
    for (int s = 0; s < symbol_count; ++s) {
      auto it = occ.find(s);
      if (it == occ.end()) continue;
      if (it->second.size() != 2) throw std::logic_error("symbol does not occur exactly twice");
      if (it->second[0].first != it->second[1].first) { chosen = s; break; }
    }
    if (chosen < 0) break;

    auto& places = occ[chosen];
    // Rotate the face with +s so that +s sits last, the face with -s so that
    // -s sits first; the merged disk boundary is the concatenation of the
    // remainders, and -s's face exhibits s as homotopic to its remainder.
    std::size_t fa = places[0].first, fb = places[1].first;
    std::size_t pa = places[0].second, pb = places[1].second;
    if (faces[fa][pa] < 0) { std::swap(fa, fb); std::swap(pa, pb); }
    if (faces[fa][pa] != chosen + 1 || faces[fb][pb] != -(chosen + 1))
      throw std::logic_error("merge: occurrences do not have opposite signs");

    std::vector<int> w;  // face fa rotated, +s dropped from the end
    for (std::size_t i = 1; i <= faces[fa].size() - 1; ++i)
      w.push_back(faces[fa][(pa + i) % faces[fa].size()]);
    std::vector<int> z;  // face fb rotated, -s dropped from the front
    for (std::size_t i = 1; i <= faces[fb].size() - 1; ++i)
      z.push_back(faces[fb][(pb + i) % faces[fb].size()]);

    out.elims.emplace_back(chosen, z);
    std::vector<int> merged = w;
    merged.insert(merged.end(), z.begin(), z.end());
    faces[fa] = std::move(merged);
    faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(fb));
  }
  out.relators = std::move(faces);
  return out;
}

}  // namespace

IntMat fatgraph_intersection_form(const FatGraph& g, const SpanningForest& f) {
  const int rank = f.rank();

  // Face words in basis symbols (forest edges collapse).
  std::vector<std::vector<int>> words;
  for (const auto& face : g.faces()) {
    std::vector<int> w;
    for (int dir : face) {
      int b = f.basis_of_edge[static_cast<std::size_t>(FatGraph::edge_of(dir))];
      if (b >= 0) w.push_back(FatGraph::sign_of(dir) * (b + 1));
    }
    words.push_back(std::move(w));
  }

  MergedRelators merged = merge_faces(std::move(words), rank);

  // Remaining symbols carry the closed-surface homology, per component.
  std::vector<char> eliminated(static_cast<std::size_t>(rank), 0);
  for (const auto& [s, repl] : merged.elims) eliminated[static_cast<std::size_t>(s)] = 1;
  std::vector<int> closed_index(static_cast<std::size_t>(rank), -1);
  std::vector<int> closed_symbols;
  for (int s = 0; s < rank; ++s)
    if (!eliminated[static_cast<std::size_t>(s)]) {
      closed_index[static_cast<std::size_t>(s)] = static_cast<int>(closed_symbols.size());
      closed_symbols.push_back(s);
    }
  const int m = static_cast<int>(closed_symbols.size());

  // Cup-product pairing of the one-relator complexes: column s of C is the
  // abelianized Fox derivative of the relator with respect to s.
  IntMat cup = IntMat::Zero(m, m);
  for (const auto& rel : merged.relators) {
    IntVec prefix = IntVec::Zero(m);
    for (int letter : rel) {
      int s = std::abs(letter) - 1;
      int idx = closed_index[static_cast<std::size_t>(s)];
      if (idx < 0) throw std::logic_error("eliminated symbol survives in relator");
      if (letter > 0) {
        cup.col(idx) += prefix;
        prefix[idx] += 1;
      } else {
        prefix[idx] -= 1;
        cup.col(idx) -= prefix;  // -(prefix * s^{-1}) abelianized
      }
    }
    if (!prefix.isZero()) throw std::logic_error("relator is not null-homologous");
  }
  if (cup != -cup.transpose()) throw std::logic_error("cup pairing is not antisymmetric");

  IntMat j_closed = m > 0 ? IntMat(-exact_inverse(cup)) : IntMat::Zero(0, 0);

  // Quotient map: basis symbols -> closed-surface classes, back-substituting
  // eliminated symbols in reverse order.
  IntMat q = IntMat::Zero(m, rank);
  for (int s = 0; s < rank; ++s)
    if (closed_index[static_cast<std::size_t>(s)] >= 0) q(closed_index[static_cast<std::size_t>(s)], s) = 1;
  for (auto it = merged.elims.rbegin(); it != merged.elims.rend(); ++it) {
    IntVec v = IntVec::Zero(m);
    for (int letter : it->second)
      v += static_cast<Int>(FatGraph::sign_of(letter)) * q.col(std::abs(letter) - 1);
    q.col(it->first) = v;
  }

  return q.transpose() * j_closed * q;
}

}  // namespace obk
