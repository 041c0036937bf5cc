#pragma once

#include "obk/words.hpp"

#include <vector>

namespace obk {

/// Ribbon graph: a graph with a cyclic order of half-edge ends at each vertex.
/// Half-edge ids: edge e owns 2e (tail end) and 2e+1 (head end). A directed
/// edge is +(e+1) for tail->head, -(e+1) for head->tail.
struct FatGraph {
  struct Edge {
    int tail = 0, head = 0;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> order;  // per vertex: half-edge ids, cyclic

  int vertex_count() const { return static_cast<int>(order.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  static int edge_of(int dir) { return (dir > 0 ? dir : -dir) - 1; }
  static int sign_of(int dir) { return dir > 0 ? 1 : -1; }
  int tail_vertex(int dir) const {
    const Edge& e = edges[static_cast<std::size_t>(edge_of(dir))];
    return dir > 0 ? e.tail : e.head;
  }
  int head_vertex(int dir) const {
    const Edge& e = edges[static_cast<std::size_t>(edge_of(dir))];
    return dir > 0 ? e.head : e.tail;
  }
  int tail_end(int dir) const { return 2 * edge_of(dir) + (dir > 0 ? 0 : 1); }
  int head_end(int dir) const { return 2 * edge_of(dir) + (dir > 0 ? 1 : 0); }
  int end_vertex(int half) const {
    const Edge& e = edges[static_cast<std::size_t>(half / 2)];
    return (half % 2 == 0) ? e.tail : e.head;
  }

  /// The directed edge leaving through the given half-edge end.
  static int leave_through(int half) { return (half % 2 == 0) ? half / 2 + 1 : -(half / 2 + 1); }

  /// Boundary walk successor: leave through the cyclic successor of the
  /// arrival end.
  int face_next(int dir) const;

  /// All boundary faces as directed-edge cycles. Isolated vertices contribute
  /// one empty face each.
  std::vector<std::vector<int>> faces() const;
};

/// Spanning forest (BFS over vertices, edges scanned in index order) together
/// with the induced homology basis: one basis loop per non-forest edge,
/// ordered by edge index.
struct SpanningForest {
  std::vector<int> parent_edge;      // per vertex: forest edge to parent, or -1 for roots
  std::vector<int> parent_dir;       // directed edge parent -> vertex, 0 for roots
  std::vector<int> component;        // per vertex
  std::vector<int> roots;            // per component
  std::vector<char> in_forest;       // per edge
  std::vector<int> basis_of_edge;    // per edge: basis index or -1
  std::vector<int> edge_of_basis;    // per basis index: edge

  int rank() const { return static_cast<int>(edge_of_basis.size()); }
};

SpanningForest spanning_forest(const FatGraph& g);

/// Homology class of a closed directed-edge path in the non-forest-edge basis.
IntVec path_class(const FatGraph& g, const SpanningForest& f, const std::vector<int>& path);

/// Directed-edge path of the basis loop: forest path root->tail, the edge,
/// forest path head->root.
std::vector<int> basis_loop_path(const FatGraph& g, const SpanningForest& f, int basis_index);

/// Intersection form on the graph homology of the thickened surface, computed
/// by capping the boundary faces, merging the 2-cells into a single relator
/// per component, and inverting the cup-product pairing of the resulting
/// one-relator complex. Exact integer arithmetic throughout.
IntMat fatgraph_intersection_form(const FatGraph& g, const SpanningForest& f);

}  // namespace obk
