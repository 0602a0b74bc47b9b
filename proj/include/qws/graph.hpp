#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qws/errors.hpp"
#include "qws/matrix.hpp"

namespace qws {

enum class Family { Complete, BalancedTree, TruncatedSimplex, Custom };

std::string family_name(Family f);

// Construction parameters of a family instance. Meaning of a/b:
//   Complete:         a = vertex count
//   BalancedTree:     a = height, b = branching factor
//   TruncatedSimplex: a = order, b = branching factor
struct FamilyTag {
  Family kind = Family::Custom;
  int a = 0;
  int b = 0;
};

// Undirected simple graph. Edges are stored as (u, v) with u < v, sorted
// lexicographically; adjacency lists are sorted ascending. Self-loops and
// duplicate edges are rejected at construction.
class Graph {
 public:
  Graph(int n, std::vector<std::pair<int, int>> edges, FamilyTag tag = {},
        int default_marked = 0);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;

  // Degree statistics; the graph is regular when min == max.
  int min_degree() const;
  int max_degree() const;
  bool is_regular() const { return min_degree() == max_degree(); }

  const FamilyTag& family() const { return family_; }

  // Family-specific canonical choice of marked vertex.
  int default_marked() const { return default_marked_; }

  std::string label(int v) const;
  void set_labels(std::vector<std::string> labels);

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  FamilyTag family_;
  int default_marked_ = 0;
  std::vector<std::string> labels_;
};

Graph build_complete(int n);

// Height r >= 1, branching M >= 2. Vertices are numbered level by level from
// the leaves upward: leaves take 0 .. M^r - 1, the root is the last index.
// The i-th vertex of a level has children i*M .. i*M + M - 1 in the level
// below it.
Graph build_balanced_tree(int height, int branching);

// Order j >= 0, branching M >= 2. Order 0 is the complete graph on M + 1
// vertices. Each step replaces every vertex v by an M-clique occupying block
// v*M .. v*M + M - 1; v's neighbors sorted ascending are matched to the clique
// members in index order, each member inheriting exactly one external edge.
// The result is M-regular on (M+1) * M^j vertices.
Graph build_truncated_simplex(int order, int branching);

// Text format: first line "n m", then m lines "u v". Rejects self-loops,
// duplicates and out-of-range endpoints with a 1-based line number.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void save_edge_list(const Graph& g, std::ostream& out);

enum class MatrixKind { Laplacian, Adjacency };

std::string matrix_kind_name(MatrixKind k);

// Hopping matrix selection plus oracle placement. gamma must be finite and
// >= 0; gamma == 0 leaves only the oracle term. No marked vertex means no
// oracle term at all.
struct HamiltonianSpec {
  MatrixKind kind = MatrixKind::Laplacian;
  double gamma = 1.0;
  std::optional<int> marked;
};

// Sign convention: L has NEGATIVE diagonal, L_jj = -deg(j) and L_jk = 1 for
// every edge (j, k). Much of the literature uses the opposite sign; every
// consumer in this codebase assumes this one.
SymMatrix laplacian(const Graph& g);
SymMatrix adjacency(const Graph& g);

// H = -gamma * B - |w><w| where B is the Laplacian or adjacency matrix per
// spec.kind and w the marked vertex (oracle omitted when absent).
SymMatrix search_hamiltonian(const Graph& g, const HamiltonianSpec& spec);

}  // namespace qws
