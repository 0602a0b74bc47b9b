#include "qws/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace qws {

std::string family_name(Family f) {
  switch (f) {
    case Family::Complete: return "complete";
    case Family::BalancedTree: return "balanced_tree";
    case Family::TruncatedSimplex: return "truncated_simplex";
    case Family::Custom: return "custom";
  }
  return "custom";
}

std::string matrix_kind_name(MatrixKind k) {
  return k == MatrixKind::Laplacian ? "laplacian" : "adjacency";
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges, FamilyTag tag,
             int default_marked)
    : n_(n), family_(tag), default_marked_(default_marked) {
  if (n < 1) throw InvalidParameter("graph needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u == v) throw InvalidParameter("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n)
      throw InvalidParameter("edge endpoint out of range: (" +
                             std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw InvalidParameter("duplicate edge");
  edges_ = std::move(edges);
  adj_.assign(n, {});
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  if (default_marked_ < 0 || default_marked_ >= n_) default_marked_ = 0;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::min_degree() const {
  int d = n_;
  for (const auto& nb : adj_) d = std::min(d, static_cast<int>(nb.size()));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
  return d;
}

std::string Graph::label(int v) const {
  if (!labels_.empty()) return labels_[v];
  return "v" + std::to_string(v);
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != n_)
    throw InvalidParameter("label count must equal vertex count");
  labels_ = std::move(labels);
}

Graph build_complete(int n) {
  if (n < 2) throw InvalidParameter("complete graph needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges), {Family::Complete, n, 0}, 0);
}

Graph build_balanced_tree(int height, int branching) {
  if (height < 1) throw InvalidParameter("tree height must be >= 1");
  if (branching < 2) throw InvalidParameter("tree branching must be >= 2");
  const int r = height, M = branching;

  // level k (root = 0) holds M^k vertices; leaves are numbered first.
  std::vector<long long> level_size(r + 1);
  level_size[0] = 1;
  for (int k = 1; k <= r; ++k) {
    level_size[k] = level_size[k - 1] * M;
    if (level_size[k] > (1LL << 26))
      throw ResourceLimit("balanced tree too large");
  }
  std::vector<long long> offset(r + 1);
  offset[r] = 0;
  for (int k = r - 1; k >= 0; --k) offset[k] = offset[k + 1] + level_size[k + 1];
  const long long n = offset[0] + 1;

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  for (int k = 0; k < r; ++k) {
    for (long long i = 0; i < level_size[k]; ++i) {
      const int parent = static_cast<int>(offset[k] + i);
      for (int c = 0; c < M; ++c) {
        const int child = static_cast<int>(offset[k + 1] + i * M + c);
        edges.emplace_back(child, parent);
      }
    }
  }
  // marked default: leaf 0
  return Graph(static_cast<int>(n), std::move(edges),
               {Family::BalancedTree, r, M}, 0);
}

Graph build_truncated_simplex(int order, int branching) {
  if (order < 0) throw InvalidParameter("truncated simplex order must be >= 0");
  if (branching < 2) throw InvalidParameter("branching must be >= 2");
  const int M = branching;

  long long n = M + 1;
  for (int s = 0; s < order; ++s) {
    n *= M;
    if (n > (1LL << 26)) throw ResourceLimit("truncated simplex too large");
  }

  int cur_n = M + 1;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u <= M; ++u)
    for (int v = u + 1; v <= M; ++v) edges.emplace_back(u, v);

  // Outer corner vertex: follow one original edge of the base simplex through
  // every replacement step; its endpoint stays on the outermost clique chain.
  int mv = 0, mu = 1;

  for (int step = 0; step < order; ++step) {
    std::vector<std::vector<int>> adj(cur_n);
    for (const auto& [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());

    auto slot = [&adj](int v, int target) {
      const auto& nb = adj[v];
      return static_cast<int>(std::lower_bound(nb.begin(), nb.end(), target) -
                              nb.begin());
    };

    std::vector<std::pair<int, int>> next;
    next.reserve(static_cast<std::size_t>(cur_n) * M * (M - 1) / 2 + edges.size());
    for (int v = 0; v < cur_n; ++v)
      for (int s = 0; s < M; ++s)
        for (int t = s + 1; t < M; ++t) next.emplace_back(v * M + s, v * M + t);
    for (const auto& [a, b] : edges)
      next.emplace_back(a * M + slot(a, b), b * M + slot(b, a));

    const int old_mv = mv, old_mu = mu;
    mv = old_mv * M + slot(old_mv, old_mu);
    mu = old_mu * M + slot(old_mu, old_mv);

    edges = std::move(next);
    cur_n *= M;
  }
  return Graph(cur_n, std::move(edges), {Family::TruncatedSimplex, order, M}, mv);
}

Graph load_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("empty edge list input");
  long long n = 0, m = 0;
  {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> n >> m) || (ss >> extra))
      throw ParseError("expected header 'n m'", lineno);
  }
  if (n < 1) throw ParseError("vertex count must be >= 1", lineno);
  if (m < 0) throw ParseError("edge count must be >= 0", lineno);

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::set<std::pair<int, int>> seen;
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw ParseError("unexpected end of input: expected " +
                                       std::to_string(m) + " edges");
    std::istringstream ss(line);
    long long u = 0, v = 0;
    std::string extra;
    if (!(ss >> u >> v) || (ss >> extra))
      throw ParseError("expected edge 'u v'", lineno);
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError("edge endpoint out of range", lineno);
    if (u == v) throw ParseError("self-loop rejected", lineno);
    int lo = static_cast<int>(u), hi = static_cast<int>(v);
    if (lo > hi) std::swap(lo, hi);
    if (!seen.insert({lo, hi}).second)
      throw ParseError("duplicate edge rejected", lineno);
    edges.emplace_back(lo, hi);
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list file: " + path);
  return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

SymMatrix laplacian(const Graph& g) {
  SymMatrix l(g.n());
  for (int v = 0; v < g.n(); ++v) l.set_sym(v, v, -static_cast<double>(g.degree(v)));
  for (const auto& [u, v] : g.edges()) l.set_sym(u, v, 1.0);
  return l;
}

SymMatrix adjacency(const Graph& g) {
  SymMatrix a(g.n());
  for (const auto& [u, v] : g.edges()) a.set_sym(u, v, 1.0);
  return a;
}

SymMatrix search_hamiltonian(const Graph& g, const HamiltonianSpec& spec) {
  if (!std::isfinite(spec.gamma) || spec.gamma < 0.0)
    throw InvalidParameter("gamma must be finite and >= 0");
  if (spec.marked && (*spec.marked < 0 || *spec.marked >= g.n()))
    throw InvalidParameter("marked vertex out of range");

  SymMatrix h(g.n());
  const double gamma = spec.gamma;
  if (spec.kind == MatrixKind::Laplacian) {
    for (int v = 0; v < g.n(); ++v) h.set_sym(v, v, gamma * g.degree(v));
  }
  for (const auto& [u, v] : g.edges()) h.set_sym(u, v, -gamma);
  if (spec.marked) h.add_sym(*spec.marked, *spec.marked, -1.0);
  return h;
}

}  // namespace qws
