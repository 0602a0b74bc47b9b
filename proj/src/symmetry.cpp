#include "qws/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace qws {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v)
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    return h;
  }
};

int first_moved_point(const Permutation& p) {
  for (int i = 0; i < p.degree(); ++i)
    if (p(i) != i) return i;
  return -1;
}

}  // namespace

GeneratorSet GeneratorSet::make(int degree, std::vector<Permutation> gens,
                                GeneratorClaims claims, int fixed_vertex) {
  if (degree < 1) throw InvalidParameter("generator set degree must be >= 1");
  if (claims == GeneratorClaims::StabilizerOf &&
      (fixed_vertex < 0 || fixed_vertex >= degree))
    throw InvalidParameter("stabilized vertex out of range");

  GeneratorSet out;
  out.degree = degree;
  out.claims = claims;
  out.fixed_vertex = claims == GeneratorClaims::StabilizerOf ? fixed_vertex : -1;
  std::unordered_set<std::vector<int>, VecHash> seen;
  for (auto& p : gens) {
    if (p.degree() != degree)
      throw InvalidParameter("generator degree mismatch");
    if (p.is_identity()) continue;
    if (seen.insert(p.image()).second) out.gens.push_back(std::move(p));
  }
  return out;
}

std::string GeneratorSet::claims_string() const {
  switch (claims) {
    case GeneratorClaims::FullAutomorphism: return "full_automorphism";
    case GeneratorClaims::StabilizerOf:
      return "stabilizer_of(" + std::to_string(fixed_vertex) + ")";
    case GeneratorClaims::UserSupplied: return "user_supplied";
  }
  return "user_supplied";
}

std::vector<int> OrbitPartition::sizes() const {
  std::vector<int> s;
  s.reserve(classes.size());
  for (const auto& c : classes) s.push_back(static_cast<int>(c.size()));
  return s;
}

bool is_automorphism(const Graph& g, const Permutation& p) {
  if (p.degree() != g.n())
    throw InvalidParameter("permutation degree must match vertex count");
  for (const auto& [u, v] : g.edges())
    if (!g.has_edge(p(u), p(v))) return false;
  return true;
}

GeneratorSet family_generators(const Graph& g) {
  const FamilyTag& tag = g.family();
  if (tag.kind == Family::Complete) {
    const int n = g.n();
    std::vector<Permutation> gens;
    gens.reserve(n - 1);
    for (int i = 0; i + 1 < n; ++i)
      gens.push_back(Permutation::transposition(n, i, i + 1));
    return GeneratorSet::make(n, std::move(gens),
                              GeneratorClaims::FullAutomorphism);
  }
  if (tag.kind == Family::BalancedTree) {
    const int r = tag.a, M = tag.b, n = g.n();
    std::vector<long long> level_size(r + 1), offset(r + 1);
    level_size[0] = 1;
    for (int k = 1; k <= r; ++k) level_size[k] = level_size[k - 1] * M;
    offset[r] = 0;
    for (int k = r - 1; k >= 0; --k)
      offset[k] = offset[k + 1] + level_size[k + 1];

    // One generator per internal vertex and adjacent child pair: swap the two
    // whole subtrees rooted at children c and c+1.
    std::vector<Permutation> gens;
    for (int k = 0; k < r; ++k) {
      for (long long i = 0; i < level_size[k]; ++i) {
        for (int c = 0; c + 1 < M; ++c) {
          std::vector<int> img(n);
          std::iota(img.begin(), img.end(), 0);
          const long long a = i * M + c;
          long long block = 1;
          for (int lev = k + 1; lev <= r; ++lev) {
            for (long long t = 0; t < block; ++t) {
              const int x = static_cast<int>(offset[lev] + a * block + t);
              const int y = static_cast<int>(x + block);
              std::swap(img[x], img[y]);
            }
            block *= M;
          }
          gens.emplace_back(std::move(img));
        }
      }
    }
    return GeneratorSet::make(n, std::move(gens),
                              GeneratorClaims::FullAutomorphism);
  }
  throw InvalidParameter("no closed-form generators for family '" +
                         family_name(tag.kind) +
                         "'; use find_automorphisms instead");
}

// ---------------------------------------------------------------------------
// Automorphism search: individualization + iterated color refinement.
// ---------------------------------------------------------------------------

namespace {

// Relabels color values to 0..k-1 preserving value order; returns k.
int canonicalize_colors(std::vector<int>& colors) {
  std::vector<int> values(colors);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (int& c : colors)
    c = static_cast<int>(std::lower_bound(values.begin(), values.end(), c) -
                         values.begin());
  return static_cast<int>(values.size());
}

// Iterated (degree seeded) color refinement to a stable partition. The output
// ids are canonical: they depend only on signature values, so two colorings of
// isomorphic colored graphs refine to comparable ids.
std::vector<int> refine_colors(const Graph& g, std::vector<int> colors) {
  const int n = g.n();
  int count = canonicalize_colors(colors);
  for (;;) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.reserve(g.degree(v) + 1);
      s.push_back(colors[v]);
      for (int u : g.neighbors(v)) s.push_back(colors[u]);
      std::sort(s.begin() + 1, s.end());
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&sig](int a, int b) { return sig[a] < sig[b]; });
    std::vector<int> next(n);
    int next_count = 0;
    for (int idx = 0; idx < n; ++idx) {
      if (idx > 0 && sig[order[idx]] != sig[order[idx - 1]]) ++next_count;
      next[order[idx]] = next_count;
    }
    ++next_count;
    colors = std::move(next);
    if (next_count == count) break;
    count = next_count;
  }
  return colors;
}

struct AutSearcher {
  const Graph& g;
  int n;
  long long budget;
  std::optional<int> marked;
  std::vector<int> base;
  std::vector<std::vector<Permutation>> level_gens;

  AutSearcher(const Graph& graph, long long node_budget,
              std::optional<int> marked_vertex)
      : g(graph), n(graph.n()), budget(node_budget), marked(marked_vertex) {}

  void spend() {
    if (--budget < 0)
      throw PartialResult(
          "automorphism search node budget exhausted; no generators returned");
  }

  std::vector<int> individualized(std::vector<int> colors, int v) const {
    colors[v] = n;  // larger than any canonical id
    return refine_colors(g, colors);
  }

  // Smallest non-singleton cell by (size, color id); -1 when discrete.
  int pick_cell(const std::vector<int>& colors) const {
    std::vector<int> count(n + 1, 0);
    int kmax = 0;
    for (int c : colors) {
      ++count[c];
      kmax = std::max(kmax, c);
    }
    int best = -1;
    for (int c = 0; c <= kmax; ++c)
      if (count[c] >= 2 && (best < 0 || count[c] < count[best])) best = c;
    return best;
  }

  bool same_histogram(const std::vector<int>& a,
                      const std::vector<int>& b) const {
    std::vector<int> ca(n + 1, 0), cb(n + 1, 0);
    for (int c : a) ++ca[c];
    for (int c : b) ++cb[c];
    return ca == cb;
  }

  // Exhaustive search for one automorphism compatible with the two refined
  // colorings, required to fix base[0..level-1] (and the marked vertex)
  // pointwise and to map from_v to to_u. Canonical color ids pair the cells;
  // the leaf checks make acceptance independent of that pairing.
  std::optional<Permutation> find_one(const std::vector<int>& src,
                                      const std::vector<int>& tgt,
                                      std::size_t level, int from_v,
                                      int to_u) {
    spend();
    if (!same_histogram(src, tgt)) return std::nullopt;

    const int cell = pick_cell(src);
    if (cell < 0) {
      // discrete on both sides: map matching singletons
      std::vector<int> by_color_src(n, -1), by_color_tgt(n, -1), img(n);
      for (int v = 0; v < n; ++v) {
        by_color_src[src[v]] = v;
        by_color_tgt[tgt[v]] = v;
      }
      for (int c = 0; c < n; ++c) img[by_color_src[c]] = by_color_tgt[c];
      Permutation p(std::move(img));
      if (p(from_v) != to_u) return std::nullopt;
      for (std::size_t i = 0; i < level; ++i)
        if (p(base[i]) != base[i]) return std::nullopt;
      if (marked && p(*marked) != *marked) return std::nullopt;
      if (!is_automorphism(g, p)) return std::nullopt;
      return p;
    }

    int v = -1;
    for (int i = 0; i < n; ++i)
      if (src[i] == cell) {
        v = i;
        break;
      }
    const std::vector<int> src_next = individualized(src, v);
    for (int u = 0; u < n; ++u) {
      if (tgt[u] != cell) continue;
      if (auto p =
              find_one(src_next, individualized(tgt, u), level, from_v, to_u))
        return p;
    }
    return std::nullopt;
  }

  std::vector<char> orbit_of(int v, std::size_t level) const {
    std::vector<char> in(n, 0);
    std::vector<int> stack{v};
    in[v] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (std::size_t l = level; l < level_gens.size(); ++l) {
        for (const auto& p : level_gens[l]) {
          const int y = p(x);
          if (!in[y]) {
            in[y] = 1;
            stack.push_back(y);
          }
        }
      }
    }
    return in;
  }

  // Ensures the generators found at levels >= level generate the stabilizer
  // of base[0..level-1] inside Aut(g). colors already encode that prefix.
  void complete_level(const std::vector<int>& colors) {
    spend();
    const int cell = pick_cell(colors);
    if (cell < 0) return;  // discrete: trivial stabilizer

    int b = -1;
    for (int i = 0; i < n; ++i)
      if (colors[i] == cell) {
        b = i;
        break;
      }
    const std::size_t level = base.size();
    base.push_back(b);
    level_gens.emplace_back();

    const std::vector<int> down = individualized(colors, b);
    complete_level(down);

    for (int u = 0; u < n; ++u) {
      if (u == b || colors[u] != cell) continue;
      if (orbit_of(b, level)[u]) continue;  // image already reachable
      if (auto p = find_one(down, individualized(colors, u), level, b, u))
        level_gens[level].push_back(std::move(*p));
    }
  }
};

}  // namespace

GeneratorSet find_automorphisms(const Graph& g,
                                const AutomorphismOptions& opts) {
  if (g.n() > opts.max_vertices)
    throw ResourceLimit("graph exceeds automorphism search cap of " +
                        std::to_string(opts.max_vertices) + " vertices");
  if (opts.marked && (*opts.marked < 0 || *opts.marked >= g.n()))
    throw InvalidParameter("marked vertex out of range");

  AutSearcher searcher(g, opts.node_budget, opts.marked);
  std::vector<int> colors(g.n(), 0);
  if (opts.marked) colors[*opts.marked] = 1;
  searcher.complete_level(refine_colors(g, std::move(colors)));

  std::vector<Permutation> all;
  for (auto& lv : searcher.level_gens)
    for (auto& p : lv) all.push_back(std::move(p));
  return GeneratorSet::make(
      g.n(), std::move(all),
      opts.marked ? GeneratorClaims::StabilizerOf
                  : GeneratorClaims::FullAutomorphism,
      opts.marked.value_or(-1));
}

GeneratorSet stabilizer(const GeneratorSet& gs, int w) {
  if (gs.claims == GeneratorClaims::StabilizerOf)
    throw InvalidParameter(
        "stabilizer input must claim full_automorphism or user_supplied");
  const int n = gs.degree;
  if (w < 0 || w >= n) throw InvalidParameter("stabilized vertex out of range");

  // BFS transversal over the orbit of w: trans[k] maps w to orbit[k].
  std::vector<int> orbit{w};
  std::vector<int> pos(n, -1);
  pos[w] = 0;
  std::vector<std::vector<int>> trans, trans_inv;
  {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    trans.push_back(id);
    trans_inv.push_back(id);
  }
  for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
    for (const auto& s : gs.gens) {
      const int y = s(orbit[qi]);
      if (pos[y] >= 0) continue;
      pos[y] = static_cast<int>(orbit.size());
      orbit.push_back(y);
      const auto& tx = trans[qi];
      std::vector<int> ty(n), tyinv(n);
      for (int i = 0; i < n; ++i) ty[i] = s(tx[i]);
      for (int i = 0; i < n; ++i) tyinv[ty[i]] = i;
      trans.push_back(std::move(ty));
      trans_inv.push_back(std::move(tyinv));
    }
  }

  // Schreier generators, deduplicated by value but not minimized.
  GeneratorSet out;
  out.degree = n;
  out.claims = GeneratorClaims::StabilizerOf;
  out.fixed_vertex = w;
  std::unordered_set<std::vector<int>, VecHash> seen;
  std::vector<int> buf(n);
  for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
    const auto& tx = trans[qi];
    for (const auto& s : gs.gens) {
      const auto& tinv = trans_inv[pos[s(orbit[qi])]];
      bool identity = true;
      for (int i = 0; i < n; ++i) {
        buf[i] = tinv[s(tx[i])];
        identity = identity && buf[i] == i;
      }
      if (identity) continue;
      if (seen.insert(buf).second) out.gens.emplace_back(buf);
    }
  }
  return out;
}

OrbitPartition orbits(const GeneratorSet& gs) {
  const int n = gs.degree;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& p : gs.gens) {
    for (int i = 0; i < n; ++i) {
      const int a = find(i), b = find(p(i));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  OrbitPartition out;
  out.class_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (out.class_of[root] < 0) {
      out.class_of[root] = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
    }
    out.class_of[i] = out.class_of[root];
    out.classes[out.class_of[i]].push_back(i);
  }
  return out;
}

RealVec project_trivial(int i, const GeneratorSet& gs) {
  const int n = gs.degree;
  if (i < 0 || i >= n) throw InvalidParameter("vertex out of range");
  std::vector<char> in(n, 0);
  std::vector<int> stack{i}, members{i};
  in[i] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (const auto& p : gs.gens) {
      const int y = p(x);
      if (!in[y]) {
        in[y] = 1;
        stack.push_back(y);
        members.push_back(y);
      }
    }
  }
  RealVec v(n, 0.0);
  const double a = 1.0 / std::sqrt(static_cast<double>(members.size()));
  for (int m : members) v[m] = a;
  return v;
}

// ---------------------------------------------------------------------------
// Deterministic Schreier-Sims stabilizer chain (group order only).
// ---------------------------------------------------------------------------

namespace {

// Stabilizer chain. The generators living at level l fix the bases of all
// shallower levels; the group whose order level l contributes is generated by
// the union of the generators at levels l and deeper, so orbits and Schreier
// pairs always range over that union. A failed sift is always deposited at
// level i+1: levels deeper than the one being processed are up to date, which
// makes sifting there a complete membership test and bounds the added
// generators by the subgroup chain length.
class SchreierSims {
 public:
  SchreierSims(int degree, long long max_images)
      : degree_(degree), max_images_(max_images) {}

  void build(const std::vector<Permutation>& gens) {
    int base = -1;
    for (const auto& p : gens) {
      const int m = first_moved_point(p);
      if (m >= 0 && (base < 0 || m < base)) base = m;
    }
    if (base < 0) return;  // identity group
    levels_.emplace_back();
    levels_[0].base = base;
    levels_[0].own = gens;
    charge(static_cast<long long>(gens.size()) * degree_);
    run(0);
  }

  BigUint order() const {
    BigUint r(1);
    for (const auto& lv : levels_)
      r *= static_cast<std::uint32_t>(lv.orbit.size());
    return r;
  }

 private:
  struct Level {
    int base = -1;
    std::vector<Permutation> own;  // generators first found at this level
    std::vector<int> orbit;
    std::vector<int> pos;
    std::vector<Permutation> trans;
    std::vector<Permutation> trans_inv;
  };

  int degree_;
  long long max_images_;
  long long stored_ = 0;
  std::vector<Level> levels_;

  void charge(long long images) {
    stored_ += images;
    if (stored_ > max_images_)
      throw ResourceLimit("stabilizer chain exceeded storage cap");
  }

  // (level, index) pairs stay valid across generator appends and level
  // creation; raw references would not.
  std::vector<std::pair<std::size_t, std::size_t>> gens_view(
      std::size_t from) const {
    std::vector<std::pair<std::size_t, std::size_t>> view;
    for (std::size_t l = from; l < levels_.size(); ++l)
      for (std::size_t k = 0; k < levels_[l].own.size(); ++k)
        view.emplace_back(l, k);
    return view;
  }

  void recompute_orbit(std::size_t i) {
    Level& lv = levels_[i];
    stored_ -= static_cast<long long>(lv.trans.size() + lv.trans_inv.size()) *
               degree_;
    const auto view = gens_view(i);
    lv.orbit.assign(1, lv.base);
    lv.pos.assign(degree_, -1);
    lv.pos[lv.base] = 0;
    lv.trans.assign(1, Permutation::identity(degree_));
    lv.trans_inv.assign(1, Permutation::identity(degree_));
    for (std::size_t qi = 0; qi < lv.orbit.size(); ++qi) {
      for (const auto& [gl, gk] : view) {
        const Permutation& s = levels_[gl].own[gk];
        const int y = s(lv.orbit[qi]);
        if (lv.pos[y] >= 0) continue;
        lv.pos[y] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(y);
        Permutation ty = s.compose(lv.trans[qi]);
        lv.trans_inv.push_back(ty.inverse());
        lv.trans.push_back(std::move(ty));
      }
    }
    charge(static_cast<long long>(lv.trans.size() + lv.trans_inv.size()) *
           degree_);
  }

  Permutation sift(Permutation g, std::size_t from) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const int x = g(levels_[l].base);
      if (levels_[l].pos[x] < 0) return g;
      g = levels_[l].trans_inv[levels_[l].pos[x]].compose(g);
    }
    return g;
  }

  // Brings levels i.. up to date; levels deeper than i must be up to date on
  // entry. Additions during a pass go to level i+1 and are re-verified by the
  // recursive call, then the pass restarts so the new generators join level
  // i's own Schreier enumeration.
  void run(std::size_t i) {
    for (;;) {
      recompute_orbit(i);
      const auto view = gens_view(i);
      bool added = false;
      for (std::size_t qi = 0; qi < levels_[i].orbit.size(); ++qi) {
        for (const auto& [gl, gk] : view) {
          Permutation u = [&]() {
            const Permutation& s = levels_[gl].own[gk];
            const Level& lv = levels_[i];
            return lv.trans_inv[lv.pos[s(lv.orbit[qi])]].compose(s).compose(
                lv.trans[qi]);
          }();
          if (u.is_identity()) continue;
          Permutation res = sift(std::move(u), i + 1);
          if (res.is_identity()) continue;
          if (i + 1 == levels_.size()) {
            levels_.emplace_back();
            levels_.back().base = first_moved_point(res);
          }
          charge(degree_);
          levels_[i + 1].own.push_back(std::move(res));
          run(i + 1);
          added = true;
        }
      }
      if (!added) break;
    }
  }
};

}  // namespace

BigUint group_order(const GeneratorSet& gs, const GroupOrderOptions& opts) {
  if (gs.gens.empty()) return BigUint(1);
  SchreierSims chain(gs.degree, opts.max_stored_images);
  chain.build(gs.gens);
  return chain.order();
}

void save_generators(const GeneratorSet& gs, std::ostream& out) {
  out << gs.degree << ' ' << gs.gens.size() << ' ' << gs.claims_string()
      << '\n';
  for (const auto& p : gs.gens) out << format_permutation(p) << '\n';
}

GeneratorSet load_generators(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty generator input");
  std::istringstream header(line);
  int n = 0, k = 0;
  std::string claims_token;
  if (!(header >> n >> k >> claims_token))
    throw ParseError("expected header 'n k claims'", 1);

  GeneratorClaims claims;
  int fixed = -1;
  if (claims_token == "full_automorphism") {
    claims = GeneratorClaims::FullAutomorphism;
  } else if (claims_token == "user_supplied") {
    claims = GeneratorClaims::UserSupplied;
  } else if (claims_token.rfind("stabilizer_of(", 0) == 0 &&
             claims_token.back() == ')') {
    claims = GeneratorClaims::StabilizerOf;
    try {
      fixed = std::stoi(claims_token.substr(14));
    } catch (const std::exception&) {
      throw ParseError("bad stabilizer_of claims", 1);
    }
  } else {
    throw ParseError("unknown claims '" + claims_token + "'", 1);
  }

  std::vector<Permutation> gens;
  gens.reserve(k);
  for (int i = 0; i < k; ++i) {
    if (!std::getline(in, line))
      throw ParseError("expected " + std::to_string(k) + " generators");
    try {
      gens.push_back(parse_permutation(line, n));
    } catch (const InvalidParameter& e) {
      throw ParseError(e.what(), i + 2);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), i + 2);
    }
  }
  return GeneratorSet::make(n, std::move(gens), claims, fixed);
}

}  // namespace qws
