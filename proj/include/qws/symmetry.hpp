#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qws/bigint.hpp"
#include "qws/graph.hpp"
#include "qws/permutation.hpp"

namespace qws {

enum class GeneratorClaims { FullAutomorphism, StabilizerOf, UserSupplied };

// A set of group generators acting on {0..degree-1}. Never contains the
// identity or duplicates; all generators share the same degree.
struct GeneratorSet {
  int degree = 0;
  std::vector<Permutation> gens;
  GeneratorClaims claims = GeneratorClaims::UserSupplied;
  int fixed_vertex = -1;  // meaningful when claims == StabilizerOf

  // Filters identity elements, deduplicates, validates degrees.
  static GeneratorSet make(int degree, std::vector<Permutation> gens,
                           GeneratorClaims claims,
                           int fixed_vertex = -1);

  std::string claims_string() const;
};

// Partition of {0..n-1} into group orbits. Classes are ordered canonically by
// smallest member; members within a class ascend.
struct OrbitPartition {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;

  int n() const { return static_cast<int>(class_of.size()); }
  int count() const { return static_cast<int>(classes.size()); }
  int size(int c) const { return static_cast<int>(classes[c].size()); }
  std::vector<int> sizes() const;
};

// Edge preservation test. Throws when degrees mismatch.
bool is_automorphism(const Graph& g, const Permutation& p);

// Closed-form generating sets for the families that admit one:
//   complete:      adjacent transpositions (i, i+1)
//   balanced tree: adjacent-pair whole-subtree swaps below every internal
//                  vertex (M^r - 1 generators)
// Other families must go through find_automorphisms; asking here is an error.
GeneratorSet family_generators(const Graph& g);

struct AutomorphismOptions {
  int max_vertices = 512;
  long long node_budget = 20'000'000;
  // When set, the search is seeded with this vertex in its own color class
  // and returns stabilizer generators directly.
  std::optional<int> marked;
};

// Backtracking search over candidate bijections, pruned by iterated
// degree-color (equitable partition) refinement. Every emitted generator
// passes is_automorphism. Exceeding the vertex cap raises ResourceLimit;
// exhausting the node budget raises PartialResult.
GeneratorSet find_automorphisms(const Graph& g,
                                const AutomorphismOptions& opts = {});

// Point stabilizer of w via orbit-stabilizer: Schreier generators from a BFS
// transversal, deduplicated but not minimized. Input must claim
// full_automorphism or user_supplied.
GeneratorSet stabilizer(const GeneratorSet& gs, int w);

// Connected components of the Schreier graph of gs.
OrbitPartition orbits(const GeneratorSet& gs);

// Normalized uniform superposition over the orbit of vertex i: the image of
// |i> under the trivial-irrep projector, realized by orbit closure rather
// than by group-element enumeration.
RealVec project_trivial(int i, const GeneratorSet& gs);

struct GroupOrderOptions {
  // Cap on stabilizer-chain storage (total permutation images held).
  long long max_stored_images = 200'000'000;
};

// Group order via a deterministic Schreier-Sims stabilizer chain.
BigUint group_order(const GeneratorSet& gs, const GroupOrderOptions& opts = {});

// Text form: header "n k claims", then k one-line permutation images.
void save_generators(const GeneratorSet& gs, std::ostream& out);
GeneratorSet load_generators(std::istream& in);

}  // namespace qws
