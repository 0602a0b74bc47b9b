#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qws/graph.hpp"
#include "qws/matrix.hpp"
#include "qws/symmetry.hpp"

namespace qws {

// Orthonormal basis of identically-evolving vertex classes. Each basis state
// is the normalized uniform superposition over one class. Classes keep the
// canonical (smallest-member) order except that the marked vertex's class is
// always moved to the front when a marked vertex is supplied.
struct ReducedBasis {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  std::vector<int> sizes;
  std::vector<std::string> labels;  // label of the smallest member
  int marked_class = -1;            // index into classes when marked was given
  int full_dim = 0;

  int dim() const { return static_cast<int>(classes.size()); }

  static ReducedBasis from_orbits(const OrbitPartition& orbits, const Graph& g,
                                  std::optional<int> marked = std::nullopt);
};

struct ReducedHamiltonian {
  SymMatrix matrix;
  ReducedBasis basis;
  HamiltonianSpec spec;
};

// entry(a, b) = sum_{i in a, j in b} H_ij / sqrt(|a| |b|). The double sum is
// accumulated from the nonzero entries of H only, so sparse Hamiltonians
// reduce in O(nnz) regardless of class count.
ReducedHamiltonian reduce(const SymMatrix& h, const ReducedBasis& basis,
                          const HamiltonianSpec& spec = {});

// Max-abs entry of (I - P) H P with P the projector onto the basis span.
// Zero (to rounding) exactly when span{basis} is H-invariant.
double invariance_residual(const SymMatrix& h, const ReducedBasis& basis);

// Adjoint pair mapping between full space and class coordinates.
RealVec project_state(const RealVec& v, const ReducedBasis& basis);
CplxVec project_state(const CplxVec& v, const ReducedBasis& basis);
RealVec lift(const RealVec& u, const ReducedBasis& basis);
CplxVec lift(const CplxVec& u, const ReducedBasis& basis);

// Orthonormal Krylov basis of span{start, H start, H^2 start, ...} by
// Gram-Schmidt with deflation: the walk stops early when the next residual
// norm drops below deflation_tol. start must be normalized.
std::vector<RealVec> lanczos_basis(const SymMatrix& h, const RealVec& start,
                                   int k, double deflation_tol = 1e-10);

}  // namespace qws
