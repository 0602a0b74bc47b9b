#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qws/matrix.hpp"

namespace qws {

// Full real spectral decomposition. Eigenvalues ascend; eigenvectors are the
// orthonormal columns, stored column-major so component(i, k) is the i-th
// entry of eigenvector k.
struct Spectrum {
  RealVec eigenvalues;
  std::vector<double> vectors;  // column-major, dim x dim
  int dim = 0;

  double component(int i, int k) const {
    return vectors[static_cast<std::size_t>(k) * dim + i];
  }
};

struct JacobiOptions {
  // Converged when the off-diagonal Frobenius mass falls to this fraction of
  // the matrix Frobenius norm.
  double rel_tol = 1e-14;
  int max_sweeps = 50;
};

// Cyclic Jacobi with deterministic (row-major) rotation order. Raises
// NumericFailure if the sweep cap is hit before convergence.
Spectrum eigendecompose(const SymMatrix& h, const JacobiOptions& opts = {});

enum class BasisKind { Full, Reduced };

// Sampled quantum state history. Complex amplitudes live in separate real and
// imaginary planes indexed [time][basis index]; the matrix core stays real.
struct EvolutionTrace {
  std::vector<double> times;
  std::vector<RealVec> re;
  std::vector<RealVec> im;
  BasisKind kind = BasisKind::Full;
  std::vector<int> class_sizes;      // reduced traces only
  std::vector<std::string> labels;   // one per basis index

  int steps() const { return static_cast<int>(times.size()); }
  int dim() const { return times.empty() ? 0 : static_cast<int>(re[0].size()); }
  Cplx amplitude(int t, int j) const { return {re[t][j], im[t][j]}; }
  double probability(int t, int j) const {
    return re[t][j] * re[t][j] + im[t][j] * im[t][j];
  }
};

struct TraceMeta {
  BasisKind kind = BasisKind::Full;
  std::vector<int> class_sizes;
  std::vector<std::string> labels;
};

// Exact spectral synthesis psi(t) = sum_k e^{-i lambda_k t} <v_k|psi0> v_k.
// No step-by-step integration, so times may be arbitrary and unordered.
// psi0 must be normalized.
EvolutionTrace evolve(const Spectrum& spec, const CplxVec& psi0,
                      const std::vector<double>& times,
                      const TraceMeta& meta = {});

// Single-time convenience variant of the synthesis above.
CplxVec evolve_state(const Spectrum& spec, const CplxVec& psi0, double t);

// |amplitude|^2 series for one basis index. On a reduced trace the target
// must be a singleton class; pass class_probability = true to accept the
// (physically different) total class probability instead.
RealVec success_probability(const EvolutionTrace& trace, int target,
                            bool class_probability = false);

double spectral_gap(const Spectrum& spec);           // E1 - E0
double gap_between(const Spectrum& spec, int lo, int hi);

// Magnitudes |<state|v_k>| for each supplied (label, state) row against every
// eigenvector. States must be normalized.
struct OverlapTable {
  std::vector<std::string> state_labels;
  std::vector<RealVec> magnitudes;  // [state][eigenvector]
};

OverlapTable overlap_table(const Spectrum& spec,
                           const std::vector<std::pair<std::string, RealVec>>& states);

// Default grid: 1001 uniform points on [0, 1.5 * t_predicted] when a
// predicted runtime exists, otherwise [0, 10 * pi / gap].
std::vector<double> default_time_grid(double t_predicted, double gap,
                                      int steps = 1001);

}  // namespace qws
