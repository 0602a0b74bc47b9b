#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qws/dynamics.hpp"
#include "qws/graph.hpp"
#include "qws/reduction.hpp"

namespace qws {

struct Stage {
  double gamma = 0.0;
  double duration = 0.0;
};

// Piecewise-constant jumping-rate schedule. The evolved state is carried
// across stage boundaries; each stage rebuilds the Hamiltonian with its own
// gamma.
struct Schedule {
  std::vector<Stage> stages;

  static Schedule make(std::vector<Stage> stages);  // validates
};

RealVec uniform_state(int n);
CplxVec uniform_state_c(int n);

// Closed-form optimal schedules:
//   complete N:            [(1/N,  pi sqrt(N) / 2)]
//   balanced tree r=2:     [(2, pi M^{3/2} / 4), (1, pi M^{1/2} / 2)]
//   truncated simplex j=2: [(3/M, pi M^{5/2} / 6), (2/M, pi M^{3/2} / 4),
//                           (1/M, pi M^{1/2} / 2)]
// Anything else is an error.
Schedule predicted_schedule(const Graph& g);

struct SearchOptions {
  int steps = 1001;          // points per stage trace
  double horizon_factor = 1.5;  // trace horizon as multiple of stage duration
};

struct StageResult {
  double gamma = 0.0;
  double duration = 0.0;
  double gap = 0.0;                // E1 - E0 of the stage Hamiltonian
  int target = -1;                 // basis index whose peak is measured
  double measured_peak_time = 0.0; // argmax of target probability on horizon
  double peak_value = 0.0;
  EvolutionTrace trace;
};

struct SearchReport {
  double final_success = 0.0;  // marked-vertex probability at schedule end
  std::vector<StageResult> stages;
  // Max deviation between reduced amplitudes and projected full amplitudes,
  // present when verification ran.
  std::optional<double> reduced_full_deviation;
};

// Runs the schedule from the uniform state. With a basis the dynamics run in
// class coordinates; without one they run in the full vertex space.
SearchReport run_schedule(const Graph& g, MatrixKind kind, int w,
                          const Schedule& sched,
                          const ReducedBasis* basis = nullptr,
                          const SearchOptions& opts = {});

struct GammaScanPoint {
  double gamma = 0.0;
  double gap = 0.0;
  double max_success = 0.0;
  double argmax_time = 0.0;
};

// Evaluates gap and best marked-class probability over a fixed horizon for
// each gamma. Output rows ascend in gamma regardless of input order.
std::vector<GammaScanPoint> scan_gamma(const Graph& g, MatrixKind kind, int w,
                                       const ReducedBasis& basis,
                                       std::vector<double> gammas,
                                       double horizon, int steps = 1001);

// 41 log-spaced points on [0.1, 10] x gamma_predicted.
std::vector<double> default_gamma_grid(double gamma_predicted);

struct VerifyOptions {
  int steps = 1001;
  double horizon_factor = 1.5;
  int max_full_dim = 2048;  // brute-force cap
};

// Runs the schedule in both spaces and returns the max over stages, sampled
// times and classes of |reduced amplitude - projected full amplitude|.
double verify_reduced_vs_full(const Graph& g, MatrixKind kind, int w,
                              const Schedule& sched, const ReducedBasis& basis,
                              const VerifyOptions& opts = {});

}  // namespace qws
