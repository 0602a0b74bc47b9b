#include "qws/search.hpp"

#include <algorithm>
#include <cmath>

#include "qws/errors.hpp"

namespace qws {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> stage_grid(double horizon, int steps) {
  std::vector<double> times(steps);
  for (int i = 0; i < steps; ++i)
    times[i] = horizon * static_cast<double>(i) / (steps - 1);
  return times;
}

// Earliest strict maximum of the series.
std::pair<int, double> peak_of(const RealVec& probs) {
  int best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i)
    if (probs[i] > probs[best]) best = static_cast<int>(i);
  return {best, probs[best]};
}

int marked_index(const ReducedBasis& basis, int w) {
  const int tgt =
      basis.marked_class >= 0 ? basis.marked_class : basis.class_of[w];
  if (tgt < 0 || tgt >= basis.dim())
    throw InvalidParameter("basis does not cover the marked vertex");
  return tgt;
}

}  // namespace

Schedule Schedule::make(std::vector<Stage> stages) {
  if (stages.empty())
    throw InvalidParameter("schedule needs at least one stage");
  for (const auto& st : stages) {
    if (!std::isfinite(st.gamma) || st.gamma < 0.0)
      throw InvalidParameter("stage gamma must be finite and >= 0");
    if (!std::isfinite(st.duration) || st.duration < 0.0)
      throw InvalidParameter("stage duration must be finite and >= 0");
  }
  Schedule s;
  s.stages = std::move(stages);
  return s;
}

RealVec uniform_state(int n) {
  if (n < 1) throw InvalidParameter("state dimension must be >= 1");
  return RealVec(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

CplxVec uniform_state_c(int n) {
  if (n < 1) throw InvalidParameter("state dimension must be >= 1");
  return CplxVec(n, Cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
}

Schedule predicted_schedule(const Graph& g) {
  const FamilyTag& tag = g.family();
  if (tag.kind == Family::Complete) {
    const double N = static_cast<double>(g.n());
    return Schedule::make({{1.0 / N, kPi * std::sqrt(N) / 2.0}});
  }
  if (tag.kind == Family::BalancedTree && tag.a == 2) {
    const double M = static_cast<double>(tag.b);
    return Schedule::make({{2.0, kPi * std::pow(M, 1.5) / 4.0},
                           {1.0, kPi * std::sqrt(M) / 2.0}});
  }
  if (tag.kind == Family::TruncatedSimplex && tag.a == 2) {
    const double M = static_cast<double>(tag.b);
    return Schedule::make({{3.0 / M, kPi * std::pow(M, 2.5) / 6.0},
                           {2.0 / M, kPi * std::pow(M, 1.5) / 4.0},
                           {1.0 / M, kPi * std::sqrt(M) / 2.0}});
  }
  throw InvalidParameter(
      "no closed-form schedule for this graph; supply stages explicitly");
}

SearchReport run_schedule(const Graph& g, MatrixKind kind, int w,
                          const Schedule& sched, const ReducedBasis* basis,
                          const SearchOptions& opts) {
  if (w < 0 || w >= g.n())
    throw InvalidParameter("marked vertex out of range");
  if (opts.steps < 2)
    throw InvalidParameter("need at least two trace points per stage");
  if (!(opts.horizon_factor > 0.0))
    throw InvalidParameter("horizon factor must be positive");
  if (basis && basis->full_dim != g.n())
    throw InvalidParameter("basis dimension must match vertex count");

  TraceMeta meta;
  int tgt;
  if (basis) {
    meta.kind = BasisKind::Reduced;
    meta.class_sizes = basis->sizes;
    meta.labels = basis->labels;
    tgt = marked_index(*basis, w);
  } else {
    meta.kind = BasisKind::Full;
    meta.labels.reserve(g.n());
    for (int i = 0; i < g.n(); ++i) meta.labels.push_back(g.label(i));
    tgt = w;
  }

  CplxVec state = basis ? project_state(uniform_state_c(g.n()), *basis)
                        : uniform_state_c(g.n());

  SearchReport rep;
  for (const Stage& st : sched.stages) {
    const SymMatrix h = search_hamiltonian(g, {kind, st.gamma, w});
    Spectrum spec;
    if (basis) {
      spec = eigendecompose(reduce(h, *basis, {kind, st.gamma, w}).matrix);
    } else {
      spec = eigendecompose(h);
    }

    const std::vector<double> times =
        stage_grid(opts.horizon_factor * st.duration, opts.steps);
    EvolutionTrace trace = evolve(spec, state, times, meta);
    const RealVec probs = success_probability(trace, tgt);
    const auto [peak_idx, peak_val] = peak_of(probs);

    state = evolve_state(spec, state, st.duration);

    StageResult sr;
    sr.gamma = st.gamma;
    sr.duration = st.duration;
    sr.gap = spec.dim >= 2 ? spectral_gap(spec) : 0.0;
    sr.target = tgt;
    sr.measured_peak_time = times[peak_idx];
    sr.peak_value = peak_val;
    sr.trace = std::move(trace);
    rep.stages.push_back(std::move(sr));
  }
  rep.final_success = std::norm(state[tgt]);
  return rep;
}

std::vector<GammaScanPoint> scan_gamma(const Graph& g, MatrixKind kind, int w,
                                       const ReducedBasis& basis,
                                       std::vector<double> gammas,
                                       double horizon, int steps) {
  if (gammas.empty()) throw InvalidParameter("gamma list is empty");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw InvalidParameter("scan horizon must be positive and finite");
  if (steps < 2) throw InvalidParameter("need at least two trace points");
  if (w < 0 || w >= g.n())
    throw InvalidParameter("marked vertex out of range");
  if (basis.full_dim != g.n())
    throw InvalidParameter("basis dimension must match vertex count");
  for (double gm : gammas)
    if (!std::isfinite(gm) || gm < 0.0)
      throw InvalidParameter("scan gammas must be finite and >= 0");
  std::sort(gammas.begin(), gammas.end());

  const int tgt = marked_index(basis, w);
  const CplxVec psi0 = project_state(uniform_state_c(g.n()), basis);
  const std::vector<double> times = stage_grid(horizon, steps);
  TraceMeta meta{BasisKind::Reduced, basis.sizes, basis.labels};

  std::vector<GammaScanPoint> out;
  out.reserve(gammas.size());
  for (double gm : gammas) {
    const SymMatrix h = search_hamiltonian(g, {kind, gm, w});
    const Spectrum spec =
        eigendecompose(reduce(h, basis, {kind, gm, w}).matrix);
    const EvolutionTrace trace = evolve(spec, psi0, times, meta);
    const auto [peak_idx, peak_val] = peak_of(success_probability(trace, tgt));
    GammaScanPoint pt;
    pt.gamma = gm;
    pt.gap = spec.dim >= 2 ? spectral_gap(spec) : 0.0;
    pt.max_success = peak_val;
    pt.argmax_time = times[peak_idx];
    out.push_back(pt);
  }
  return out;
}

std::vector<double> default_gamma_grid(double gamma_predicted) {
  if (!(gamma_predicted > 0.0) || !std::isfinite(gamma_predicted))
    throw InvalidParameter("predicted gamma must be positive and finite");
  std::vector<double> out;
  out.reserve(41);
  for (int i = 0; i <= 40; ++i)
    out.push_back(gamma_predicted *
                  std::pow(10.0, -1.0 + 2.0 * static_cast<double>(i) / 40.0));
  return out;
}

double verify_reduced_vs_full(const Graph& g, MatrixKind kind, int w,
                              const Schedule& sched, const ReducedBasis& basis,
                              const VerifyOptions& opts) {
  if (g.n() > opts.max_full_dim)
    throw ResourceLimit("full-space verification capped at dimension " +
                        std::to_string(opts.max_full_dim));
  if (w < 0 || w >= g.n())
    throw InvalidParameter("marked vertex out of range");
  if (basis.full_dim != g.n())
    throw InvalidParameter("basis dimension must match vertex count");
  if (opts.steps < 2) throw InvalidParameter("need at least two trace points");

  const int d = basis.dim();
  CplxVec full = uniform_state_c(g.n());
  CplxVec red = project_state(full, basis);

  double worst = 0.0;
  auto record = [&worst, &basis, d](const CplxVec& full_state,
                                    const CplxVec& red_state) {
    const CplxVec projected = project_state(full_state, basis);
    for (int a = 0; a < d; ++a)
      worst = std::max(worst, std::abs(projected[a] - red_state[a]));
  };

  for (const Stage& st : sched.stages) {
    const SymMatrix h = search_hamiltonian(g, {kind, st.gamma, w});
    const Spectrum spec_full = eigendecompose(h);
    const Spectrum spec_red =
        eigendecompose(reduce(h, basis, {kind, st.gamma, w}).matrix);

    const std::vector<double> times =
        stage_grid(opts.horizon_factor * st.duration, opts.steps);
    const EvolutionTrace tf = evolve(spec_full, full, times);
    const EvolutionTrace tr =
        evolve(spec_red, red, times,
               TraceMeta{BasisKind::Reduced, basis.sizes, basis.labels});

    CplxVec fs(g.n()), rs(d);
    for (int t = 0; t < tf.steps(); ++t) {
      for (int i = 0; i < g.n(); ++i) fs[i] = tf.amplitude(t, i);
      for (int a = 0; a < d; ++a) rs[a] = tr.amplitude(t, a);
      record(fs, rs);
    }

    full = evolve_state(spec_full, full, st.duration);
    red = evolve_state(spec_red, red, st.duration);
    record(full, red);  // hand-off instant need not sit on the grid
  }
  return worst;
}

}  // namespace qws
