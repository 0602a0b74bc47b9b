#include "qws/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qws/errors.hpp"

namespace qws {

namespace {

inline void rotate(double& x, double& y, double s, double tau) {
  const double gx = x, hy = y;
  x = gx - s * (hy + gx * tau);
  y = hy + s * (gx - hy * tau);
}

}  // namespace

Spectrum eigendecompose(const SymMatrix& h, const JacobiOptions& opts) {
  const int n = h.dim();
  Spectrum out;
  out.dim = n;
  out.eigenvalues.assign(n, 0.0);
  out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
  if (n == 0) return out;

  std::vector<double> a(h.data());
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k) * n + k] = 1.0;

  RealVec b(n), d(n), z(n, 0.0);
  for (int i = 0; i < n; ++i)
    b[i] = d[i] = a[static_cast<std::size_t>(i) * n + i];
  const double target = opts.rel_tol * h.frobenius_norm();

  auto at = [&a, n](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * n + j];
  };

  bool converged = false;
  for (int sweep = 1; sweep <= opts.max_sweeps && !converged; ++sweep) {
    double off2 = 0.0, sm = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        off2 += at(p, q) * at(p, q);
        sm += std::abs(at(p, q));
      }
    }
    if (std::sqrt(2.0 * off2) <= target) {
      converged = true;
      break;
    }
    const double tresh =
        sweep < 4 ? 0.2 * sm / (static_cast<double>(n) * n) : 0.0;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        const double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(d[p]) + g == std::abs(d[p]) &&
            std::abs(d[q]) + g == std::abs(d[q])) {
          at(p, q) = 0.0;
        } else if (std::abs(apq) > tresh) {
          double diff = d[q] - d[p];
          double t;
          if (std::abs(diff) + g == std::abs(diff)) {
            t = apq / diff;
          } else {
            const double theta = 0.5 * diff / apq;
            t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const double tau = s / (1.0 + c);
          const double hh = t * apq;
          z[p] -= hh;
          z[q] += hh;
          d[p] -= hh;
          d[q] += hh;
          at(p, q) = 0.0;
          for (int j = 0; j < p; ++j) rotate(at(j, p), at(j, q), s, tau);
          for (int j = p + 1; j < q; ++j) rotate(at(p, j), at(j, q), s, tau);
          for (int j = q + 1; j < n; ++j) rotate(at(p, j), at(q, j), s, tau);
          double* vp = v.data() + static_cast<std::size_t>(p) * n;
          double* vq = v.data() + static_cast<std::size_t>(q) * n;
          for (int j = 0; j < n; ++j) rotate(vp[j], vq[j], s, tau);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      b[i] += z[i];
      d[i] = b[i];
      z[i] = 0.0;
    }
  }
  if (!converged)
    throw NumericFailure("Jacobi eigensolver hit the sweep cap of " +
                         std::to_string(opts.max_sweeps) +
                         " before converging");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&d](int x, int y) {
    return d[x] != d[y] ? d[x] < d[y] : x < y;
  });
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = d[order[k]];
    std::copy_n(v.data() + static_cast<std::size_t>(order[k]) * n, n,
                out.vectors.data() + static_cast<std::size_t>(k) * n);
  }
  return out;
}

EvolutionTrace evolve(const Spectrum& spec, const CplxVec& psi0,
                      const std::vector<double>& times, const TraceMeta& meta) {
  const int n = spec.dim;
  if (static_cast<int>(psi0.size()) != n)
    throw InvalidParameter("state size must match spectrum dimension");
  if (std::abs(cnorm(psi0) - 1.0) > 1e-9)
    throw InvalidParameter("initial state must be normalized");
  if (meta.kind == BasisKind::Reduced &&
      static_cast<int>(meta.class_sizes.size()) != n)
    throw InvalidParameter("reduced trace needs one class size per basis index");
  if (!meta.labels.empty() && static_cast<int>(meta.labels.size()) != n)
    throw InvalidParameter("label count must match basis dimension");

  CplxVec coef(n, Cplx(0.0, 0.0));
  for (int k = 0; k < n; ++k) {
    const double* vk = spec.vectors.data() + static_cast<std::size_t>(k) * n;
    Cplx s(0.0, 0.0);
    for (int i = 0; i < n; ++i) s += vk[i] * psi0[i];
    coef[k] = s;
  }

  EvolutionTrace tr;
  tr.times = times;
  tr.kind = meta.kind;
  tr.class_sizes = meta.class_sizes;
  if (meta.labels.empty()) {
    tr.labels.reserve(n);
    for (int i = 0; i < n; ++i) tr.labels.push_back("v" + std::to_string(i));
  } else {
    tr.labels = meta.labels;
  }

  tr.re.assign(times.size(), RealVec(n, 0.0));
  tr.im.assign(times.size(), RealVec(n, 0.0));
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    RealVec& re = tr.re[ti];
    RealVec& im = tr.im[ti];
    for (int k = 0; k < n; ++k) {
      const Cplx phase =
          std::exp(Cplx(0.0, -spec.eigenvalues[k] * times[ti])) * coef[k];
      const double pr = phase.real(), pi = phase.imag();
      const double* vk = spec.vectors.data() + static_cast<std::size_t>(k) * n;
      for (int i = 0; i < n; ++i) {
        re[i] += pr * vk[i];
        im[i] += pi * vk[i];
      }
    }
  }
  return tr;
}

CplxVec evolve_state(const Spectrum& spec, const CplxVec& psi0, double t) {
  const EvolutionTrace tr = evolve(spec, psi0, {t});
  CplxVec out(spec.dim);
  for (int i = 0; i < spec.dim; ++i) out[i] = tr.amplitude(0, i);
  return out;
}

RealVec success_probability(const EvolutionTrace& trace, int target,
                            bool class_probability) {
  if (target < 0 || target >= trace.dim())
    throw InvalidParameter("target basis index out of range");
  if (trace.kind == BasisKind::Reduced && !class_probability &&
      trace.class_sizes[target] != 1)
    throw InvalidParameter(
        "target class is not a singleton; its amplitude is not a vertex "
        "probability (pass class_probability to accept the class total)");
  RealVec out(trace.steps());
  for (int t = 0; t < trace.steps(); ++t) out[t] = trace.probability(t, target);
  return out;
}

double spectral_gap(const Spectrum& spec) { return gap_between(spec, 0, 1); }

double gap_between(const Spectrum& spec, int lo, int hi) {
  if (lo < 0 || hi <= lo || hi >= spec.dim)
    throw InvalidParameter("eigenvalue indices out of range");
  return spec.eigenvalues[hi] - spec.eigenvalues[lo];
}

OverlapTable overlap_table(
    const Spectrum& spec,
    const std::vector<std::pair<std::string, RealVec>>& states) {
  OverlapTable out;
  for (const auto& [label, state] : states) {
    if (static_cast<int>(state.size()) != spec.dim)
      throw InvalidParameter("state size must match spectrum dimension");
    if (std::abs(norm(state) - 1.0) > 1e-9)
      throw InvalidParameter("overlap states must be normalized");
    RealVec row(spec.dim, 0.0);
    for (int k = 0; k < spec.dim; ++k) {
      double s = 0.0;
      const double* vk =
          spec.vectors.data() + static_cast<std::size_t>(k) * spec.dim;
      for (int i = 0; i < spec.dim; ++i) s += vk[i] * state[i];
      row[k] = std::abs(s);
    }
    out.state_labels.push_back(label);
    out.magnitudes.push_back(std::move(row));
  }
  return out;
}

std::vector<double> default_time_grid(double t_predicted, double gap,
                                      int steps) {
  if (steps < 2) throw InvalidParameter("time grid needs at least two points");
  double tmax;
  if (t_predicted > 0.0) {
    tmax = 1.5 * t_predicted;
  } else {
    if (!(gap > 0.0))
      throw InvalidParameter(
          "need a positive predicted time or a positive gap");
    tmax = 10.0 * 3.14159265358979323846 / gap;
  }
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i)
    out[i] = tmax * static_cast<double>(i) / (steps - 1);
  return out;
}

}  // namespace qws
