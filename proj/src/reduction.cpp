#include "qws/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "qws/errors.hpp"

namespace qws {

ReducedBasis ReducedBasis::from_orbits(const OrbitPartition& orbits,
                                       const Graph& g,
                                       std::optional<int> marked) {
  if (orbits.n() != g.n())
    throw InvalidParameter("orbit partition size must match vertex count");
  if (marked && (*marked < 0 || *marked >= g.n()))
    throw InvalidParameter("marked vertex out of range");

  ReducedBasis b;
  b.full_dim = g.n();
  b.classes = orbits.classes;
  if (marked) {
    const int mc = orbits.class_of[*marked];
    std::rotate(b.classes.begin(), b.classes.begin() + mc,
                b.classes.begin() + mc + 1);
    b.marked_class = 0;
  }
  b.class_of.assign(g.n(), -1);
  for (std::size_t a = 0; a < b.classes.size(); ++a)
    for (int v : b.classes[a]) b.class_of[v] = static_cast<int>(a);
  b.sizes.reserve(b.classes.size());
  b.labels.reserve(b.classes.size());
  for (const auto& cls : b.classes) {
    b.sizes.push_back(static_cast<int>(cls.size()));
    b.labels.push_back(g.label(cls.front()));
  }
  return b;
}

ReducedHamiltonian reduce(const SymMatrix& h, const ReducedBasis& basis,
                          const HamiltonianSpec& spec) {
  const int n = h.dim();
  if (n != basis.full_dim)
    throw InvalidParameter("matrix size must match basis full dimension");
  const int d = basis.dim();

  // Accumulate the exact double sum over ordered vertex pairs; the two
  // symmetric contributions are added in the same order on both sides, so the
  // accumulator is symmetric to the last bit.
  std::vector<double> acc(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < n; ++i) {
    const int a = basis.class_of[i];
    for (int j = i; j < n; ++j) {
      const double v = h(i, j);
      if (v == 0.0) continue;
      const int b = basis.class_of[j];
      acc[static_cast<std::size_t>(a) * d + b] += v;
      if (i != j) acc[static_cast<std::size_t>(b) * d + a] += v;
    }
  }

  ReducedHamiltonian out{SymMatrix(d), basis, spec};
  for (int a = 0; a < d; ++a) {
    const double sa = static_cast<double>(basis.sizes[a]);
    for (int b = a; b < d; ++b) {
      const double scale =
          1.0 / std::sqrt(sa * static_cast<double>(basis.sizes[b]));
      out.matrix.set_sym(a, b, acc[static_cast<std::size_t>(a) * d + b] * scale);
    }
  }
  return out;
}

double invariance_residual(const SymMatrix& h, const ReducedBasis& basis) {
  const int n = h.dim();
  if (n != basis.full_dim)
    throw InvalidParameter("matrix size must match basis full dimension");
  double worst = 0.0;
  for (int a = 0; a < basis.dim(); ++a) {
    RealVec u(n, 0.0);
    const double inv_sa = 1.0 / std::sqrt(static_cast<double>(basis.sizes[a]));
    for (int m : basis.classes[a]) u[m] = inv_sa;
    const RealVec v = matvec(h, u);
    const RealVec back = lift(project_state(v, basis), basis);
    double local = 0.0;
    for (int i = 0; i < n; ++i)
      local = std::max(local, std::abs(v[i] - back[i]));
    worst = std::max(worst, local * inv_sa);
  }
  return worst;
}

RealVec project_state(const RealVec& v, const ReducedBasis& basis) {
  if (static_cast<int>(v.size()) != basis.full_dim)
    throw InvalidParameter("state size must match basis full dimension");
  RealVec u(basis.dim(), 0.0);
  for (int a = 0; a < basis.dim(); ++a) {
    double s = 0.0;
    for (int m : basis.classes[a]) s += v[m];
    u[a] = s / std::sqrt(static_cast<double>(basis.sizes[a]));
  }
  return u;
}

CplxVec project_state(const CplxVec& v, const ReducedBasis& basis) {
  if (static_cast<int>(v.size()) != basis.full_dim)
    throw InvalidParameter("state size must match basis full dimension");
  CplxVec u(basis.dim(), Cplx(0.0, 0.0));
  for (int a = 0; a < basis.dim(); ++a) {
    Cplx s(0.0, 0.0);
    for (int m : basis.classes[a]) s += v[m];
    u[a] = s / std::sqrt(static_cast<double>(basis.sizes[a]));
  }
  return u;
}

RealVec lift(const RealVec& u, const ReducedBasis& basis) {
  if (static_cast<int>(u.size()) != basis.dim())
    throw InvalidParameter("state size must match basis class count");
  RealVec v(basis.full_dim, 0.0);
  for (int a = 0; a < basis.dim(); ++a) {
    const double w = u[a] / std::sqrt(static_cast<double>(basis.sizes[a]));
    for (int m : basis.classes[a]) v[m] = w;
  }
  return v;
}

CplxVec lift(const CplxVec& u, const ReducedBasis& basis) {
  if (static_cast<int>(u.size()) != basis.dim())
    throw InvalidParameter("state size must match basis class count");
  CplxVec v(basis.full_dim, Cplx(0.0, 0.0));
  for (int a = 0; a < basis.dim(); ++a) {
    const Cplx w = u[a] / std::sqrt(static_cast<double>(basis.sizes[a]));
    for (int m : basis.classes[a]) v[m] = w;
  }
  return v;
}

std::vector<RealVec> lanczos_basis(const SymMatrix& h, const RealVec& start,
                                   int k, double deflation_tol) {
  const int n = h.dim();
  if (static_cast<int>(start.size()) != n)
    throw InvalidParameter("start state size must match matrix size");
  if (k < 1) throw InvalidParameter("Krylov dimension must be >= 1");
  if (std::abs(norm(start) - 1.0) > 1e-9)
    throw InvalidParameter("start state must be normalized");

  std::vector<RealVec> b{start};
  for (int step = 1; step < std::min(k, n); ++step) {
    RealVec w = matvec(h, b.back());
    for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalize once
      for (const auto& q : b) {
        const double c = dot(q, w);
        for (int i = 0; i < n; ++i) w[i] -= c * q[i];
      }
    }
    const double r = norm(w);
    if (r < deflation_tol) break;  // Krylov space exhausted
    for (int i = 0; i < n; ++i) w[i] /= r;
    b.push_back(std::move(w));
  }
  return b;
}

}  // namespace qws
