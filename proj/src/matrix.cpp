#include "qws/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace qws {

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double dot(const RealVec& a, const RealVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const RealVec& a) { return std::sqrt(dot(a, a)); }

Cplx cdot(const CplxVec& a, const CplxVec& b) {
  Cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double cnorm(const CplxVec& a) {
  double s = 0.0;
  for (const Cplx& z : a) s += std::norm(z);
  return std::sqrt(s);
}

RealVec matvec(const SymMatrix& h, const RealVec& x) {
  const int n = h.dim();
  RealVec y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += h(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

CplxVec matvec(const SymMatrix& h, const CplxVec& x) {
  const int n = h.dim();
  CplxVec y(n, Cplx{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    Cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += h(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace qws
