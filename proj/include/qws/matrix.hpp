#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qws {

using Cplx = std::complex<double>;
using RealVec = std::vector<double>;
using CplxVec = std::vector<Cplx>;

// Dense real symmetric matrix, row-major. All writes go through set_sym /
// add_sym so both triangles always hold the exact same double.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim)
      : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {}

  int dim() const { return dim_; }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * dim_ + j];
  }

  void set_sym(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * dim_ + j] = v;
    a_[static_cast<std::size_t>(j) * dim_ + i] = v;
  }

  void add_sym(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * dim_ + j] += v;
    if (i != j) a_[static_cast<std::size_t>(j) * dim_ + i] += v;
  }

  const std::vector<double>& data() const { return a_; }

  double frobenius_norm() const;
  double max_abs() const;

 private:
  int dim_ = 0;
  std::vector<double> a_;
};

double dot(const RealVec& a, const RealVec& b);
double norm(const RealVec& a);
// Inner product with the first argument conjugated.
Cplx cdot(const CplxVec& a, const CplxVec& b);
double cnorm(const CplxVec& a);

RealVec matvec(const SymMatrix& h, const RealVec& x);
CplxVec matvec(const SymMatrix& h, const CplxVec& x);

}  // namespace qws
