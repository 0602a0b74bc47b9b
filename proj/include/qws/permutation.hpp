#pragma once

#include <string>
#include <vector>

#include "qws/errors.hpp"

namespace qws {

// Permutation of {0, .., n-1} stored as an image array: image()[i] is where i
// is sent. Construction validates that the array is a bijection.
class Permutation {
 public:
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& image() const { return img_; }

  // (*this) after other: i -> this(other(i)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const;

  bool operator==(const Permutation& other) const = default;

 private:
  std::vector<int> img_;
};

// One-line image form "p(0) p(1) ... p(n-1)".
std::string format_permutation(const Permutation& p);
Permutation parse_permutation(const std::string& line, int expected_degree);

}  // namespace qws
