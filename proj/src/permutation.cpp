#include "qws/permutation.hpp"

#include <sstream>

namespace qws {

Permutation::Permutation(std::vector<int> image) : img_(std::move(image)) {
  const int n = static_cast<int>(img_.size());
  if (n == 0) throw InvalidParameter("empty permutation");
  std::vector<char> seen(n, 0);
  for (int v : img_) {
    if (v < 0 || v >= n) throw InvalidParameter("permutation image out of range");
    if (seen[v]) throw InvalidParameter("permutation image is not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int a, int b) {
  if (a < 0 || b < 0 || a >= n || b >= n || a == b)
    throw InvalidParameter("bad transposition");
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  std::swap(img[a], img[b]);
  return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (degree() != other.degree())
    throw InvalidParameter("composing permutations of unequal degree");
  std::vector<int> img(degree());
  for (int i = 0; i < degree(); ++i) img[i] = img_[other.img_[i]];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(degree());
  for (int i = 0; i < degree(); ++i) img[img_[i]] = i;
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::string format_permutation(const Permutation& p) {
  std::ostringstream out;
  for (int i = 0; i < p.degree(); ++i) {
    if (i) out << ' ';
    out << p(i);
  }
  return out.str();
}

Permutation parse_permutation(const std::string& line, int expected_degree) {
  std::istringstream ss(line);
  std::vector<int> img;
  img.reserve(expected_degree > 0 ? expected_degree : 8);
  int v;
  while (ss >> v) img.push_back(v);
  if (!ss.eof()) throw ParseError("non-integer token in permutation line");
  if (expected_degree > 0 && static_cast<int>(img.size()) != expected_degree)
    throw ParseError("permutation has wrong degree");
  try {
    return Permutation(std::move(img));
  } catch (const InvalidParameter& e) {
    throw ParseError(e.what());
  }
}

}  // namespace qws
