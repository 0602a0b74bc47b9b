#include "qws/bigint.hpp"

namespace qws {

namespace {
constexpr std::uint64_t kBase = 1'000'000'000ULL;
}

BigUint::BigUint(std::uint64_t v) {
  while (v > 0) {
    limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
    v /= kBase;
  }
}

BigUint& BigUint::operator*=(std::uint32_t f) {
  if (f == 0) {
    limbs_.clear();
    return *this;
  }
  std::uint64_t carry = 0;
  for (auto& limb : limbs_) {
    const std::uint64_t acc = static_cast<std::uint64_t>(limb) * f + carry;
    limb = static_cast<std::uint32_t>(acc % kBase);
    carry = acc / kBase;
  }
  while (carry > 0) {
    limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
    carry /= kBase;
  }
  return *this;
}

BigUint BigUint::times(const BigUint& other) const {
  BigUint out;
  if (limbs_.empty() || other.limbs_.empty()) return out;
  out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
      const std::uint64_t acc =
          static_cast<std::uint64_t>(limbs_[i]) * other.limbs_[j] +
          out.limbs_[i + j] + carry;
      out.limbs_[i + j] = static_cast<std::uint32_t>(acc % kBase);
      carry = acc / kBase;
    }
    std::size_t k = i + other.limbs_.size();
    while (carry > 0) {
      const std::uint64_t acc = out.limbs_[k] + carry;
      out.limbs_[k] = static_cast<std::uint32_t>(acc % kBase);
      carry = acc / kBase;
      ++k;
    }
  }
  while (!out.limbs_.empty() && out.limbs_.back() == 0) out.limbs_.pop_back();
  return out;
}

std::string BigUint::to_string() const {
  if (limbs_.empty()) return "0";
  std::string out = std::to_string(limbs_.back());
  for (auto it = limbs_.rbegin() + 1; it != limbs_.rend(); ++it) {
    std::string part = std::to_string(*it);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

bool BigUint::fits_u64() const {
  if (limbs_.size() < 3) return true;
  if (limbs_.size() > 3) return false;
  // 2^64 - 1 = 18'446'744'073'709'551'615
  return limbs_[2] < 18u ||
         (limbs_[2] == 18u &&
          (limbs_[1] < 446'744'073u ||
           (limbs_[1] == 446'744'073u && limbs_[0] <= 709'551'615u)));
}

std::uint64_t BigUint::as_u64() const {
  std::uint64_t v = 0;
  for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) v = v * kBase + *it;
  return v;
}

BigUint big_factorial(unsigned n) {
  BigUint r(1);
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigUint big_pow(std::uint64_t base, unsigned exp) {
  BigUint r(1);
  const BigUint b(base);
  for (unsigned i = 0; i < exp; ++i) r = r.times(b);
  return r;
}

}  // namespace qws
