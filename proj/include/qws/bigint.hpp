#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qws {

// Unsigned big integer, just large enough for group orders: construction from
// uint64, multiplication by small factors, decimal printing, equality.
class BigUint {
 public:
  BigUint(std::uint64_t v = 0);  // NOLINT: implicit by design

  BigUint& operator*=(std::uint32_t f);
  BigUint times(const BigUint& other) const;
  std::string to_string() const;

  bool operator==(const BigUint& other) const = default;

  // Fits-in-uint64 check plus value when it does (used by tests).
  bool fits_u64() const;
  std::uint64_t as_u64() const;

 private:
  // base 1e9 limbs, little-endian, no trailing zero limbs (zero is empty).
  std::vector<std::uint32_t> limbs_;
};

BigUint big_factorial(unsigned n);
BigUint big_pow(std::uint64_t base, unsigned exp);

}  // namespace qws
