#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace hama {

/// Dense polynomial with exact 64-bit signed coefficients; coefficient i belongs
/// to x^i. Never empty: the zero polynomial is {0}. Arithmetic does not trim
/// trailing zeros, so product lengths are always len(p) + len(q) - 1.
class Polynomial {
 public:
  Polynomial() : coeffs_{0} {}
  explicit Polynomial(std::vector<std::int64_t> coeffs);
  Polynomial(std::initializer_list<std::int64_t> coeffs) : Polynomial(std::vector<std::int64_t>(coeffs)) {}

  std::size_t size() const noexcept { return coeffs_.size(); }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }
  std::int64_t operator[](std::size_t i) const { return coeffs_[i]; }

  /// Copy with trailing zero coefficients removed (keeps at least one).
  Polynomial normalized() const;
  bool is_zero() const noexcept;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// Equality after normalisation.
bool equivalent(const Polynomial& a, const Polynomial& b);

}  // namespace hama
