#include "hama/polynomial.hpp"

#include <algorithm>

namespace hama {

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0);
}

Polynomial Polynomial::normalized() const {
  std::size_t n = coeffs_.size();
  while (n > 1 && coeffs_[n - 1] == 0) --n;
  return Polynomial(std::vector<std::int64_t>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
}

bool Polynomial::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

bool equivalent(const Polynomial& a, const Polynomial& b) { return a.normalized() == b.normalized(); }

}  // namespace hama
