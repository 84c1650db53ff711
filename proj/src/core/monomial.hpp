#pragma once

// Enumeration of all monomials of bounded degree in a fixed
// degree-compatible order.  Column c of the span engine is monomial c:
// degrees ascend, and within a degree the order ascends, so the leading
// monomial of a row is its highest nonzero column.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "poly.hpp"

namespace weil {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : e) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

class MonomialTable {
 public:
  MonomialTable(std::size_t nvars, MonomialOrder order);

  // Enumerates every monomial of degree <= d (no-op if already there).
  void extend_to(std::uint32_t d);

  std::size_t nvars() const { return nvars_; }
  MonomialOrder order() const { return order_; }
  std::uint32_t max_degree() const { return max_degree_; }
  std::size_t size() const { return exps_.size(); }
  // Number of monomials of degree <= d; d must not exceed max_degree().
  std::size_t count_up_to(std::uint32_t d) const { return offset_[d + 1]; }
  const Exponents& exps(std::size_t col) const { return exps_[col]; }
  std::uint32_t degree_of(std::size_t col) const { return degree_[col]; }
  std::optional<std::size_t> index(const Exponents& e) const;
  // Column of x_var * monomial(col); degree_of(col) < max_degree() required.
  std::size_t mul_var(std::size_t col, std::size_t var) const { return mul_[col * nvars_ + var]; }

 private:
  std::size_t nvars_;
  MonomialOrder order_;
  std::uint32_t max_degree_ = 0;
  std::vector<Exponents> exps_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::size_t> offset_;  // offset_[d] = first column of degree d
  std::vector<std::uint32_t> mul_;
  std::unordered_map<Exponents, std::size_t, ExponentsHash> index_;
};

// All exponent vectors of total degree exactly d, ascending in `order`.
std::vector<Exponents> monomials_of_degree(std::size_t nvars, std::uint32_t d, MonomialOrder order);

}  // namespace weil
