#include "monomial.hpp"

#include <algorithm>

namespace weil {

std::vector<Exponents> monomials_of_degree(std::size_t nvars, std::uint32_t d, MonomialOrder order) {
  std::vector<Exponents> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponents e(nvars, 0);
  // Recursive composition of d into nvars parts.
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(),
            [order](const Exponents& a, const Exponents& b) { return compare_monomials(a, b, order) < 0; });
  return out;
}

MonomialTable::MonomialTable(std::size_t nvars, MonomialOrder order) : nvars_(nvars), order_(order) {
  exps_.push_back(Exponents(nvars, 0));
  degree_.push_back(0);
  offset_ = {0, 1};
  index_.emplace(exps_[0], 0);
}

void MonomialTable::extend_to(std::uint32_t d) {
  while (max_degree_ < d) {
    const std::uint32_t next = max_degree_ + 1;
    for (auto& e : monomials_of_degree(nvars_, next, order_)) {
      index_.emplace(e, exps_.size());
      exps_.push_back(std::move(e));
      degree_.push_back(next);
    }
    offset_.push_back(exps_.size());
    // Products for the previous top degree become available.
    const std::size_t lo = offset_[max_degree_], hi = offset_[max_degree_ + 1];
    mul_.resize(hi * nvars_);
    Exponents t;
    for (std::size_t c = lo; c < hi; ++c)
      for (std::size_t v = 0; v < nvars_; ++v) {
        t = exps_[c];
        ++t[v];
        mul_[c * nvars_ + v] = static_cast<std::uint32_t>(index_.at(t));
      }
    max_degree_ = next;
  }
}

std::optional<std::size_t> MonomialTable::index(const Exponents& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace weil
