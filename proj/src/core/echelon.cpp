#include "echelon.hpp"

#include <bit>

namespace weil {

long Gf2Rows::reduce_head(Vec& v) const {
  long w = static_cast<long>(v.size()) - 1;
  for (;;) {
    while (w >= 0 && v[w] == 0) --w;
    if (w < 0) return -1;
    const std::size_t col = static_cast<std::size_t>(w) * 64 + 63 - static_cast<std::size_t>(std::countl_zero(v[w]));
    const auto& r = rows_[col];
    if (r.empty()) return static_cast<long>(col);
    for (std::size_t i = 0; i < r.size(); ++i) v[i] ^= r[i];
  }
}

void Gf2Rows::insert(Vec v, std::size_t lead) {
  v.resize(lead / 64 + 1);
  rows_[lead] = std::move(v);
}

Gf2Rows::Vec Gf2Rows::shifted(std::size_t col, std::size_t var, const MonomialTable& table, std::size_t ncols) const {
  Vec out = zero(ncols);
  const auto& r = rows_[col];
  for (std::size_t w = 0; w < r.size(); ++w) {
    std::uint64_t bits = r[w];
    while (bits) {
      const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      const std::size_t t = table.mul_var(j, var);
      out[t >> 6] |= std::uint64_t{1} << (t & 63);
    }
  }
  return out;
}

std::vector<std::uint32_t> Gf2Rows::row_dense(std::size_t col) const {
  std::vector<std::uint32_t> out(col + 1);
  for (std::size_t j = 0; j <= col; ++j) out[j] = get(rows_[col], j);
  return out;
}

TableRows::TableRows(const Field& field)
    : field_(field), size_(field.size()), char2_(field.p() == 2) {
  if (!char2_ && size_ <= 2048) {
    add_.resize(static_cast<std::size_t>(size_) * size_);
    for (std::uint32_t a = 0; a < size_; ++a)
      for (std::uint32_t b = 0; b < size_; ++b)
        add_[static_cast<std::size_t>(a) * size_ + b] = static_cast<std::uint16_t>(field.add_index(a, b));
  }
  exp_.assign(field.exp_table().begin(), field.exp_table().end());
  log_.assign(field.log_table().begin(), field.log_table().end());
  neg_.resize(size_);
  for (std::uint32_t a = 0; a < size_; ++a) neg_[a] = field.neg(Elem{a}).index();
}

long TableRows::reduce_head(Vec& v) const {
  long c = static_cast<long>(v.size()) - 1;
  for (;;) {
    while (c >= 0 && v[c] == 0) --c;
    if (c < 0) return -1;
    const auto& r = rows_[c];
    if (r.empty()) return c;
    const std::uint32_t ls = log_[neg_[v[c]]];
    for (long j = 0; j <= c; ++j) {
      const std::uint16_t lr = r[j];
      if (lr != kZeroLog) v[j] = static_cast<std::uint16_t>(add(v[j], exp_[lr + ls]));
    }
  }
}

void TableRows::insert(Vec v, std::size_t lead) {
  const std::uint32_t order = size_ - 1;
  const std::uint32_t llead = log_[v[lead]];
  std::vector<std::uint16_t> r(lead + 1, kZeroLog);
  for (std::size_t j = 0; j <= lead; ++j)
    if (v[j]) r[j] = static_cast<std::uint16_t>((log_[v[j]] + order - llead) % order);
  rows_[lead] = std::move(r);
}

TableRows::Vec TableRows::shifted(std::size_t col, std::size_t var, const MonomialTable& table,
                                  std::size_t ncols) const {
  Vec out(ncols, 0);
  const auto& r = rows_[col];
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] != kZeroLog) out[table.mul_var(j, var)] = static_cast<std::uint16_t>(exp_[r[j]]);
  return out;
}

std::vector<std::uint32_t> TableRows::row_dense(std::size_t col) const {
  const auto& r = rows_[col];
  std::vector<std::uint32_t> out(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) out[j] = r[j] == kZeroLog ? 0 : exp_[r[j]];
  return out;
}

}  // namespace weil
