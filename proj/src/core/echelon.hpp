#pragma once

// Row-echelon kernels for the degree-span engine.  A stored row is indexed
// by its pivot, which is its highest nonzero column, and is kept only up to
// that column.  Rows are head-reduced on insertion and normalized so the
// pivot entry is one; lower entries are left as they are.
//
// Two backends share one interface: GF(2) rows packed 64 to a word, and
// table-driven rows for any other field with at most 2^16 elements.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "field.hpp"
#include "monomial.hpp"

namespace weil {

class Gf2Rows {
 public:
  using Vec = std::vector<std::uint64_t>;

  explicit Gf2Rows(const Field&) {}

  void resize(std::size_t ncols) { rows_.resize(ncols); }
  std::size_t ncols() const { return rows_.size(); }
  Vec zero(std::size_t ncols) const { return Vec((ncols + 63) / 64, 0); }
  static void set(Vec& v, std::size_t col, std::uint32_t value) {
    const std::uint64_t bit = std::uint64_t{1} << (col & 63);
    if (value) v[col >> 6] |= bit;
    else v[col >> 6] &= ~bit;
  }
  static std::uint32_t get(const Vec& v, std::size_t col) {
    return (col >> 6) < v.size() ? static_cast<std::uint32_t>((v[col >> 6] >> (col & 63)) & 1) : 0;
  }

  bool has_pivot(std::size_t col) const { return !rows_[col].empty(); }
  // Head-reduces v; returns its remaining leading column or -1 if v became 0.
  long reduce_head(Vec& v) const;
  // v must be head-reduced with leading column `lead`.
  void insert(Vec v, std::size_t lead);
  // x_var times the stored row with pivot `col`.
  Vec shifted(std::size_t col, std::size_t var, const MonomialTable& table, std::size_t ncols) const;
  // Entries 0..col of the stored row as field indices.
  std::vector<std::uint32_t> row_dense(std::size_t col) const;

 private:
  std::vector<Vec> rows_;
};

class TableRows {
 public:
  using Vec = std::vector<std::uint16_t>;  // field indices

  explicit TableRows(const Field& field);

  void resize(std::size_t ncols) { rows_.resize(ncols); }
  std::size_t ncols() const { return rows_.size(); }
  Vec zero(std::size_t ncols) const { return Vec(ncols, 0); }
  static void set(Vec& v, std::size_t col, std::uint32_t value) { v[col] = static_cast<std::uint16_t>(value); }
  static std::uint32_t get(const Vec& v, std::size_t col) { return col < v.size() ? v[col] : 0; }

  bool has_pivot(std::size_t col) const { return !rows_[col].empty(); }
  long reduce_head(Vec& v) const;
  void insert(Vec v, std::size_t lead);
  Vec shifted(std::size_t col, std::size_t var, const MonomialTable& table, std::size_t ncols) const;
  std::vector<std::uint32_t> row_dense(std::size_t col) const;

 private:
  static constexpr std::uint16_t kZeroLog = 0xFFFF;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (char2_) return a ^ b;
    if (!add_.empty()) return add_[a * size_ + b];
    return field_.add_index(a, b);
  }

  const Field& field_;
  std::uint32_t size_;
  bool char2_;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> neg_;
  // Stored rows hold logarithms of their entries (kZeroLog for zero) so a
  // scaled row costs one table lookup per entry.
  std::vector<std::vector<std::uint16_t>> rows_;
};

}  // namespace weil
