#pragma once

// Small dense matrices over a Field.  Used for bases, Moore matrices and the
// k'-linear kernels of the linearized solver; the degree-span engine has its
// own kernels in echelon.hpp.

#include <cstddef>
#include <optional>
#include <vector>

#include "field.hpp"

namespace weil {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<Elem> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }
  void append_row(const std::vector<Elem>& row);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct Rref {
  Matrix m;                          // zero rows removed
  std::vector<std::size_t> pivots;   // pivot column of each row, increasing
};

// Reduced row-echelon form, pivots normalized to one, leftmost pivots.
Rref rref(const Field& field, Matrix m);
std::size_t rank(const Field& field, const Matrix& m);
std::optional<Matrix> inverse(const Field& field, const Matrix& m);
// Basis of {v : m v = 0}, as column vectors.
std::vector<std::vector<Elem>> kernel(const Field& field, const Matrix& m);
Matrix multiply(const Field& field, const Matrix& a, const Matrix& b);
std::vector<Elem> apply(const Field& field, const Matrix& a, const std::vector<Elem>& v);

}  // namespace weil
