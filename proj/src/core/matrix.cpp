#include "matrix.hpp"

#include "error.hpp"

namespace weil {

void Matrix::append_row(const std::vector<Elem>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) fail(ErrorCode::InvalidArgument, "row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Rref rref(const Field& field, Matrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m.at(sel, c).is_zero()) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    const Elem s = field.inv(m.at(r, c));
    for (std::size_t j = c; j < cols; ++j) m.at(r, j) = field.mul(m.at(r, j), s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      const Elem f = field.neg(m.at(i, c));
      for (std::size_t j = c; j < cols; ++j) m.at(i, j) = field.add(m.at(i, j), field.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = m.at(i, j);
  return {std::move(out), std::move(pivots)};
}

std::size_t rank(const Field& field, const Matrix& m) { return rref(field, m).pivots.size(); }

std::optional<Matrix> inverse(const Field& field, const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorCode::InvalidArgument, "inverse of a non-square matrix");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = field.one();
  }
  auto red = rref(field, std::move(aug));
  if (red.pivots.size() < n || red.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = red.m.at(i, n + j);
  return inv;
}

std::vector<std::vector<Elem>> kernel(const Field& field, const Matrix& m) {
  const std::size_t cols = m.cols();
  auto red = rref(field, m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : red.pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(cols);
    v[free] = field.one();
    for (std::size_t r = 0; r < red.pivots.size(); ++r) v[red.pivots[r]] = field.neg(red.m.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix multiply(const Field& field, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) = field.add(out.at(i, j), field.mul(x, b.at(k, j)));
    }
  return out;
}

std::vector<Elem> apply(const Field& field, const Matrix& a, const std::vector<Elem>& v) {
  if (a.cols() != v.size()) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
  std::vector<Elem> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = field.add(out[i], field.mul(a.at(i, j), v[j]));
  return out;
}

}  // namespace weil
