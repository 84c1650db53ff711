#pragma once

// Oracles and generators shared by the test suites and the acceptance
// binary.  Nothing here goes through the degree-span engine.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace weil::oracle {

// All exponent vectors of total degree <= d, by plain recursion.
inline std::vector<Exponents> all_monomials(std::size_t nvars, std::uint32_t d) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t var, std::uint32_t left) {
    if (var == nvars) {
      out.push_back(e);
      return;
    }
    for (std::uint32_t a = 0; a <= left; ++a) {
      e[var] = a;
      rec(var + 1, left - a);
    }
    e[var] = 0;
  };
  rec(0, d);
  return out;
}

// dim V_{F,i} by fixed-point iteration: V starts as the span of the
// generators of degree <= i; each round multiplies a basis of
// V ∩ R_{<=i-1} by every variable, until the rank stops growing.
inline std::size_t naive_closure_dim(const PolySystem& F, std::uint32_t i) {
  const Field& k = F.ring->field();
  const std::size_t nv = F.ring->nvars();
  // Columns: degree-i monomials first, so rows of the reduced form whose
  // pivot lies past them span V ∩ R_{<=i-1}.
  std::vector<Exponents> cols;
  for (const auto& e : all_monomials(nv, i))
    if (total_degree(e) == i) cols.push_back(e);
  const std::size_t top = cols.size();
  for (const auto& e : all_monomials(nv, i))
    if (total_degree(e) < i) cols.push_back(e);
  std::map<Exponents, std::size_t> col_of;
  for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = c;

  auto to_row = [&](const MultiPoly& f) {
    std::vector<Elem> row(cols.size());
    for (const auto& [e, c] : f.terms()) row[col_of.at(e)] = c;
    return row;
  };
  auto to_poly = [&](const std::vector<Elem>& row) {
    MultiPoly f(F.ring);
    for (std::size_t c = 0; c < row.size(); ++c)
      if (!row[c].is_zero()) f.add_term(cols[c], row[c]);
    return f;
  };

  Matrix M(0, cols.size());
  for (const auto& f : F.polys)
    if (!f.is_zero() && f.degree() <= static_cast<int>(i)) M.append_row(to_row(f));
  std::size_t dim = rank(k, M);
  for (;;) {
    const Rref R = rref(k, M);
    Matrix next = R.m;
    for (std::size_t r = 0; r < R.m.rows(); ++r) {
      if (R.pivots[r] < top) continue;
      const MultiPoly g = to_poly(R.m.row(r));
      for (std::size_t v = 0; v < nv; ++v) {
        Exponents x(nv, 0);
        x[v] = 1;
        next.append_row(to_row(mul_term(g, x, k.one())));
      }
    }
    const std::size_t grown = rank(k, next);
    if (grown == dim) return dim;
    dim = grown;
    M = std::move(next);
  }
}

// Visits every tuple in values^count.
inline void for_each_point(const std::vector<Elem>& values, std::size_t count,
                           const std::function<void(const std::vector<Elem>&)>& visit) {
  std::vector<std::size_t> idx(count, 0);
  std::vector<Elem> point(count, values.empty() ? Elem{} : values[0]);
  if (values.empty() && count > 0) return;
  for (;;) {
    visit(point);
    std::size_t pos = 0;
    while (pos < count) {
      if (++idx[pos] < values.size()) {
        point[pos] = values[idx[pos]];
        break;
      }
      idx[pos] = 0;
      point[pos] = values[0];
      ++pos;
    }
    if (pos == count) return;
  }
}

inline std::vector<Elem> all_elements(const Field& k) {
  std::vector<Elem> v;
  for (std::uint32_t x = 0; x < k.size(); ++x) v.push_back(Elem{x});
  return v;
}

inline std::vector<Elem> subfield_elements(const Field& k) {
  std::vector<Elem> v;
  for (std::uint32_t x = 0; x < k.q(); ++x) v.push_back(Elem{x});
  return v;
}

// Number of common zeros of F with every coordinate drawn from `values`.
inline std::size_t count_zeros(const PolySystem& F, const std::vector<Elem>& values) {
  std::size_t count = 0;
  for_each_point(values, F.ring->nvars(), [&](const std::vector<Elem>& pt) {
    for (const auto& f : F.polys)
      if (!evaluate(f, pt).is_zero()) return;
    ++count;
  });
  return count;
}

// Random polynomial of degree <= d; each monomial kept with probability 1/2.
template <class Rng>
MultiPoly random_poly(const RingPtr& ring, std::uint32_t d, Rng& rng, bool kprime_coeffs = false) {
  const Field& k = ring->field();
  MultiPoly f(ring);
  for (const auto& e : all_monomials(ring->nvars(), d)) {
    if (rng() & 1) continue;
    const Elem c = (kprime_coeffs || ring->level() == Level::KPrime) ? k.random_base(rng) : k.random(rng);
    f.add_term(e, c);
  }
  return f;
}

template <class Rng>
MultiPoly random_nonzero_poly(const RingPtr& ring, std::uint32_t d, Rng& rng) {
  for (;;) {
    MultiPoly f = random_poly(ring, d, rng);
    if (!f.is_zero()) return f;
  }
}

}  // namespace weil::oracle
