#pragma once

// Degree-truncated closures V_{F,i}, the relation f = g mod V_{F,i}, and the
// last fall degree.
//
// V_{F,i} is the least subspace of R_{<=i} containing {f in F : deg f <= i}
// and closed under h*g whenever deg(hg) <= i.  Because R is a domain,
// deg(hg) = deg h + deg g, so any such h*g is reached by single-variable
// steps that never leave R_{<=i}; the engine therefore only multiplies by
// variables.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"

namespace weil {

struct DegreeSpan {
  RingPtr ring;
  std::uint32_t degree_cap = 0;
  MonomialOrder order = MonomialOrder::Grevlex;
  std::vector<Exponents> monomials;  // column c is monomials[c]
  // Reduced echelon basis over the coefficient field.  The pivot of a row is
  // its highest nonzero column (its leading monomial); pivots increase down
  // the rows, are one, and every other row is zero in each pivot column.
  Matrix basis;
  std::vector<std::size_t> pivots;

  std::size_t dim() const { return pivots.size(); }
  // dim(V ∩ R_{<=j}).
  std::size_t dim_up_to(std::uint32_t j) const;
  MultiPoly row_poly(std::size_t r) const;
  std::vector<MultiPoly> polys() const;
};

DegreeSpan span_closure(const PolySystem& F, std::uint32_t i, MonomialOrder order = MonomialOrder::Grevlex);

// f = g (mod V_{F,i}); throws DegreeTooHigh when deg(f - g) > i.
bool equiv_mod(const MultiPoly& f, const MultiPoly& g, std::uint32_t i, const PolySystem& F,
               MonomialOrder order = MonomialOrder::Grevlex);

struct FallRecord {
  std::uint32_t degree = 0;
  std::size_t dim_V = 0;            // dim V_{F,i}
  std::size_t dim_V_cap_lower = 0;  // dim(V_{F,i} ∩ R_{<=i-1})
  std::size_t dim_prev = 0;         // dim V_{F,i-1}
  bool fall = false;
};

enum class FallStatus { Certified, CapLimited };

struct FallProfile {
  std::vector<FallRecord> records;  // degrees 1..degree_reached
  std::uint32_t last_fall_degree = 0;  // 0 when no fall was seen
  FallStatus status = FallStatus::CapLimited;
  std::uint32_t degree_reached = 0;
  std::uint32_t cap = 0;
  std::string note;  // why certification did not happen, if it did not
};

struct FallOptions {
  std::optional<std::uint32_t> cap;  // default_cap(F) when empty
  bool certify = true;
  MonomialOrder order = MonomialOrder::Grevlex;
  std::uint64_t groebner_budget = 1'000'000;
};

// max(q * deg F, (q - 1) * #vars + 1) + 2, q = |k'|.
std::uint32_t default_cap(const PolySystem& F);

// Steps i = 1, 2, ... up to the cap.  With certification on, stops at the
// first D where dim(V_{F,D} ∩ R_{<=j}) = dim(I ∩ R_{<=j}) for all j <= D and
// D is at least the top degree of the reduced Groebner basis of F: from
// there on V_{F,i} = I ∩ R_{<=i}, so no later fall exists.
FallProfile last_fall_degree(const PolySystem& F, const FallOptions& options = {});

std::string to_string(FallStatus s);

}  // namespace weil
