#pragma once

// Small Buchberger engine.  It only certifies the degree-span engine's stop
// rule and answers ideal-membership questions in tests, so it favours
// simplicity over speed.

#include <cstdint>
#include <vector>

#include "poly.hpp"

namespace weil {

struct GroebnerBasis {
  RingPtr ring;
  MonomialOrder order = MonomialOrder::Grevlex;
  std::vector<MultiPoly> gens;  // reduced, monic, sorted by leading monomial

  std::vector<Exponents> leading_monomials() const;
  std::uint32_t max_degree() const;  // 0 for an empty basis
};

struct GroebnerOptions {
  MonomialOrder order = MonomialOrder::Grevlex;
  std::uint64_t step_budget = 1'000'000;  // pair reductions
};

// Throws StepBudgetExceeded when the budget runs out.
GroebnerBasis groebner_toy(const PolySystem& F, const GroebnerOptions& options = {});
MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& G);
bool ideal_contains(const GroebnerBasis& G, const MultiPoly& f);

// Number of monomials of degree <= j not divisible by any leading monomial,
// per j = 0..max_j.
std::vector<std::uint64_t> standard_monomial_counts(const GroebnerBasis& G, std::uint32_t max_j);
// dim(I ∩ R_{<=j}) = dim R_{<=j} - #standard monomials of degree <= j.
std::uint64_t ideal_truncation_dim(const GroebnerBasis& G, std::uint32_t j);
std::uint64_t monomial_count_up_to(std::size_t nvars, std::uint32_t j);

}  // namespace weil
