#pragma once

// q-linearized polynomials, Frobenius-invariant subspaces W of k, and the
// structured solver for Z_W(F) = Z(F) ∩ W^m with its brute-force oracle.
//
// Conventions.  A conventional polynomial sum_j a_j x^j stands for the
// linearized map L = sum_j a_j x^(q^j) and for the linear form
// l = sum_j a_j x_{.j}.  Composition of linearized maps is the skew product
// of k[x; sigma] (x * a = a^q x): L(A) o L(B) = L(A (*) B).  Coprimality
// with f_W is always meant in that ring, i.e. as a right gcd; for
// k'-coefficient polynomials this is the ordinary gcd.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "falldeg.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "upoly.hpp"

namespace weil {

// Sum over i, j of coeffs[i][j] * x_i^(q^j).
struct LinearizedPoly {
  std::size_t m = 0;
  std::size_t bound = 0;  // coefficient slots per variable
  std::vector<std::vector<Elem>> coeffs;

  static LinearizedPoly zero(std::size_t m, std::size_t bound);
  UPoly component(std::size_t i) const;  // conventional polynomial of variable i
  // Largest q-degree exponent plus one over all variables; 0 for the zero map.
  std::size_t length() const;
  friend bool operator==(const LinearizedPoly&, const LinearizedPoly&) = default;
};

// Linear form sum b_{ij} x_{ij}, i < m, j < nprime; stored at i*nprime + j.
struct LinearForm {
  std::size_t m = 0;
  std::size_t nprime = 0;
  std::vector<Elem> b;

  static LinearForm zero(std::size_t m, std::size_t nprime);
  static LinearForm variable(std::size_t m, std::size_t nprime, std::size_t i, std::size_t j, Elem one);
  Elem at(std::size_t i, std::size_t j) const { return b[i * nprime + j]; }
  Elem& at(std::size_t i, std::size_t j) { return b[i * nprime + j]; }
  bool is_zero() const;
  // Member of S_{1r}: zero on all x_{ij} with i < r.
  bool in_stage(std::size_t r) const;
  // Smallest i with a nonzero coefficient; m for the zero form.
  std::size_t first_stage() const;
  UPoly component(std::size_t i) const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

LinearForm add(const Field& k, const LinearForm& a, const LinearForm& b);
LinearForm scale(const Field& k, const LinearForm& a, Elem c);

struct InvariantSubspace {
  FieldPtr field;
  UPoly fW;                   // monic divisor of x^n - 1 with k' coefficients
  std::size_t nprime = 0;     // deg fW
  UPoly gW;                   // x^{n'} - fW
  std::vector<Elem> basis;    // k'-basis of W = ker fW(tau)
  Matrix tau;                 // tau on W in that basis, over k' (column s = image of basis[s])
  Matrix coords_inverse;      // left inverse: k'-coordinates of x in k -> coordinates in basis

  bool contains(Elem x) const;
  // Coordinates of w in `basis`; throws CoordinateNotInField when w is not in W.
  std::vector<Elem> coordinates(Elem w) const;
};

// ---- L and l ---------------------------------------------------------------

// Throws DegreeExceedsBound when some deg f_i >= bound.
LinearizedPoly L_op(const std::vector<UPoly>& per_var, std::size_t bound);
LinearForm ell_op(const std::vector<UPoly>& per_var, std::size_t nprime);
// The same coefficients read as a linear form (requires bound <= nprime).
LinearForm ell_of(const LinearizedPoly& f, std::size_t nprime);
// sum a_ij x_i^(q^j) as a polynomial in `ring` (ring has >= m variables).
MultiPoly to_multipoly(const LinearizedPoly& f, const RingPtr& ring);
// Linear form as a degree-one polynomial in the S ring x{i}_{j}.
MultiPoly to_multipoly(const LinearForm& f, const RingPtr& ring);

Elem evaluate(const Field& k, const LinearizedPoly& f, std::span<const Elem> point);
Elem evaluate(const Field& k, const LinearizedPoly& f, std::size_t var, Elem x);
// Evaluates with x_{ij} := v_i^(q^j).
Elem evaluate(const Field& k, const LinearForm& f, std::span<const Elem> point);

// Per-variable conventional composition g(f_i(x)).
std::vector<UPoly> compose(const Field& k, const UPoly& g, const std::vector<UPoly>& f);

// ---- W and the relations Q-bar ---------------------------------------------

// Throws NotADivisor when fW does not divide x^n - 1 over k'.
InvariantSubspace subspace_from_fW(const UPoly& fW, FieldPtr field);
std::vector<UPoly> monic_divisors_of_xn_minus_1(const Field& k);

// S = k[x{i}_{j} : i < m, j < n'].
RingPtr linear_ring(FieldPtr field, std::size_t m, std::size_t nprime);
// x_{ij}^q - x_{i,j+1} (j < n'-1) and x_{i,n'-1}^q - l(gW(x_i)), per i.
PolySystem build_Qbar(const InvariantSubspace& W, std::size_t m);

// One Frobenius step on linear forms: l^q = step(l) mod Q-bar.
LinearForm frobenius_step(const LinearForm& f, const InvariantSubspace& W);
// sum_j g_j step^j(f): the linear form congruent to L(g) o f mod Q-bar.
LinearForm lcompose_reduce(const UPoly& g, const LinearForm& f, const InvariantSubspace& W);
// Reduces each variable's conventional polynomial modulo fW, i.e. rewrites
// x^(q^j), j >= n', through x^(q^n') = L(gW)(x), and returns the form.
LinearForm reduce_to_form(const LinearizedPoly& f, const InvariantSubspace& W);

// ---- Bezout ----------------------------------------------------------------

struct BezoutPair {
  UPoly A;
  UPoly B;
};
// A f0 + B fW = 1 in k[x], deg A < deg fW; throws NotCoprime naming the gcd.
BezoutPair bezout(const Field& k, const UPoly& f0, const UPoly& fW);
// A (*) f0 + B (*) fW = 1 in the skew ring; throws NotCoprime with the right gcd.
BezoutPair skew_bezout(const Field& k, const UPoly& f0, const UPoly& fW);
UPoly skew_right_gcd(const Field& k, const std::vector<UPoly>& polys);

// ---- reducibility and the solver ------------------------------------------

struct SearchOptions {
  std::uint64_t seed = 1;
  std::size_t random_draws = 64;
  std::size_t exhaustive_dim_cap = 16;  // k'-dimension of a stage projection
  bool allow_large_q = false;           // lift the q <= 7 ceiling
  // When the search fails on a stage too large to enumerate, decide it
  // exactly: the stage projection is a left submodule of k[x;sigma]/(f_W),
  // so a witness exists iff its right gcd with f_W is 1.  Off means the
  // search raises SearchBudgetExceeded instead.
  bool exact_fallback = true;
};

// Annihilator data shared by the check and the solver.
struct StageStructure {
  std::vector<LinearForm> ann;          // basis of V_{G,q} ∩ S_1, stage-echelon
  std::vector<std::size_t> ann_stage;   // pivot stage of each basis form
  std::vector<std::size_t> N;           // stages 0..m-2 where S_{1i} and S_{1,i+1} slices differ
  std::vector<LinearForm> Fbar;
  PolySystem Gbar;                      // Fbar ∪ Qbar in the S ring
};

StageStructure stage_structure(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W, std::size_t m);

struct StageWitness {
  std::size_t stage = 0;
  LinearForm form;      // in V_{G,q} ∩ S_{1,stage}
  LinearizedPoly poly;  // the same coefficients as L(f_stage)
  UPoly leading;        // stage component g_ii
};

struct ReducibilityResult {
  bool reducible = true;
  std::vector<StageWitness> witnesses;  // one per stage in N, ascending
  std::optional<std::size_t> failed_stage;
  std::string detail;
  StageStructure structure;
};

// Throws SearchBudgetExceeded when a stage has no witness among the random
// draws, is too large to enumerate, and the exact fallback is off.
ReducibilityResult reducibility_check(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W, std::size_t m,
                                      const SearchOptions& options = {});

struct StageElimination {
  std::size_t stage = 0;
  UPoly A;                         // A (*) g_ii + B (*) fW = 1
  UPoly B;
  std::vector<LinearForm> ell;     // x_{ij} = ell_j, forms over stages > i
  std::vector<LinearForm> gamma;   // after back-substitution, forms over free stages
};

// Eliminates one stage through a Bezout identity with f_W.  Throws GcdConditionFailed when
// the witness's stage component is not coprime to fW.
StageElimination eliminate_stage(const StageWitness& witness, const InvariantSubspace& W);

struct SolutionBasis {
  std::size_t m = 0;
  std::vector<std::vector<Elem>> generators;  // k'-basis of Z_W(F), points of W^m
  bool reducible = true;
  std::vector<std::size_t> N;
  std::vector<std::size_t> free_stages;
  std::vector<StageElimination> trace;
  std::vector<LinearForm> H;  // pushed-down forms
  UPoly g;                    // final univariate polynomial, monic right gcd with fW
  std::string method;         // "structured" or "oracle"

  std::size_t dim() const { return generators.size(); }
};

// Throws NotReducible when the reducibility check fails.
SolutionBasis solve_structured(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W, std::size_t m,
                               const SearchOptions& options = {});
SolutionBasis brute_force_solve(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W, std::size_t m);

// Same k'-span (mutual membership) of two sets of points of k^m.
bool same_subspace(const Field& k, const std::vector<std::vector<Elem>>& a, const std::vector<std::vector<Elem>>& b);
bool in_span(const Field& k, const std::vector<std::vector<Elem>>& basis, const std::vector<Elem>& v);
// All points of W^m annihilated by F, by enumeration; throws
// SearchBudgetExceeded when q^{m n'} exceeds `limit`.
std::vector<std::vector<Elem>> enumerate_solutions(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W,
                                                   std::size_t m, std::uint64_t limit = 1u << 16);

// k'-rank of a set of points of k^m.
std::size_t kprime_rank(const Field& k, const std::vector<std::vector<Elem>>& vectors);

}  // namespace weil
