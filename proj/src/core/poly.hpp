#pragma once

// Sparse multivariate polynomials over k (or over k' stored as k-elements).
// Terms are kept in a map keyed by exponent vector and iterated in
// descending graded reverse-lexicographic order.

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "field.hpp"

namespace weil {

enum class Level { K, KPrime };
enum class MonomialOrder { Grevlex, Grlex };

using Exponents = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponents& e);
// Negative, zero or positive as a < b, a == b, a > b under `order`.
int compare_monomials(const Exponents& a, const Exponents& b, MonomialOrder order);
bool divides(const Exponents& a, const Exponents& b);  // a | b

class Ring {
 public:
  // Coefficients of a KPrime ring are k-elements lying in k'; the field is
  // still k so both levels share element indices.
  static std::shared_ptr<const Ring> make(FieldPtr field, Level level, std::vector<std::string> vars);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  // Field whose tables are used for coefficient arithmetic in bulk kernels.
  const Field& coeff_field() const { return level_ == Level::KPrime ? field_->base() : *field_; }
  Level level() const { return level_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  std::optional<std::size_t> var_index(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.field_->spec() == b.field_->spec() && a.level_ == b.level_ && a.vars_ == b.vars_;
  }

 private:
  Ring() = default;
  FieldPtr field_;
  Level level_ = Level::K;
  std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

// Variables named prefix0, prefix1, ...
std::vector<std::string> numbered_vars(const std::string& prefix, std::size_t count);

struct GrevlexDescending {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return compare_monomials(a, b, MonomialOrder::Grevlex) > 0;
  }
};

class MultiPoly {
 public:
  using Terms = std::map<Exponents, Elem, GrevlexDescending>;
  static constexpr int kNegInfDegree = std::numeric_limits<int>::min();

  MultiPoly() = default;
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static MultiPoly constant(RingPtr ring, Elem c);
  static MultiPoly variable(RingPtr ring, std::size_t i);
  static MultiPoly monomial(RingPtr ring, Exponents e, Elem c);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // Total degree; kNegInfDegree for the zero polynomial.
  int degree() const;
  Elem coeff(const Exponents& e) const;
  // Adds c * x^e into the polynomial, dropping cancelled terms.
  void add_term(const Exponents& e, Elem c);
  // Largest monomial under `order`; the polynomial must be nonzero.
  Terms::const_iterator leading(MonomialOrder order) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_ && (a.ring_ == b.ring_ || (a.ring_ && b.ring_ && *a.ring_ == *b.ring_));
  }

 private:
  RingPtr ring_;
  Terms terms_;
};

MultiPoly add(const MultiPoly& a, const MultiPoly& b);
MultiPoly sub(const MultiPoly& a, const MultiPoly& b);
MultiPoly neg(const MultiPoly& a);
MultiPoly mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly scale(const MultiPoly& a, Elem c);
MultiPoly pow(const MultiPoly& a, std::uint32_t e);
// Multiplies by the monomial c * x^e.
MultiPoly mul_term(const MultiPoly& a, const Exponents& e, Elem c);

// Replaces variable i by images[i]; all images must share one ring.
MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& images);
MultiPoly substitute(const MultiPoly& f, const std::map<std::string, MultiPoly>& assignment, RingPtr target);

// Acts on every coefficient by x -> x^(q^i).
MultiPoly apply_sigma(const MultiPoly& f, std::uint64_t i);

// x^from -> x^to, from > to >= 1.
struct ExponentRelation {
  std::uint32_t from = 2;
  std::uint32_t to = 1;
};
MultiPoly normal_form_field_eqs(const MultiPoly& f, const std::vector<std::optional<ExponentRelation>>& per_var);
MultiPoly normal_form_field_eqs(const MultiPoly& f, ExponentRelation all_vars);

bool lies_in_subfield(const MultiPoly& f);
Elem evaluate(const MultiPoly& f, std::span<const Elem> point);

// Moves f into `target`, sending variable i to target variable var_map[i].
MultiPoly embed(const MultiPoly& f, RingPtr target, const std::vector<std::size_t>& var_map);
// Same variables, different level tag (coefficients are checked when
// moving to KPrime).
MultiPoly relevel(const MultiPoly& f, RingPtr target);

struct PolySystem {
  RingPtr ring;
  std::vector<MultiPoly> polys;

  int degree() const;  // max degree, kNegInfDegree when empty
};

// Text form "coeff * X0^2 X1 + coeff".  Coefficients are k'-coordinate
// tuples "(c0,...,c_{n-1})" for K rings and a single "(c)" for KPrime rings;
// with e > 1 each coordinate is itself a tuple of GF(p) digits.
std::string coeff_to_text(const Ring& ring, Elem c);
Elem parse_coeff_text(const Ring& ring, std::string_view text);
std::string to_text(const MultiPoly& f);
MultiPoly parse_poly_text(const RingPtr& ring, std::string_view text);

}  // namespace weil
