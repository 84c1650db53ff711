#pragma once

// Dense univariate polynomials over a Field, plus the skew (Ore) ring
// k[x; sigma] with x * a = a^q * x.  The skew product is what composition of
// q-linearized maps corresponds to: L(a) o L(b) = L(a (*) b).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace weil {

struct UPoly {
  std::vector<Elem> c;  // little-endian, no trailing zeros

  UPoly() = default;
  explicit UPoly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }

  static UPoly constant(Elem a) { return UPoly(std::vector<Elem>{a}); }
  static UPoly monomial(Elem a, std::size_t degree) {
    std::vector<Elem> v(degree + 1);
    v[degree] = a;
    return UPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : Elem{}; }
  Elem lead() const { return c.empty() ? Elem{} : c.back(); }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }

  friend bool operator==(const UPoly&, const UPoly&) = default;
};

class UPolyRing {
 public:
  explicit UPolyRing(const Field& field) : f_(field) {}

  const Field& field() const { return f_; }

  UPoly from_ints(const std::vector<std::int64_t>& coeffs) const;
  UPoly x() const { return UPoly::monomial(f_.one(), 1); }
  UPoly one() const { return UPoly::constant(f_.one()); }

  UPoly add(const UPoly& a, const UPoly& b) const;
  UPoly sub(const UPoly& a, const UPoly& b) const;
  UPoly neg(const UPoly& a) const;
  UPoly scale(const UPoly& a, Elem s) const;
  UPoly mul(const UPoly& a, const UPoly& b) const;
  std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) const;
  UPoly rem(const UPoly& a, const UPoly& b) const { return divmod(a, b).second; }
  UPoly monic(const UPoly& a) const;
  UPoly gcd(UPoly a, UPoly b) const;  // monic; zero iff both inputs are zero
  UPoly pow_mod(const UPoly& base, std::uint64_t exponent, const UPoly& mod) const;
  UPoly compose(const UPoly& outer, const UPoly& inner) const;  // outer(inner(x))
  Elem eval(const UPoly& a, Elem x) const;
  bool divides(const UPoly& d, const UPoly& a) const;
  bool is_irreducible(const UPoly& f) const;

  struct Bezout {
    UPoly s;    // s*a + t*b = g
    UPoly t;
    UPoly g;    // monic gcd
  };
  Bezout xgcd(const UPoly& a, const UPoly& b) const;

  // Skew ring: (a x^i) (*) (b x^j) = a * b^(q^i) x^(i+j).
  UPoly skew_mul(const UPoly& a, const UPoly& b) const;
  // a = Q (*) b + R with deg R < deg b.
  std::pair<UPoly, UPoly> skew_divmod_right(const UPoly& a, const UPoly& b) const;
  // s (*) a + t (*) b = g, g the monic right gcd (generator of the left ideal
  // generated by a and b).
  Bezout skew_xgcd(const UPoly& a, const UPoly& b) const;

  std::string to_string(const UPoly& a, const std::string& var = "x") const;

 private:
  const Field& f_;
};

}  // namespace weil
