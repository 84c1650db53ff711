#include "upoly.hpp"

#include <algorithm>

#include "error.hpp"

namespace weil {

UPoly UPolyRing::from_ints(const std::vector<std::int64_t>& coeffs) const {
  std::vector<Elem> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(f_.from_int(v));
  return UPoly(std::move(c));
}

UPoly UPolyRing::add(const UPoly& a, const UPoly& b) const {
  std::vector<Elem> c(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_.add(a.coeff(i), b.coeff(i));
  return UPoly(std::move(c));
}

UPoly UPolyRing::neg(const UPoly& a) const {
  std::vector<Elem> c(a.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_.neg(a.c[i]);
  return UPoly(std::move(c));
}

UPoly UPolyRing::sub(const UPoly& a, const UPoly& b) const { return add(a, neg(b)); }

UPoly UPolyRing::scale(const UPoly& a, Elem s) const {
  std::vector<Elem> c(a.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_.mul(a.c[i], s);
  return UPoly(std::move(c));
}

UPoly UPolyRing::mul(const UPoly& a, const UPoly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> c(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] = f_.add(c[i + j], f_.mul(a.c[i], b.c[j]));
  }
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPolyRing::divmod(const UPoly& a, const UPoly& b) const {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly{}, a};
  std::vector<Elem> r = a.c;
  std::vector<Elem> quo(a.c.size() - b.c.size() + 1);
  const Elem lead_inv = f_.inv(b.lead());
  const std::size_t db = b.c.size() - 1;
  for (std::size_t d = r.size() - 1;; --d) {
    if (!r[d].is_zero()) {
      const Elem t = f_.mul(r[d], lead_inv);
      quo[d - db] = t;
      const Elem nt = f_.neg(t);
      for (std::size_t j = 0; j <= db; ++j) r[d - db + j] = f_.add(r[d - db + j], f_.mul(nt, b.c[j]));
    }
    if (d == db) break;
  }
  r.resize(db);
  return {UPoly(std::move(quo)), UPoly(std::move(r))};
}

UPoly UPolyRing::monic(const UPoly& a) const {
  if (a.is_zero()) return a;
  return scale(a, f_.inv(a.lead()));
}

UPoly UPolyRing::gcd(UPoly a, UPoly b) const {
  while (!b.is_zero()) {
    auto r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

UPoly UPolyRing::pow_mod(const UPoly& base, std::uint64_t exponent, const UPoly& mod) const {
  UPoly result = rem(one(), mod);
  UPoly b = rem(base, mod);
  while (exponent) {
    if (exponent & 1) result = rem(mul(result, b), mod);
    exponent >>= 1;
    if (exponent) b = rem(mul(b, b), mod);
  }
  return result;
}

UPoly UPolyRing::compose(const UPoly& outer, const UPoly& inner) const {
  UPoly result;
  for (std::size_t i = outer.c.size(); i-- > 0;) result = add(mul(result, inner), UPoly::constant(outer.c[i]));
  return result;
}

Elem UPolyRing::eval(const UPoly& a, Elem x) const {
  Elem acc{};
  for (std::size_t i = a.c.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), a.c[i]);
  return acc;
}

bool UPolyRing::divides(const UPoly& d, const UPoly& a) const { return rem(a, d).is_zero(); }

// Rabin's test: f of degree d is irreducible iff x^(Q^d) = x mod f and
// gcd(x^(Q^(d/r)) - x, f) = 1 for every prime r dividing d.
bool UPolyRing::is_irreducible(const UPoly& f) const {
  const int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  const UPoly g = monic(f);
  const std::uint64_t Q = f_.size();
  std::vector<UPoly> powers(static_cast<std::size_t>(d) + 1);
  powers[0] = x();
  for (int i = 1; i <= d; ++i) powers[i] = pow_mod(powers[i - 1], Q, g);
  if (powers[d] != rem(x(), g)) return false;
  int v = d;
  for (int r = 2; r <= v; ++r) {
    if (v % r) continue;
    while (v % r == 0) v /= r;
    if (gcd(sub(powers[d / r], x()), g).degree() != 0) return false;
  }
  return true;
}

UPolyRing::Bezout UPolyRing::xgcd(const UPoly& a, const UPoly& b) const {
  UPoly r0 = a, r1 = b, s0 = one(), s1, t0, t1 = one();
  while (!r1.is_zero()) {
    auto [quo, r] = divmod(r0, r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, sub(s0, mul(quo, s1)));
    t0 = std::exchange(t1, sub(t0, mul(quo, t1)));
  }
  if (r0.is_zero()) return {UPoly{}, UPoly{}, UPoly{}};
  const Elem li = f_.inv(r0.lead());
  return {scale(s0, li), scale(t0, li), scale(r0, li)};
}

UPoly UPolyRing::skew_mul(const UPoly& a, const UPoly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> c(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = f_.add(c[i + j], f_.mul(a.c[i], f_.frobenius(b.c[j], i)));
  }
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPolyRing::skew_divmod_right(const UPoly& a, const UPoly& b) const {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "skew division by zero");
  if (a.degree() < b.degree()) return {UPoly{}, a};
  std::vector<Elem> r = a.c;
  std::vector<Elem> quo(a.c.size() - b.c.size() + 1);
  const std::size_t db = b.c.size() - 1;
  for (std::size_t d = r.size() - 1;; --d) {
    if (!r[d].is_zero()) {
      const std::size_t shift = d - db;
      const Elem t = f_.div(r[d], f_.frobenius(b.lead(), shift));
      quo[shift] = t;
      const Elem nt = f_.neg(t);
      for (std::size_t j = 0; j <= db; ++j)
        r[shift + j] = f_.add(r[shift + j], f_.mul(nt, f_.frobenius(b.c[j], shift)));
    }
    if (d == db) break;
  }
  r.resize(db);
  return {UPoly(std::move(quo)), UPoly(std::move(r))};
}

UPolyRing::Bezout UPolyRing::skew_xgcd(const UPoly& a, const UPoly& b) const {
  UPoly r0 = a, r1 = b, s0 = one(), s1, t0, t1 = one();
  while (!r1.is_zero()) {
    auto [quo, r] = skew_divmod_right(r0, r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, sub(s0, skew_mul(quo, s1)));
    t0 = std::exchange(t1, sub(t0, skew_mul(quo, t1)));
  }
  if (r0.is_zero()) return {UPoly{}, UPoly{}, UPoly{}};
  const Elem li = f_.inv(r0.lead());
  return {scale(s0, li), scale(t0, li), scale(r0, li)};
}

std::string UPolyRing::to_string(const UPoly& a, const std::string& var) const {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += f_.to_string(a.c[i]);
    if (i >= 1) s += "*" + var;
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace weil
