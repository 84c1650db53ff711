#include "field.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"
#include "matrix.hpp"
#include "upoly.hpp"

namespace weil {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::string poly_name(const std::vector<std::uint32_t>& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

}  // namespace

std::shared_ptr<const Field> Field::base_ptr() const {
  if (sub_) return sub_;
  return shared_from_this();
}

std::shared_ptr<Field> Field::build(std::uint32_t p, std::uint32_t e, std::uint32_t n, std::vector<std::uint32_t> m1,
                                    std::vector<std::uint32_t> m2, std::shared_ptr<const Field> sub) {
  std::shared_ptr<Field> f(new Field());
  f->spec_ = FieldSpec{p, e, n, std::move(m1), std::move(m2)};
  f->p_pow_.assign(e + 1, 1);
  for (std::uint32_t l = 1; l <= e; ++l) f->p_pow_[l] = f->p_pow_[l - 1] * p;
  f->q_ = f->p_pow_[e];
  f->q_pow_.assign(n + 1, 1);
  for (std::uint32_t j = 1; j <= n; ++j) f->q_pow_[j] = f->q_pow_[j - 1] * f->q_;
  f->size_ = f->q_pow_[n];
  f->sub_ = std::move(sub);
  f->build_tables();
  return f;
}

std::shared_ptr<const Field> Field::make(const FieldSpec& spec) {
  std::optional<std::vector<std::uint32_t>> m1, m2;
  if (!spec.m1.empty()) m1 = spec.m1;
  if (!spec.m2.empty()) m2 = spec.m2;
  return make(spec.p, spec.e, spec.n, m1, m2);
}

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t e, std::uint32_t n,
                                         std::optional<std::vector<std::uint32_t>> m1,
                                         std::optional<std::vector<std::uint32_t>> m2) {
  if (!is_prime(p)) fail(ErrorCode::NonPrimeCharacteristic, "characteristic " + std::to_string(p) + " is not prime");
  if (e == 0 || n == 0) fail(ErrorCode::InvalidArgument, "field degrees e and n must be positive");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < e * n; ++i) {
    size *= p;
    if (size > kMaxSize) fail(ErrorCode::Unsupported, "fields larger than 2^16 elements are not supported");
  }

  auto prime = build(p, 1, 1, {0, 1}, {0, 1}, nullptr);
  if (m1) {
    if (m1->size() != e + 1 || m1->back() != 1)
      fail(ErrorCode::ReducibleModulus, "m1 " + poly_name(*m1) + " must be monic of degree " + std::to_string(e));
    if (std::any_of(m1->begin(), m1->end(), [&](std::uint32_t c) { return c >= p; }))
      fail(ErrorCode::InvalidArgument, "m1 coefficient out of range for GF(" + std::to_string(p) + ")");
    UPoly f;
    for (auto c : *m1) f.c.push_back(Elem{c});
    f.trim();
    if (!UPolyRing(*prime).is_irreducible(f))
      fail(ErrorCode::ReducibleModulus, "m1 " + poly_name(*m1) + " is reducible over GF(" + std::to_string(p) + ")");
  } else {
    m1 = least_irreducible(*prime, e);
  }

  auto kprime = build(p, e, 1, *m1, {0, 1}, nullptr);
  const std::uint32_t q = kprime->q();
  if (m2) {
    if (m2->size() != n + 1 || m2->back() != 1)
      fail(ErrorCode::ReducibleModulus, "m2 " + poly_name(*m2) + " must be monic of degree " + std::to_string(n));
    if (std::any_of(m2->begin(), m2->end(), [&](std::uint32_t c) { return c >= q; }))
      fail(ErrorCode::InvalidArgument, "m2 coefficient out of range for GF(" + std::to_string(q) + ")");
    UPoly f;
    for (auto c : *m2) f.c.push_back(Elem{c});
    f.trim();
    if (!UPolyRing(*kprime).is_irreducible(f))
      fail(ErrorCode::ReducibleModulus, "m2 " + poly_name(*m2) + " is reducible over GF(" + std::to_string(q) + ")");
  } else {
    m2 = least_irreducible(*kprime, n);
  }

  if (n == 1) return build(p, e, 1, *m1, *m2, nullptr);
  return build(p, e, n, *m1, *m2, kprime);
}

Elem Field::kprime_mul_slow(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t p = spec_.p, e = spec_.e;
  std::vector<std::uint32_t> prod(2 * e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    const std::uint32_t ai = (a / p_pow_[i]) % p;
    if (!ai) continue;
    for (std::uint32_t j = 0; j < e; ++j) {
      const std::uint32_t bj = (b / p_pow_[j]) % p;
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{ai} * bj) % p);
    }
  }
  const auto& m1 = spec_.m1;  // monic, degree e
  for (std::uint32_t d = 2 * e - 1; d >= e; --d) {
    const std::uint32_t c = prod[d];
    if (c) {
      for (std::uint32_t l = 0; l < e; ++l)
        prod[d - e + l] = static_cast<std::uint32_t>((prod[d - e + l] + std::uint64_t{p - c} * m1[l]) % p);
      prod[d] = 0;
    }
    if (d == e) break;
  }
  std::uint32_t out = 0;
  for (std::uint32_t l = 0; l < e; ++l) out += prod[l] * p_pow_[l];
  return Elem{out};
}

namespace {

// k' arithmetic on packed indices by digits; used only while tables are built.
struct KprimeDigits {
  std::uint32_t p, e;
  const std::vector<std::uint32_t>& p_pow;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p == 2) return a ^ b;
    std::uint32_t out = 0;
    for (std::uint32_t l = 0; l < e; ++l)
      out += (((a / p_pow[l]) % p + (b / p_pow[l]) % p) % p) * p_pow[l];
    return out;
  }
  std::uint32_t neg(std::uint32_t a) const {
    std::uint32_t out = 0;
    for (std::uint32_t l = 0; l < e; ++l) out += ((p - (a / p_pow[l]) % p) % p) * p_pow[l];
    return out;
  }
};

}  // namespace

Elem Field::mul_slow(Elem a, Elem b) const {
  const std::uint32_t n = spec_.n;
  KprimeDigits kd{spec_.p, spec_.e, p_pow_};
  auto kmul = [&](std::uint32_t x, std::uint32_t y) { return kprime_mul_slow(x, y).index(); };
  std::vector<std::uint32_t> prod(2 * n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t ai = coord(a, i);
    if (!ai) continue;
    for (std::uint32_t j = 0; j < n; ++j) prod[i + j] = kd.add(prod[i + j], kmul(ai, coord(b, j)));
  }
  const auto& m2 = spec_.m2;
  for (std::uint32_t d = 2 * n - 1; d >= n; --d) {
    const std::uint32_t c = prod[d];
    if (c) {
      const std::uint32_t nc = kd.neg(c);
      for (std::uint32_t l = 0; l < n; ++l) prod[d - n + l] = kd.add(prod[d - n + l], kmul(nc, m2[l]));
      prod[d] = 0;
    }
    if (d == n) break;
  }
  std::uint32_t out = 0;
  for (std::uint32_t l = 0; l < n; ++l) out += prod[l] * q_pow_[l];
  return Elem{out};
}

void Field::build_tables() {
  const std::uint32_t p = spec_.p;
  const std::uint32_t digits = spec_.e * spec_.n;
  std::vector<std::uint32_t> pd(digits + 1, 1);
  for (std::uint32_t l = 1; l <= digits; ++l) pd[l] = pd[l - 1] * p;

  neg_.resize(size_);
  for (std::uint32_t x = 0; x < size_; ++x) {
    std::uint32_t out = 0;
    for (std::uint32_t l = 0; l < digits; ++l) out += ((p - (x / pd[l]) % p) % p) * pd[l];
    neg_[x] = out;
  }
  if (p != 2 && size_ <= 1024) {
    add_.resize(static_cast<std::size_t>(size_) * size_);
    for (std::uint32_t a = 0; a < size_; ++a)
      for (std::uint32_t b = 0; b < size_; ++b) {
        std::uint32_t out = 0;
        for (std::uint32_t l = 0; l < digits; ++l) out += (((a / pd[l]) % p + (b / pd[l]) % p) % p) * pd[l];
        add_[static_cast<std::size_t>(a) * size_ + b] = static_cast<std::uint16_t>(out);
      }
  }

  const std::uint32_t order = size_ - 1;
  exp_.assign(2 * std::max<std::uint32_t>(order, 1), 0);
  log_.assign(size_, 0);
  if (order == 1) {
    exp_[0] = exp_[1] = 1;
  } else {
    const auto factors = prime_factors(order);
    auto pow_slow = [&](Elem x, std::uint64_t k) {
      Elem r{1};
      while (k) {
        if (k & 1) r = mul_slow(r, x);
        x = mul_slow(x, x);
        k >>= 1;
      }
      return r;
    };
    std::uint32_t g = 2;
    for (;; ++g) {
      bool primitive = true;
      for (auto r : factors)
        if (pow_slow(Elem{g}, order / r) == Elem{1}) {
          primitive = false;
          break;
        }
      if (primitive) break;
    }
    Elem x{1};
    for (std::uint32_t i = 0; i < order; ++i) {
      exp_[i] = exp_[i + order] = x.index();
      log_[x.index()] = i;
      x = mul_slow(x, Elem{g});
    }
  }

  const std::uint32_t n = spec_.n;
  frob_.assign(n, std::vector<Elem>(n));
  std::uint64_t qi = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) frob_[i][j] = pow(Elem{q_pow_[j]}, qi);
    qi *= q_;
  }
}

Elem Field::generator_t() const { return spec_.n > 1 ? Elem{q_} : from_index(0); }

Elem Field::from_index(std::uint32_t index) const {
  if (index >= size_) fail(ErrorCode::CoordinateNotInField, "element index " + std::to_string(index) + " out of range");
  return Elem{index};
}

Elem Field::from_int(std::int64_t v) const {
  const std::int64_t p = spec_.p;
  return Elem{static_cast<std::uint32_t>(((v % p) + p) % p)};
}

Elem Field::from_coords(std::span<const std::uint32_t> kprime_coords) const {
  if (kprime_coords.size() != spec_.n)
    fail(ErrorCode::InvalidArgument, "expected " + std::to_string(spec_.n) + " k'-coordinates");
  std::uint32_t out = 0;
  for (std::uint32_t j = 0; j < spec_.n; ++j) {
    if (kprime_coords[j] >= q_) fail(ErrorCode::CoordinateNotInField, "k'-coordinate out of range");
    out += kprime_coords[j] * q_pow_[j];
  }
  return Elem{out};
}

std::vector<std::uint32_t> Field::coords(Elem x) const {
  std::vector<std::uint32_t> out(spec_.n);
  for (std::uint32_t j = 0; j < spec_.n; ++j) out[j] = coord(x, j);
  return out;
}

std::vector<std::uint32_t> Field::prime_digits(std::uint32_t kprime_index) const {
  std::vector<std::uint32_t> out(spec_.e);
  for (std::uint32_t l = 0; l < spec_.e; ++l) out[l] = (kprime_index / p_pow_[l]) % spec_.p;
  return out;
}

std::uint32_t Field::add_index(std::uint32_t a, std::uint32_t b) const {
  if (spec_.p == 2) return a ^ b;
  if (!add_.empty()) return add_[static_cast<std::size_t>(a) * size_ + b];
  const std::uint32_t p = spec_.p;
  std::uint32_t out = 0, scale = 1;
  while (a || b) {
    out += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

Elem Field::add(Elem a, Elem b) const { return Elem{add_index(a.index(), b.index())}; }

Elem Field::inv(Elem a) const {
  if (a.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t order = size_ - 1;
  return Elem{exp_[(order - log_[a.index()]) % order]};
}

Elem Field::pow(Elem a, std::uint64_t exponent) const {
  if (exponent == 0) return one();
  if (a.is_zero()) return zero();
  const std::uint64_t order = size_ - 1;
  return Elem{exp_[(static_cast<std::uint64_t>(log_[a.index()]) * (exponent % order)) % order]};
}

Elem Field::frobenius(Elem x, std::uint64_t i) const {
  const std::uint32_t n = spec_.n;
  const auto& row = frob_[i % n];
  Elem out{};
  for (std::uint32_t j = 0; j < n; ++j) {
    const std::uint32_t c = coord(x, j);
    if (c) out = add(out, mul(Elem{c}, row[j]));
  }
  return out;
}

Elem Field::frobenius_by_pow(Elem x, std::uint64_t i) const {
  if (x.is_zero()) return x;
  const std::uint64_t order = size_ - 1;
  std::uint64_t exponent = 1;
  for (std::uint64_t s = 0; s < i % spec_.n; ++s) exponent = (exponent * q_) % order;
  return pow(x, exponent == 0 ? order : exponent);
}

std::string Field::to_string(Elem x) const {
  std::string s = "(";
  for (std::uint32_t j = 0; j < spec_.n; ++j) {
    if (j) s += ",";
    const std::uint32_t c = coord(x, j);
    if (spec_.e == 1) {
      s += std::to_string(c);
    } else {
      s += "(";
      const auto d = prime_digits(c);
      for (std::uint32_t l = 0; l < spec_.e; ++l) s += (l ? "," : "") + std::to_string(d[l]);
      s += ")";
    }
  }
  return s + ")";
}

std::vector<std::uint32_t> least_irreducible(const Field& base, std::uint32_t degree) {
  UPolyRing ring(base);
  const std::uint32_t Q = base.size();
  std::vector<std::uint32_t> c(degree + 1, 0);
  c[degree] = 1;
  for (;;) {
    UPoly f;
    for (auto v : c) f.c.push_back(Elem{v});
    f.trim();
    if (ring.is_irreducible(f)) return c;
    std::uint32_t i = 0;
    while (i < degree && ++c[i] == Q) c[i++] = 0;
    if (i == degree) fail(ErrorCode::Internal, "no irreducible polynomial found");
  }
}

std::vector<Elem> polynomial_basis(const Field& field) {
  std::vector<Elem> out;
  std::uint32_t v = 1;
  for (std::uint32_t j = 0; j < field.n(); ++j, v *= field.q()) out.push_back(Elem{v});
  return out;
}

FrobeniusMatrix moore_matrix_unchecked(const Field& field, std::span<const Elem> basis) {
  const std::uint32_t n = field.n();
  if (basis.size() != n) fail(ErrorCode::InvalidArgument, "a k/k' basis has exactly n elements");
  FrobeniusMatrix g;
  g.n = n;
  g.entries.resize(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) g.entries[i * n + j] = field.frobenius(basis[j], i);
  Matrix m(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) m.at(i, j) = g.at(i, j);
  g.invertible = rank(field, m) == n;
  return g;
}

FrobeniusMatrix moore_matrix(const Field& field, std::span<const Elem> basis) {
  auto g = moore_matrix_unchecked(field, basis);
  if (!g.invertible) fail(ErrorCode::NotABasis, "the given elements are not a basis of k over k'");
  return g;
}

}  // namespace weil
