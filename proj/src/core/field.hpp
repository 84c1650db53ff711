#pragma once

// Finite-field tower GF(p) ⊂ k' = GF(q) ⊂ k = GF(q^n), q = p^e.
//
// Elements are addressed by a packed index: the k'-coordinates c_0..c_{n-1}
// of x in the polynomial basis 1, t, ..., t^{n-1} are base-q digits of the
// index, and each k'-coordinate is itself the base-p packing of its GF(p)
// coordinates.  Consequently k' ⊂ k is exactly the index range [0, q), and a
// Field built with n = 1 shares element indices with the k' of any extension
// over it.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace weil {

class Elem {
 public:
  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const { return index_; }
  constexpr bool is_zero() const { return index_ == 0; }

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;

 private:
  std::uint32_t index_ = 0;
};

// Moduli are little-endian coefficient lists.  m1 has e+1 entries in GF(p);
// m2 has n+1 entries, each a k'-element given by its packed index.  Empty
// moduli mean "pick the default" when passed to Field::make.
struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  std::uint32_t n = 1;
  std::vector<std::uint32_t> m1;
  std::vector<std::uint32_t> m2;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class Field : public std::enable_shared_from_this<Field> {
 public:
  static constexpr std::uint32_t kMaxSize = 1u << 16;

  static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t e, std::uint32_t n,
                                           std::optional<std::vector<std::uint32_t>> m1 = std::nullopt,
                                           std::optional<std::vector<std::uint32_t>> m2 = std::nullopt);
  static std::shared_ptr<const Field> make(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t e() const { return spec_.e; }
  std::uint32_t n() const { return spec_.n; }
  std::uint32_t q() const { return q_; }
  std::uint32_t size() const { return size_; }

  // k' viewed as a field of its own (degree 1 over itself).  Returns *this
  // when n == 1.
  const Field& base() const { return sub_ ? *sub_ : *this; }
  std::shared_ptr<const Field> base_ptr() const;

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  // The class of t in k = k'[t]/(m2); equals a k' element when n == 1.
  Elem generator_t() const;
  Elem from_index(std::uint32_t index) const;
  Elem from_int(std::int64_t v) const;  // image of an integer in GF(p)
  Elem from_coords(std::span<const std::uint32_t> kprime_coords) const;
  std::vector<std::uint32_t> coords(Elem x) const;  // n k'-indices
  std::uint32_t coord(Elem x, std::uint32_t j) const { return (x.index() / q_pow_[j]) % q_; }
  std::vector<std::uint32_t> prime_digits(std::uint32_t kprime_index) const;  // e GF(p) digits
  bool in_subfield(Elem x) const { return x.index() < q_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return Elem{neg_[a.index()]}; }
  Elem mul(Elem a, Elem b) const {
    if (a.is_zero() || b.is_zero()) return Elem{0};
    return Elem{exp_[log_[a.index()] + log_[b.index()]]};
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t exponent) const;

  // sigma_i(x) = x^(q^i), evaluated with the precomputed k'-linear
  // Frobenius matrices.
  Elem frobenius(Elem x, std::uint64_t i) const;
  // Same map via exponentiation; retained for cross-checking.
  Elem frobenius_by_pow(Elem x, std::uint64_t i) const;

  // Tower arithmetic without tables.
  Elem mul_slow(Elem a, Elem b) const;

  template <class Rng>
  Elem random(Rng& rng) const {
    return Elem{static_cast<std::uint32_t>(uniform_below(rng, size_))};
  }
  template <class Rng>
  Elem random_base(Rng& rng) const {
    return Elem{static_cast<std::uint32_t>(uniform_below(rng, q_))};
  }
  template <class Rng>
  Elem random_nonzero(Rng& rng) const {
    return Elem{1 + static_cast<std::uint32_t>(uniform_below(rng, size_ - 1))};
  }

  // "(c0,c1,...)": k'-coordinates; each written as an integer when e == 1
  // and as a nested GF(p) tuple otherwise.
  std::string to_string(Elem x) const;

  // Raw tables for the linear-algebra kernels.
  std::span<const std::uint32_t> exp_table() const { return exp_; }
  std::span<const std::uint32_t> log_table() const { return log_; }
  std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const;

  // Portable bounded draw from a 64-bit engine (rejection sampling), so
  // seeded runs are reproducible across standard libraries.
  template <class Rng>
  static std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      const std::uint64_t v = rng();
      if (v < limit) return v % bound;
    }
  }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field() = default;
  static std::shared_ptr<Field> build(std::uint32_t p, std::uint32_t e, std::uint32_t n, std::vector<std::uint32_t> m1,
                                      std::vector<std::uint32_t> m2, std::shared_ptr<const Field> sub);
  void build_tables();
  Elem kprime_mul_slow(std::uint32_t a, std::uint32_t b) const;

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::uint32_t size_ = 0;
  std::vector<std::uint32_t> q_pow_;  // q^j, j = 0..n
  std::vector<std::uint32_t> p_pow_;  // p^l, l = 0..e
  std::shared_ptr<const Field> sub_;

  std::vector<std::uint32_t> exp_;  // length 2*(size-1)
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint16_t> add_;  // full table for small odd-characteristic fields
  std::vector<std::vector<Elem>> frob_;  // frob_[i][j] = t^(j q^i)
};

using FieldPtr = std::shared_ptr<const Field>;

// Lexicographically least monic irreducible polynomial of the given degree
// over `base`, least meaning smallest value of sum c_i * |base|^i.
std::vector<std::uint32_t> least_irreducible(const Field& base, std::uint32_t degree);

// Moore matrix of a candidate k/k' basis: entry (i, j) = alpha_j^(q^i).
struct FrobeniusMatrix {
  std::uint32_t n = 0;
  std::vector<Elem> entries;  // row-major n x n
  bool invertible = false;

  Elem at(std::uint32_t i, std::uint32_t j) const { return entries[i * n + j]; }
};

// Throws NotABasis when the matrix is singular.
FrobeniusMatrix moore_matrix(const Field& field, std::span<const Elem> basis);
// Same construction without the invertibility requirement.
FrobeniusMatrix moore_matrix_unchecked(const Field& field, std::span<const Elem> basis);

std::vector<Elem> polynomial_basis(const Field& field);

}  // namespace weil

template <>
struct std::hash<weil::Elem> {
  std::size_t operator()(weil::Elem x) const noexcept { return std::hash<std::uint32_t>{}(x.index()); }
};
