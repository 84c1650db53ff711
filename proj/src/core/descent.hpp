#pragma once

// Weil descent of systems over k = GF(q^n) to systems over k' = GF(q), and
// the auxiliary systems relating the two.
//
// Variable layout (fixed so emitted systems are byte-stable):
//   source ring      X0 .. X{m-1}                          over k
//   descended ring   X{i}_{j} at index i*n + j             over k'
//   lifted ring      same names as descended, over k (also used as the
//                    Z-coordinates of the coordinate change)
//   F_1 ring         X0 .. X{m-1}, then Y{i}_{j}, j = 1..n-1, at index
//                    m + i*(n-1) + (j-1)                    over k

#include <optional>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace weil {

class DescentContext {
 public:
  // Default basis is the polynomial basis 1, t, ..., t^{n-1}.  Throws
  // NotABasis for a dependent basis.
  static DescentContext make(FieldPtr field, std::size_t m, std::optional<std::vector<Elem>> basis = std::nullopt);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t m() const { return m_; }
  std::uint32_t n() const { return field_->n(); }
  const std::vector<Elem>& basis() const { return basis_; }
  const FrobeniusMatrix& gamma() const { return gamma_; }

  const RingPtr& source_ring() const { return source_; }
  const RingPtr& descended_ring() const { return descended_; }
  const RingPtr& lifted_ring() const { return lifted_; }
  const RingPtr& f1_ring() const { return f1_; }

  // k'-coordinates c_j with x = sum_j c_j alpha_j.
  std::vector<Elem> decompose(Elem x) const;
  Elem recompose(const std::vector<Elem>& coords) const;

 private:
  DescentContext() = default;
  FieldPtr field_;
  std::size_t m_ = 0;
  std::vector<Elem> basis_;
  FrobeniusMatrix gamma_;
  Matrix inverse_coords_;  // over k', maps polynomial-basis coordinates to alpha-coordinates
  RingPtr source_, descended_, lifted_, f1_;
};

// g_f = f(sum_j alpha_j X{0}_{j}, ...) in the lifted ring.
MultiPoly lift(const MultiPoly& f, const DescentContext& ctx);
// (f_0, ..., f_{n-1}) over k' with g_f = sum_j alpha_j f_j.
std::vector<MultiPoly> weil_descend(const MultiPoly& f, const DescentContext& ctx);
// F' = {f_j : f in F, j = 0..n-1}, in the descended ring.
PolySystem weil_descend_system(const PolySystem& F, const DescentContext& ctx);

PolySystem build_F1(const PolySystem& F, const DescentContext& ctx);
PolySystem build_Fprime1(const PolySystem& F, const DescentContext& ctx);
// G = {g_f^{sigma_i} : f in F, i = 0..n-1} in the lifted ring.
PolySystem build_sigma_orbit_G(const PolySystem& F, const DescentContext& ctx);
// G together with the field equations of k' in the lifted ring.
PolySystem build_G1(const PolySystem& F, const DescentContext& ctx);
// {g_f(Z)} together with Z^q - Z, Z being the lifted-ring variables.
PolySystem build_G2(const PolySystem& F, const DescentContext& ctx);
// F_1 rewritten through (X_i, Y_i1, ..., Y_i,n-1)^T = Gamma (Z_i0, ..., Z_i,n-1)^T.
PolySystem change_coordinates_F1(const PolySystem& F1, const DescentContext& ctx);

// Forward: k-point (m coordinates) to k'-point (m*n coordinates).
std::vector<Elem> transport_forward(std::span<const Elem> point, const DescentContext& ctx);
// Backward: k'-point to k-point; throws CoordinateNotInField for a
// coordinate outside k'.
std::vector<Elem> transport_backward(std::span<const Elem> point, const DescentContext& ctx);

}  // namespace weil
