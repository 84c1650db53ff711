#include "descent.hpp"

#include "error.hpp"

namespace weil {

DescentContext DescentContext::make(FieldPtr field, std::size_t m, std::optional<std::vector<Elem>> basis) {
  DescentContext ctx;
  const std::uint32_t n = field->n();
  ctx.field_ = field;
  ctx.m_ = m;
  ctx.basis_ = basis ? *basis : polynomial_basis(*field);
  for (auto a : ctx.basis_)
    if (a.index() >= field->size()) fail(ErrorCode::CoordinateNotInField, "basis element out of range");
  ctx.gamma_ = moore_matrix(*field, ctx.basis_);

  const Field& kp = field->base();
  Matrix coords(n, n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t r = 0; r < n; ++r) coords.at(r, j) = Elem{field->coord(ctx.basis_[j], r)};
  auto inv = inverse(kp, coords);
  if (!inv) fail(ErrorCode::NotABasis, "basis coordinates are singular over k'");
  ctx.inverse_coords_ = std::move(*inv);

  std::vector<std::string> xs = numbered_vars("X", m), lifted;
  for (std::size_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < n; ++j) lifted.push_back("X" + std::to_string(i) + "_" + std::to_string(j));
  std::vector<std::string> f1 = xs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::uint32_t j = 1; j < n; ++j) f1.push_back("Y" + std::to_string(i) + "_" + std::to_string(j));
  ctx.source_ = Ring::make(field, Level::K, xs);
  ctx.descended_ = Ring::make(field, Level::KPrime, lifted);
  ctx.lifted_ = Ring::make(field, Level::K, lifted);
  ctx.f1_ = Ring::make(field, Level::K, f1);
  return ctx;
}

std::vector<Elem> DescentContext::decompose(Elem x) const {
  const std::uint32_t n = field_->n();
  std::vector<Elem> v(n);
  for (std::uint32_t r = 0; r < n; ++r) v[r] = Elem{field_->coord(x, r)};
  return apply(field_->base(), inverse_coords_, v);
}

Elem DescentContext::recompose(const std::vector<Elem>& coords) const {
  if (coords.size() != basis_.size()) fail(ErrorCode::InvalidArgument, "expected n coordinates");
  Elem x{};
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (!field_->in_subfield(coords[j])) fail(ErrorCode::CoordinateNotInField, "coordinate outside k'");
    x = field_->add(x, field_->mul(coords[j], basis_[j]));
  }
  return x;
}

namespace {

void check_source(const MultiPoly& f, const DescentContext& ctx) {
  if (!f.ring() || f.ring()->nvars() != ctx.m() || f.ring()->field().spec() != ctx.field().spec())
    fail(ErrorCode::RingMismatch, "polynomial is not in k[X0..X{m-1}] of the descent context");
}

// Images sum_j c_j(s) * V_{i,j} for each source variable, where c_j(s) is
// column j of the chosen row of Gamma.
std::vector<MultiPoly> linear_images(const DescentContext& ctx, const RingPtr& target, std::uint32_t row) {
  const std::uint32_t n = ctx.n();
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < ctx.m(); ++i) {
    MultiPoly img(target);
    for (std::uint32_t j = 0; j < n; ++j) {
      Exponents e(target->nvars(), 0);
      e[i * n + j] = 1;
      img.add_term(e, ctx.gamma().at(row, j));
    }
    images.push_back(std::move(img));
  }
  return images;
}

MultiPoly field_equation(const RingPtr& ring, std::size_t v, std::uint32_t q, std::size_t target) {
  const Field& f = ring->field();
  Exponents a(ring->nvars(), 0), b(ring->nvars(), 0);
  a[v] = q;
  b[target] = 1;
  MultiPoly out(ring);
  out.add_term(a, f.one());
  out.add_term(b, f.neg(f.one()));
  return out;
}

}  // namespace

MultiPoly lift(const MultiPoly& f, const DescentContext& ctx) {
  check_source(f, ctx);
  if (ctx.m() == 0) return relevel(embed(f, ctx.lifted_ring(), {}), ctx.lifted_ring());
  return substitute(f, linear_images(ctx, ctx.lifted_ring(), 0));
}

std::vector<MultiPoly> weil_descend(const MultiPoly& f, const DescentContext& ctx) {
  const MultiPoly g = lift(f, ctx);
  const std::uint32_t n = ctx.n();
  std::vector<MultiPoly> out(n, MultiPoly(ctx.descended_ring()));
  for (const auto& [e, c] : g.terms()) {
    const auto parts = ctx.decompose(c);
    for (std::uint32_t j = 0; j < n; ++j) out[j].add_term(e, parts[j]);
  }
  return out;
}

PolySystem weil_descend_system(const PolySystem& F, const DescentContext& ctx) {
  PolySystem out{ctx.descended_ring(), {}};
  for (const auto& f : F.polys)
    for (auto& fj : weil_descend(f, ctx)) out.polys.push_back(std::move(fj));
  return out;
}

PolySystem build_F1(const PolySystem& F, const DescentContext& ctx) {
  const RingPtr& ring = ctx.f1_ring();
  const std::size_t m = ctx.m();
  const std::uint32_t n = ctx.n(), q = ctx.field().q();
  std::vector<std::size_t> var_map(m);
  for (std::size_t i = 0; i < m; ++i) var_map[i] = i;
  PolySystem out{ring, {}};
  for (const auto& f : F.polys) {
    check_source(f, ctx);
    out.polys.push_back(embed(f, ring, var_map));
  }
  auto y = [&](std::size_t i, std::uint32_t j) { return m + i * (n - 1) + (j - 1); };
  for (std::size_t i = 0; i < m; ++i) {
    if (n == 1) {
      out.polys.push_back(field_equation(ring, i, q, i));
      continue;
    }
    out.polys.push_back(field_equation(ring, i, q, y(i, 1)));
    for (std::uint32_t j = 1; j + 1 < n; ++j) out.polys.push_back(field_equation(ring, y(i, j), q, y(i, j + 1)));
    out.polys.push_back(field_equation(ring, y(i, n - 1), q, i));
  }
  return out;
}

PolySystem build_Fprime1(const PolySystem& F, const DescentContext& ctx) {
  PolySystem out = weil_descend_system(F, ctx);
  const std::uint32_t q = ctx.field().q();
  for (std::size_t v = 0; v < out.ring->nvars(); ++v) out.polys.push_back(field_equation(out.ring, v, q, v));
  return out;
}

PolySystem build_sigma_orbit_G(const PolySystem& F, const DescentContext& ctx) {
  PolySystem out{ctx.lifted_ring(), {}};
  for (const auto& f : F.polys) {
    const MultiPoly g = lift(f, ctx);
    for (std::uint32_t i = 0; i < ctx.n(); ++i) out.polys.push_back(apply_sigma(g, i));
  }
  return out;
}

PolySystem build_G1(const PolySystem& F, const DescentContext& ctx) {
  PolySystem out = build_sigma_orbit_G(F, ctx);
  const std::uint32_t q = ctx.field().q();
  for (std::size_t v = 0; v < out.ring->nvars(); ++v) out.polys.push_back(field_equation(out.ring, v, q, v));
  return out;
}

PolySystem build_G2(const PolySystem& F, const DescentContext& ctx) {
  PolySystem out{ctx.lifted_ring(), {}};
  for (const auto& f : F.polys) out.polys.push_back(lift(f, ctx));
  const std::uint32_t q = ctx.field().q();
  for (std::size_t v = 0; v < out.ring->nvars(); ++v) out.polys.push_back(field_equation(out.ring, v, q, v));
  return out;
}

PolySystem change_coordinates_F1(const PolySystem& F1, const DescentContext& ctx) {
  const std::size_t m = ctx.m();
  const std::uint32_t n = ctx.n();
  if (!(*F1.ring == *ctx.f1_ring())) fail(ErrorCode::RingMismatch, "system is not in the F_1 ring");
  std::vector<MultiPoly> images(F1.ring->nvars());
  for (std::uint32_t row = 0; row < n; ++row) {
    auto imgs = linear_images(ctx, ctx.lifted_ring(), row);
    for (std::size_t i = 0; i < m; ++i) images[row == 0 ? i : m + i * (n - 1) + (row - 1)] = imgs[i];
  }
  PolySystem out{ctx.lifted_ring(), {}};
  for (const auto& f : F1.polys) out.polys.push_back(substitute(f, images));
  return out;
}

std::vector<Elem> transport_forward(std::span<const Elem> point, const DescentContext& ctx) {
  if (point.size() != ctx.m()) fail(ErrorCode::InvalidArgument, "point must have m coordinates");
  std::vector<Elem> out;
  for (auto x : point) {
    if (x.index() >= ctx.field().size()) fail(ErrorCode::CoordinateNotInField, "coordinate outside k");
    for (auto c : ctx.decompose(x)) out.push_back(c);
  }
  return out;
}

std::vector<Elem> transport_backward(std::span<const Elem> point, const DescentContext& ctx) {
  const std::uint32_t n = ctx.n();
  if (point.size() != ctx.m() * n) fail(ErrorCode::InvalidArgument, "point must have m*n coordinates");
  std::vector<Elem> out;
  for (std::size_t i = 0; i < ctx.m(); ++i)
    out.push_back(ctx.recompose(std::vector<Elem>(point.begin() + static_cast<std::ptrdiff_t>(i * n),
                                                  point.begin() + static_cast<std::ptrdiff_t>((i + 1) * n))));
  return out;
}

}  // namespace weil
