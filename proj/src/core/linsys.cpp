#include "linsys.hpp"

#include <algorithm>
#include <random>

#include "error.hpp"

namespace weil {

namespace {

constexpr std::uint32_t kMaxSolverQ = 7;

void add_into(const Field& k, Elem& dst, Elem v) { dst = k.add(dst, v); }

UPoly x_pow_minus_one(const Field& k, std::size_t n) {
  std::vector<Elem> c(n + 1);
  c[0] = k.neg(k.one());
  c[n] = k.add(c[n], k.one());
  return UPoly(std::move(c));
}

Elem elem_from_kprime_vector(const Field& k, const std::vector<Elem>& v) {
  std::vector<std::uint32_t> idx(v.size());
  for (std::size_t r = 0; r < v.size(); ++r) idx[r] = v[r].index();
  return k.from_coords(idx);
}

std::vector<Elem> kprime_vector(const Field& k, Elem x) {
  std::vector<Elem> v(k.n());
  for (std::uint32_t r = 0; r < k.n(); ++r) v[r] = Elem{k.coord(x, r)};
  return v;
}

// Matrix over k' of a k'-linear map k -> k given on the polynomial basis.
template <class Map>
Matrix kprime_matrix(const Field& k, Map&& map) {
  const std::uint32_t n = k.n();
  Matrix M(n, n);
  for (std::uint32_t j = 0; j < n; ++j) {
    std::vector<std::uint32_t> e(n, 0);
    e[j] = 1;
    const auto col = kprime_vector(k, map(k.from_coords(e)));
    for (std::uint32_t r = 0; r < n; ++r) M.at(r, j) = col[r];
  }
  return M;
}

void check_q(const Field& k, const SearchOptions& options) {
  if (k.q() > kMaxSolverQ && !options.allow_large_q)
    fail(ErrorCode::Unsupported, "solver is limited to q <= 7 (q = " + std::to_string(k.q()) + ")");
}

void check_system(const Field& k, const std::vector<LinearizedPoly>& F, std::size_t m) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "system needs at least one variable");
  for (const auto& f : F) {
    if (f.m != m || f.coeffs.size() != m) fail(ErrorCode::InvalidArgument, "linearized polynomial has the wrong arity");
    for (const auto& row : f.coeffs) {
      if (row.size() != f.bound) fail(ErrorCode::InvalidArgument, "coefficient row does not match the bound");
      for (auto c : row)
        if (c.index() >= k.size()) fail(ErrorCode::CoordinateNotInField, "coefficient outside k");
    }
  }
}

LinearForm form_sub(const Field& k, const LinearForm& a, const LinearForm& b) {
  return add(k, a, scale(k, b, k.neg(k.one())));
}

// Replaces the variables of the stages in `gamma` (indexed by stage) by
// their forms.
LinearForm substitute_stages(const Field& k, const LinearForm& f,
                             const std::vector<std::optional<std::vector<LinearForm>>>& gamma) {
  LinearForm out = f;
  for (std::size_t t = 0; t < f.m; ++t) {
    if (!gamma[t]) continue;
    for (std::size_t j = 0; j < f.nprime; ++j) {
      const Elem b = f.at(t, j);
      if (b.is_zero()) continue;
      out.at(t, j) = Elem{};
      out = add(k, out, scale(k, (*gamma[t])[j], b));
    }
  }
  return out;
}

// Image of x_{ij} under the Frobenius step, as a form.
LinearForm step_of_variable(const InvariantSubspace& W, std::size_t m, std::size_t i, std::size_t j) {
  const Field& k = *W.field;
  return frobenius_step(LinearForm::variable(m, W.nprime, i, j, k.one()), W);
}

bool skew_coprime(const UPolyRing& R, const UPoly& g, const UPoly& fW) {
  if (g.is_zero()) return fW == R.one();
  return R.skew_xgcd(g, fW).g == R.one();
}

}  // namespace

// ---- value types -----------------------------------------------------------

LinearizedPoly LinearizedPoly::zero(std::size_t m, std::size_t bound) {
  LinearizedPoly f;
  f.m = m;
  f.bound = bound;
  f.coeffs.assign(m, std::vector<Elem>(bound));
  return f;
}

UPoly LinearizedPoly::component(std::size_t i) const { return UPoly(coeffs.at(i)); }

std::size_t LinearizedPoly::length() const {
  std::size_t len = 0;
  for (const auto& row : coeffs)
    for (std::size_t j = row.size(); j-- > 0;)
      if (!row[j].is_zero()) {
        len = std::max(len, j + 1);
        break;
      }
  return len;
}

LinearForm LinearForm::zero(std::size_t m, std::size_t nprime) {
  LinearForm f;
  f.m = m;
  f.nprime = nprime;
  f.b.assign(m * nprime, Elem{});
  return f;
}

LinearForm LinearForm::variable(std::size_t m, std::size_t nprime, std::size_t i, std::size_t j, Elem one) {
  LinearForm f = zero(m, nprime);
  f.at(i, j) = one;
  return f;
}

bool LinearForm::is_zero() const {
  return std::all_of(b.begin(), b.end(), [](Elem x) { return x.is_zero(); });
}

bool LinearForm::in_stage(std::size_t r) const { return first_stage() >= r; }

std::size_t LinearForm::first_stage() const {
  for (std::size_t idx = 0; idx < b.size(); ++idx)
    if (!b[idx].is_zero()) return idx / nprime;
  return m;
}

UPoly LinearForm::component(std::size_t i) const {
  return UPoly(std::vector<Elem>(b.begin() + static_cast<std::ptrdiff_t>(i * nprime),
                                 b.begin() + static_cast<std::ptrdiff_t>((i + 1) * nprime)));
}

LinearForm add(const Field& k, const LinearForm& a, const LinearForm& b) {
  if (a.m != b.m || a.nprime != b.nprime) fail(ErrorCode::InvalidArgument, "linear form shape mismatch");
  LinearForm out = a;
  for (std::size_t idx = 0; idx < b.b.size(); ++idx) add_into(k, out.b[idx], b.b[idx]);
  return out;
}

LinearForm scale(const Field& k, const LinearForm& a, Elem c) {
  LinearForm out = a;
  for (auto& x : out.b) x = k.mul(x, c);
  return out;
}

bool InvariantSubspace::contains(Elem x) const {
  const Field& k = *field;
  Elem acc{};
  for (std::size_t i = 0; i < fW.c.size(); ++i) add_into(k, acc, k.mul(fW.c[i], k.frobenius(x, i)));
  return acc.is_zero();
}

std::vector<Elem> InvariantSubspace::coordinates(Elem w) const {
  const Field& k = *field;
  const Field& kp = k.base();
  auto c = apply(kp, coords_inverse, kprime_vector(k, w));
  Elem back{};
  for (std::size_t s = 0; s < c.size(); ++s) add_into(k, back, k.mul(c[s], basis[s]));
  if (back != w) fail(ErrorCode::CoordinateNotInField, "element " + k.to_string(w) + " is not in W");
  return c;
}

// ---- L and l ---------------------------------------------------------------

LinearizedPoly L_op(const std::vector<UPoly>& per_var, std::size_t bound) {
  LinearizedPoly f = LinearizedPoly::zero(per_var.size(), bound);
  for (std::size_t i = 0; i < per_var.size(); ++i) {
    if (per_var[i].degree() >= static_cast<int>(bound))
      fail(ErrorCode::DegreeExceedsBound, "component " + std::to_string(i) + " has degree " +
                                              std::to_string(per_var[i].degree()) + " >= bound " +
                                              std::to_string(bound));
    for (std::size_t j = 0; j < per_var[i].c.size(); ++j) f.coeffs[i][j] = per_var[i].c[j];
  }
  return f;
}

LinearForm ell_op(const std::vector<UPoly>& per_var, std::size_t nprime) {
  LinearForm f = LinearForm::zero(per_var.size(), nprime);
  for (std::size_t i = 0; i < per_var.size(); ++i) {
    if (per_var[i].degree() >= static_cast<int>(nprime))
      fail(ErrorCode::DegreeExceedsBound, "component " + std::to_string(i) + " has degree " +
                                              std::to_string(per_var[i].degree()) + " >= n' = " +
                                              std::to_string(nprime));
    for (std::size_t j = 0; j < per_var[i].c.size(); ++j) f.at(i, j) = per_var[i].c[j];
  }
  return f;
}

LinearForm ell_of(const LinearizedPoly& f, std::size_t nprime) {
  std::vector<UPoly> parts;
  for (std::size_t i = 0; i < f.m; ++i) parts.push_back(f.component(i));
  return ell_op(parts, nprime);
}

MultiPoly to_multipoly(const LinearizedPoly& f, const RingPtr& ring) {
  if (ring->nvars() < f.m) fail(ErrorCode::RingMismatch, "ring has fewer variables than the linearized polynomial");
  const std::uint64_t q = ring->field().q();
  MultiPoly out(ring);
  for (std::size_t i = 0; i < f.m; ++i) {
    std::uint64_t e = 1;
    for (std::size_t j = 0; j < f.bound; ++j, e *= q) {
      if (f.coeffs[i][j].is_zero()) continue;
      if (e > UINT32_MAX) fail(ErrorCode::DegreeTooHigh, "exponent q^j does not fit");
      Exponents ex(ring->nvars(), 0);
      ex[i] = static_cast<std::uint32_t>(e);
      out.add_term(ex, f.coeffs[i][j]);
    }
  }
  return out;
}

MultiPoly to_multipoly(const LinearForm& f, const RingPtr& ring) {
  if (ring->nvars() != f.b.size()) fail(ErrorCode::RingMismatch, "form does not match the S ring");
  MultiPoly out(ring);
  for (std::size_t v = 0; v < f.b.size(); ++v) {
    if (f.b[v].is_zero()) continue;
    Exponents ex(ring->nvars(), 0);
    ex[v] = 1;
    out.add_term(ex, f.b[v]);
  }
  return out;
}

Elem evaluate(const Field& k, const LinearizedPoly& f, std::size_t var, Elem x) {
  Elem acc{};
  const auto& row = f.coeffs.at(var);
  for (std::size_t j = 0; j < row.size(); ++j)
    if (!row[j].is_zero()) add_into(k, acc, k.mul(row[j], k.frobenius(x, j)));
  return acc;
}

Elem evaluate(const Field& k, const LinearizedPoly& f, std::span<const Elem> point) {
  if (point.size() != f.m) fail(ErrorCode::InvalidArgument, "point has the wrong number of coordinates");
  Elem acc{};
  for (std::size_t i = 0; i < f.m; ++i) add_into(k, acc, evaluate(k, f, i, point[i]));
  return acc;
}

Elem evaluate(const Field& k, const LinearForm& f, std::span<const Elem> point) {
  if (point.size() != f.m) fail(ErrorCode::InvalidArgument, "point has the wrong number of coordinates");
  Elem acc{};
  for (std::size_t i = 0; i < f.m; ++i)
    for (std::size_t j = 0; j < f.nprime; ++j)
      if (!f.at(i, j).is_zero()) add_into(k, acc, k.mul(f.at(i, j), k.frobenius(point[i], j)));
  return acc;
}

std::vector<UPoly> compose(const Field& k, const UPoly& g, const std::vector<UPoly>& f) {
  UPolyRing R(k);
  std::vector<UPoly> out;
  for (const auto& fi : f) out.push_back(R.compose(g, fi));
  return out;
}

// ---- W and Q-bar -------------------------------------------------------------

InvariantSubspace subspace_from_fW(const UPoly& fW, FieldPtr field) {
  const Field& k = *field;
  const Field& kp = k.base();
  UPolyRing R(k);
  if (fW.degree() < 1) fail(ErrorCode::InvalidArgument, "f_W must have degree at least 1");
  if (fW.lead() != k.one()) fail(ErrorCode::InvalidArgument, "f_W must be monic");
  for (auto c : fW.c)
    if (!k.in_subfield(c)) fail(ErrorCode::NotADivisor, "f_W has a coefficient outside k'");
  if (!R.divides(fW, x_pow_minus_one(k, k.n())))
    fail(ErrorCode::NotADivisor, "f_W = " + R.to_string(fW) + " does not divide x^" + std::to_string(k.n()) + " - 1");

  const Matrix tau = kprime_matrix(k, [&](Elem x) { return k.frobenius(x, 1); });
  const std::uint32_t n = k.n();
  Matrix fw_tau(n, n), power(n, n);
  for (std::uint32_t i = 0; i < n; ++i) power.at(i, i) = kp.one();
  for (std::size_t d = 0; d < fW.c.size(); ++d) {
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t c = 0; c < n; ++c) add_into(kp, fw_tau.at(r, c), kp.mul(fW.c[d], power.at(r, c)));
    power = multiply(kp, tau, power);
  }

  InvariantSubspace W;
  W.field = field;
  W.fW = fW;
  W.nprime = static_cast<std::size_t>(fW.degree());
  W.gW = R.sub(UPoly::monomial(k.one(), W.nprime), fW);
  for (const auto& v : kernel(kp, fw_tau)) W.basis.push_back(elem_from_kprime_vector(k, v));
  if (W.basis.size() != W.nprime)
    fail(ErrorCode::Internal, "dim ker f_W(tau) = " + std::to_string(W.basis.size()) + " differs from deg f_W");

  // Left inverse of the coordinate matrix C (n x n'), read off rref([C | I]).
  Matrix aug(n, W.nprime + n);
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < W.nprime; ++s) aug.at(r, s) = Elem{k.coord(W.basis[s], r)};
    aug.at(r, W.nprime + r) = kp.one();
  }
  auto red = rref(kp, aug);
  W.coords_inverse = Matrix(W.nprime, n);
  for (std::size_t s = 0; s < W.nprime; ++s)
    for (std::uint32_t r = 0; r < n; ++r) W.coords_inverse.at(s, r) = red.m.at(s, W.nprime + r);

  W.tau = Matrix(W.nprime, W.nprime);
  for (std::size_t s = 0; s < W.nprime; ++s) {
    const auto c = W.coordinates(k.frobenius(W.basis[s], 1));
    for (std::size_t r = 0; r < W.nprime; ++r) W.tau.at(r, s) = c[r];
  }
  return W;
}

std::vector<UPoly> monic_divisors_of_xn_minus_1(const Field& k) {
  // Enumerate monic k'-polynomials by degree; n and q are small.
  UPolyRing R(k);
  const UPoly target = x_pow_minus_one(k, k.n());
  std::vector<UPoly> out;
  const std::uint32_t q = k.q();
  for (std::uint32_t d = 1; d <= k.n(); ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Elem> c(d + 1);
      std::uint64_t rest = code;
      for (std::uint32_t i = 0; i < d; ++i, rest /= q) c[i] = Elem{static_cast<std::uint32_t>(rest % q)};
      c[d] = k.one();
      UPoly f(std::move(c));
      if (R.divides(f, target)) out.push_back(std::move(f));
    }
  }
  return out;
}

RingPtr linear_ring(FieldPtr field, std::size_t m, std::size_t nprime) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < nprime; ++j) vars.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
  return Ring::make(std::move(field), Level::K, std::move(vars));
}

PolySystem build_Qbar(const InvariantSubspace& W, std::size_t m) {
  const Field& k = *W.field;
  const RingPtr S = linear_ring(W.field, m, W.nprime);
  PolySystem out{S, {}};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < W.nprime; ++j) {
      Exponents e(S->nvars(), 0);
      e[i * W.nprime + j] = k.q();
      MultiPoly rel = MultiPoly::monomial(S, e, k.one());
      rel = sub(rel, to_multipoly(step_of_variable(W, m, i, j), S));
      out.polys.push_back(std::move(rel));
    }
  return out;
}

LinearForm frobenius_step(const LinearForm& f, const InvariantSubspace& W) {
  const Field& k = *W.field;
  if (f.nprime != W.nprime) fail(ErrorCode::InvalidArgument, "form and subspace disagree on n'");
  LinearForm out = LinearForm::zero(f.m, f.nprime);
  for (std::size_t i = 0; i < f.m; ++i)
    for (std::size_t j = 0; j < f.nprime; ++j) {
      const Elem b = f.at(i, j);
      if (b.is_zero()) continue;
      const Elem bq = k.frobenius(b, 1);
      if (j + 1 < f.nprime) {
        add_into(k, out.at(i, j + 1), bq);
      } else {
        for (std::size_t s = 0; s < f.nprime; ++s) add_into(k, out.at(i, s), k.mul(bq, W.gW.coeff(s)));
      }
    }
  return out;
}

LinearForm lcompose_reduce(const UPoly& g, const LinearForm& f, const InvariantSubspace& W) {
  const Field& k = *W.field;
  LinearForm acc = LinearForm::zero(f.m, f.nprime);
  LinearForm cur = f;
  for (std::size_t j = 0; j < g.c.size(); ++j) {
    if (!g.c[j].is_zero()) acc = add(k, acc, scale(k, cur, g.c[j]));
    if (j + 1 < g.c.size()) cur = frobenius_step(cur, W);
  }
  return acc;
}

LinearForm reduce_to_form(const LinearizedPoly& f, const InvariantSubspace& W) {
  UPolyRing R(*W.field);
  std::vector<UPoly> parts;
  for (std::size_t i = 0; i < f.m; ++i) parts.push_back(R.rem(f.component(i), W.fW));
  return ell_op(parts, W.nprime);
}

// ---- Bezout ------------------------------------------------------------------

BezoutPair bezout(const Field& k, const UPoly& f0, const UPoly& fW) {
  UPolyRing R(k);
  auto bz = R.xgcd(f0, fW);
  if (bz.g != R.one()) fail(ErrorCode::NotCoprime, "gcd(f0, f_W) = " + R.to_string(bz.g));
  UPoly A = R.rem(bz.s, fW);
  auto [B, r] = R.divmod(R.sub(R.one(), R.mul(A, f0)), fW);
  if (!r.is_zero()) fail(ErrorCode::Internal, "Bezout identity failed to close");
  return {std::move(A), std::move(B)};
}

BezoutPair skew_bezout(const Field& k, const UPoly& f0, const UPoly& fW) {
  UPolyRing R(k);
  auto bz = R.skew_xgcd(f0, fW);
  if (bz.g != R.one()) fail(ErrorCode::NotCoprime, "right gcd(f0, f_W) = " + R.to_string(bz.g));
  return {std::move(bz.s), std::move(bz.t)};
}

UPoly skew_right_gcd(const Field& k, const std::vector<UPoly>& polys) {
  UPolyRing R(k);
  UPoly g;
  for (const auto& p : polys) g = g.is_zero() ? (p.is_zero() ? p : R.monic(p)) : R.skew_xgcd(g, p).g;
  return g;
}

// ---- stage structure -----------------------------------------------------------

StageStructure stage_structure(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W, std::size_t m) {
  const Field& k = *W.field;
  check_system(k, F, m);
  StageStructure st;
  PolySystem Q = build_Qbar(W, m);
  const RingPtr S = Q.ring;
  st.Gbar.ring = S;
  for (const auto& f : F) {
    st.Fbar.push_back(reduce_to_form(f, W));
    if (!st.Fbar.back().is_zero()) st.Gbar.polys.push_back(to_multipoly(st.Fbar.back(), S));
  }
  for (auto& rel : Q.polys) st.Gbar.polys.push_back(std::move(rel));

  const DegreeSpan span = span_closure(st.Gbar, k.q());
  const std::size_t nv = S->nvars();
  Matrix forms(0, nv);
  for (std::size_t r = 0; r < span.basis.rows(); ++r) {
    if (total_degree(span.monomials[span.pivots[r]]) > 1) continue;
    std::vector<Elem> row(nv);
    for (std::size_t c = 0; c < span.basis.cols(); ++c) {
      const Elem x = span.basis.at(r, c);
      if (x.is_zero()) continue;
      const auto& e = span.monomials[c];
      const auto it = std::find(e.begin(), e.end(), 1u);
      if (total_degree(e) != 1) fail(ErrorCode::Internal, "degree-one span row has a constant term");
      row[static_cast<std::size_t>(it - e.begin())] = x;
    }
    forms.append_row(row);
  }
  // Stage-echelon form: leftmost pivots put stage-0 pivots first, so the rows
  // with pivot stage >= r span V ∩ S_{1r}.
  const auto red = rref(k, forms);
  for (std::size_t r = 0; r < red.m.rows(); ++r) {
    LinearForm f = LinearForm::zero(m, W.nprime);
    f.b = red.m.row(r);
    st.ann.push_back(std::move(f));
    st.ann_stage.push_back(red.pivots[r] / W.nprime);
  }
  for (std::size_t s : st.ann_stage)
    if (s + 1 < m && (st.N.empty() || st.N.back() != s)) st.N.push_back(s);
  return st;
}

ReducibilityResult reducibility_check(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W, std::size_t m,
                                      const SearchOptions& options) {
  const Field& k = *W.field;
  check_q(k, options);
  UPolyRing R(k);
  ReducibilityResult res;
  res.structure = stage_structure(F, W, m);
  const auto& st = res.structure;
  std::mt19937_64 rng(options.seed);

  for (std::size_t r : st.N) {
    std::vector<const LinearForm*> rows;
    for (std::size_t idx = 0; idx < st.ann.size(); ++idx)
      if (st.ann_stage[idx] == r) rows.push_back(&st.ann[idx]);
    const std::size_t d = rows.size();

    auto combine = [&](const std::vector<Elem>& lambda) {
      LinearForm f = LinearForm::zero(m, W.nprime);
      for (std::size_t s = 0; s < d; ++s)
        if (!lambda[s].is_zero()) f = add(k, f, scale(k, *rows[s], lambda[s]));
      return f;
    };
    std::optional<LinearForm> found;
    auto try_lambda = [&](const std::vector<Elem>& lambda) {
      LinearForm f = combine(lambda);
      if (skew_coprime(R, f.component(r), W.fW)) found = std::move(f);
      return found.has_value();
    };

    for (std::size_t s = 0; s < d && !found; ++s) {
      std::vector<Elem> lambda(d);
      lambda[s] = k.one();
      try_lambda(lambda);
    }
    for (std::size_t draw = 0; draw < options.random_draws && !found; ++draw) {
      std::vector<Elem> lambda(d);
      for (auto& x : lambda) x = k.random(rng);
      try_lambda(lambda);
    }
    if (!found) {
      const std::size_t kdim = d * k.n();
      if (kdim > options.exhaustive_dim_cap && options.exact_fallback) {
        std::vector<UPoly> parts{W.fW};
        for (const auto* row : rows) parts.push_back(row->component(r));
        const UPoly dgcd = skew_right_gcd(k, parts);
        if (dgcd != R.one()) {
          res.reducible = false;
          res.failed_stage = r;
          res.detail = "stage " + std::to_string(r) + ": the stage projection lies in the left ideal of " +
                       R.to_string(dgcd) + ", so no component is coprime to f_W";
          return res;
        }
        fail(ErrorCode::Internal, "stage projection generates the unit ideal but holds no witness");
      }
      if (kdim > options.exhaustive_dim_cap)
        fail(ErrorCode::SearchBudgetExceeded, "stage " + std::to_string(r) + ": no witness in " +
                                                  std::to_string(options.random_draws) +
                                                  " draws and the stage projection has k'-dimension " +
                                                  std::to_string(kdim));
      std::vector<Elem> lambda(d);
      for (;;) {
        if (try_lambda(lambda)) break;
        std::size_t pos = 0;
        while (pos < d && lambda[pos].index() + 1 == k.size()) lambda[pos++] = Elem{};
        if (pos == d) break;
        lambda[pos] = Elem{lambda[pos].index() + 1};
      }
    }
    if (!found) {
      res.reducible = false;
      res.failed_stage = r;
      res.detail = "stage " + std::to_string(r) + ": every form of V ∩ S_1," + std::to_string(r) +
                   " has a stage component sharing a right factor with f_W";
      return res;
    }
    StageWitness w;
    w.stage = r;
    w.leading = found->component(r);
    w.poly = LinearizedPoly::zero(m, W.nprime);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < W.nprime; ++j) w.poly.coeffs[i][j] = found->at(i, j);
    w.form = std::move(*found);
    res.witnesses.push_back(std::move(w));
  }
  return res;
}

StageElimination eliminate_stage(const StageWitness& witness, const InvariantSubspace& W) {
  const Field& k = *W.field;
  const std::size_t r = witness.stage, np = W.nprime;
  if (!witness.form.in_stage(r)) fail(ErrorCode::InvalidArgument, "witness is not in S_1,stage");
  StageElimination el;
  el.stage = r;
  try {
    auto bz = skew_bezout(k, witness.form.component(r), W.fW);
    el.A = std::move(bz.A);
    el.B = std::move(bz.B);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotCoprime) throw;
    fail(ErrorCode::GcdConditionFailed, "stage " + std::to_string(r) + ": " + e.what());
  }
  // A (*) g_rr = 1 mod f_W, so L(A) o f reduces to x_{r0} + (later stages).
  LinearForm fp = lcompose_reduce(el.A, witness.form, W);
  for (std::size_t j = 0; j < np; ++j)
    if (fp.at(r, j) != (j == 0 ? k.one() : Elem{}))
      fail(ErrorCode::Internal, "L(A) o f does not isolate x_" + std::to_string(r) + "0");
  fp.at(r, 0) = Elem{};
  LinearForm ell = scale(k, fp, k.neg(k.one()));
  for (std::size_t j = 0; j < np; ++j) {
    el.ell.push_back(ell);
    if (j + 1 < np) ell = frobenius_step(ell, W);
  }
  return el;
}

// ---- solvers -------------------------------------------------------------------

namespace {

std::vector<Elem> kernel_elements(const Field& k, const UPoly& g) {
  const Matrix M = kprime_matrix(k, [&](Elem x) {
    Elem acc{};
    for (std::size_t j = 0; j < g.c.size(); ++j) add_into(k, acc, k.mul(g.c[j], k.frobenius(x, j)));
    return acc;
  });
  std::vector<Elem> out;
  for (const auto& v : kernel(k.base(), M)) out.push_back(elem_from_kprime_vector(k, v));
  return out;
}

}  // namespace

SolutionBasis solve_structured(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W, std::size_t m,
                               const SearchOptions& options) {
  const Field& k = *W.field;
  check_q(k, options);
  check_system(k, F, m);
  const std::size_t np = W.nprime;
  SolutionBasis sol;
  sol.m = m;
  sol.method = "structured";

  std::vector<std::optional<std::vector<LinearForm>>> gamma(m);
  std::vector<LinearForm> Fbar;
  if (m == 1) {
    for (const auto& f : F) Fbar.push_back(reduce_to_form(f, W));
  } else {
    auto rc = reducibility_check(F, W, m, options);
    if (!rc.reducible) fail(ErrorCode::NotReducible, rc.detail);
    Fbar = rc.structure.Fbar;
    sol.N = rc.structure.N;
    for (const auto& w : rc.witnesses) sol.trace.push_back(eliminate_stage(w, W));
    // Back-substitution from the last eliminated stage down.
    for (auto it = sol.trace.rbegin(); it != sol.trace.rend(); ++it) {
      for (const auto& l : it->ell) it->gamma.push_back(substitute_stages(k, l, gamma));
      gamma[it->stage] = it->gamma;
    }
  }
  for (std::size_t s = 0; s < m; ++s)
    if (!gamma[s]) sol.free_stages.push_back(s);

  for (const auto& f : Fbar) sol.H.push_back(substitute_stages(k, f, gamma));
  for (const auto& el : sol.trace)
    for (std::size_t j = 0; j < np; ++j) {
      const LinearForm lhs = frobenius_step(el.gamma[j], W);
      const LinearForm rhs = substitute_stages(k, step_of_variable(W, m, el.stage, j), gamma);
      sol.H.push_back(form_sub(k, lhs, rhs));
    }
  std::vector<UPoly> parts{W.fW};
  for (const auto& h : sol.H) {
    if (h.first_stage() < m - 1)
      fail(ErrorCode::Internal, "pushed-down form involves stage " + std::to_string(h.first_stage()));
    parts.push_back(h.component(m - 1));
  }
  sol.g = skew_right_gcd(k, parts);

  const auto last = kernel_elements(k, sol.g);
  if (last.size() != static_cast<std::size_t>(sol.g.degree()))
    fail(ErrorCode::Internal, "dim ker L(g) differs from deg g");
  for (auto v : last)
    if (!W.contains(v)) fail(ErrorCode::Internal, "ker L(g) leaves W");

  auto complete = [&](std::vector<Elem> point) {
    for (auto it = sol.trace.rbegin(); it != sol.trace.rend(); ++it)
      point[it->stage] = evaluate(k, it->gamma[0], point);
    return point;
  };
  for (std::size_t s : sol.free_stages) {
    const std::vector<Elem>& values = s + 1 == m ? last : W.basis;
    for (auto v : values) {
      std::vector<Elem> point(m);
      point[s] = v;
      sol.generators.push_back(complete(std::move(point)));
    }
  }
  return sol;
}

SolutionBasis brute_force_solve(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W, std::size_t m) {
  const Field& k = *W.field;
  const Field& kp = k.base();
  check_system(k, F, m);
  const std::size_t np = W.nprime;
  Matrix M(0, m * np);
  for (const auto& f : F) {
    std::vector<std::vector<Elem>> rows(k.n(), std::vector<Elem>(m * np));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t s = 0; s < np; ++s) {
        const Elem val = evaluate(k, f, i, W.basis[s]);
        for (std::uint32_t r = 0; r < k.n(); ++r) rows[r][i * np + s] = Elem{k.coord(val, r)};
      }
    for (const auto& row : rows) M.append_row(row);
  }
  SolutionBasis sol;
  sol.m = m;
  sol.method = "oracle";
  sol.reducible = false;
  for (const auto& v : kernel(kp, M)) {
    std::vector<Elem> point(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t s = 0; s < np; ++s) add_into(k, point[i], k.mul(v[i * np + s], W.basis[s]));
    sol.generators.push_back(std::move(point));
  }
  return sol;
}

std::vector<std::vector<Elem>> enumerate_solutions(const std::vector<LinearizedPoly>& F, const InvariantSubspace& W,
                                                   std::size_t m, std::uint64_t limit) {
  const Field& k = *W.field;
  check_system(k, F, m);
  const std::size_t np = W.nprime, digits = m * np;
  std::uint64_t total = 1;
  for (std::size_t d = 0; d < digits; ++d) {
    total *= k.q();
    if (total > limit) fail(ErrorCode::SearchBudgetExceeded, "q^(m n') exceeds the enumeration limit");
  }
  // Every element of W as a k'-combination of the basis.
  std::vector<Elem> elems(1, Elem{});
  for (std::size_t s = 0; s < np; ++s) {
    std::vector<Elem> next;
    for (std::uint32_t c = 0; c < k.q(); ++c)
      for (auto x : elems) next.push_back(k.add(x, k.mul(Elem{c}, W.basis[s])));
    elems = std::move(next);
  }
  std::vector<std::vector<Elem>> out;
  std::vector<std::size_t> pos(m, 0);
  for (;;) {
    std::vector<Elem> point(m);
    for (std::size_t i = 0; i < m; ++i) point[i] = elems[pos[i]];
    if (std::all_of(F.begin(), F.end(), [&](const LinearizedPoly& f) { return evaluate(k, f, point).is_zero(); }))
      out.push_back(std::move(point));
    std::size_t i = 0;
    while (i < m && pos[i] + 1 == elems.size()) pos[i++] = 0;
    if (i == m) break;
    ++pos[i];
  }
  return out;
}

std::size_t kprime_rank(const Field& k, const std::vector<std::vector<Elem>>& vectors) {
  if (vectors.empty()) return 0;
  const std::size_t m = vectors.front().size();
  Matrix M(0, m * k.n());
  for (const auto& v : vectors) {
    if (v.size() != m) fail(ErrorCode::InvalidArgument, "points of different lengths");
    std::vector<Elem> row;
    for (auto x : v)
      for (auto c : kprime_vector(k, x)) row.push_back(c);
    M.append_row(row);
  }
  return rank(k.base(), M);
}

bool in_span(const Field& k, const std::vector<std::vector<Elem>>& basis, const std::vector<Elem>& v) {
  auto all = basis;
  all.push_back(v);
  return kprime_rank(k, all) == kprime_rank(k, basis);
}

bool same_subspace(const Field& k, const std::vector<std::vector<Elem>>& a, const std::vector<std::vector<Elem>>& b) {
  auto all = a;
  all.insert(all.end(), b.begin(), b.end());
  const std::size_t ra = kprime_rank(k, a), rb = kprime_rank(k, b);
  return ra == rb && kprime_rank(k, all) == ra;
}

}  // namespace weil
