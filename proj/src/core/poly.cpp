#include "poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "error.hpp"

namespace weil {

std::uint32_t total_degree(const Exponents& e) {
  std::uint32_t d = 0;
  for (auto v : e) d += v;
  return d;
}

int compare_monomials(const Exponents& a, const Exponents& b, MonomialOrder order) {
  const auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  const std::size_t n = a.size();
  if (order == MonomialOrder::Grevlex) {
    for (std::size_t i = n; i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::shared_ptr<const Ring> Ring::make(FieldPtr field, Level level, std::vector<std::string> vars) {
  if (!field) fail(ErrorCode::InvalidArgument, "ring needs a field");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) fail(ErrorCode::InvalidArgument, "empty variable name");
    if (!seen.insert(v).second) fail(ErrorCode::InvalidArgument, "duplicate variable name " + v);
  }
  std::shared_ptr<Ring> r(new Ring());
  r->field_ = std::move(field);
  r->level_ = level;
  r->vars_ = std::move(vars);
  return r;
}

std::optional<std::size_t> Ring::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

std::vector<std::string> numbered_vars(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

MultiPoly MultiPoly::constant(RingPtr ring, Elem c) {
  MultiPoly f(ring);
  f.add_term(Exponents(ring->nvars(), 0), c);
  return f;
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->nvars()) fail(ErrorCode::InvalidArgument, "variable index out of range");
  Exponents e(ring->nvars(), 0);
  e[i] = 1;
  MultiPoly f(ring);
  f.add_term(e, ring->field().one());
  return f;
}

MultiPoly MultiPoly::monomial(RingPtr ring, Exponents e, Elem c) {
  if (e.size() != ring->nvars()) fail(ErrorCode::InvalidArgument, "exponent vector length mismatch");
  MultiPoly f(ring);
  f.add_term(e, c);
  return f;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return kNegInfDegree;
  // Grevlex descending puts a term of maximal degree first.
  return static_cast<int>(total_degree(terms_.begin()->first));
}

Elem MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Elem{} : it->second;
}

void MultiPoly::add_term(const Exponents& e, Elem c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = ring_->field().add(it->second, c);
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly::Terms::const_iterator MultiPoly::leading(MonomialOrder order) const {
  if (order == MonomialOrder::Grevlex) return terms_.begin();
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it)
    if (compare_monomials(it->first, best->first, order) > 0) best = it;
  return best;
}

namespace {

void check_same_ring(const MultiPoly& a, const MultiPoly& b) {
  if (!a.ring() || !b.ring()) fail(ErrorCode::RingMismatch, "polynomial without a ring");
  if (a.ring() != b.ring() && !(*a.ring() == *b.ring()))
    fail(ErrorCode::RingMismatch, "polynomials belong to different rings");
}

}  // namespace

MultiPoly add(const MultiPoly& a, const MultiPoly& b) {
  check_same_ring(a, b);
  MultiPoly out = a;
  for (const auto& [e, c] : b.terms()) out.add_term(e, c);
  return out;
}

MultiPoly neg(const MultiPoly& a) {
  MultiPoly out(a.ring());
  for (const auto& [e, c] : a.terms()) out.add_term(e, a.ring()->field().neg(c));
  return out;
}

MultiPoly sub(const MultiPoly& a, const MultiPoly& b) { return add(a, neg(b)); }

MultiPoly scale(const MultiPoly& a, Elem s) {
  MultiPoly out(a.ring());
  if (s.is_zero()) return out;
  for (const auto& [e, c] : a.terms()) out.add_term(e, a.ring()->field().mul(c, s));
  return out;
}

MultiPoly mul_term(const MultiPoly& a, const Exponents& m, Elem s) {
  MultiPoly out(a.ring());
  if (s.is_zero()) return out;
  const Field& f = a.ring()->field();
  Exponents e(m.size());
  for (const auto& [ea, c] : a.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) e[i] = ea[i] + m[i];
    out.add_term(e, f.mul(c, s));
  }
  return out;
}

MultiPoly mul(const MultiPoly& a, const MultiPoly& b) {
  check_same_ring(a, b);
  const Field& f = a.ring()->field();
  MultiPoly out(a.ring());
  Exponents e(a.ring()->nvars());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, f.mul(ca, cb));
    }
  return out;
}

MultiPoly pow(const MultiPoly& a, std::uint32_t k) {
  MultiPoly result = MultiPoly::constant(a.ring(), a.ring()->field().one());
  MultiPoly base = a;
  while (k) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& images) {
  const std::size_t n = f.ring()->nvars();
  if (images.size() < n) fail(ErrorCode::UnassignedVariable, "variable " + f.ring()->vars()[images.size()] + " is unassigned");
  RingPtr target;
  for (std::size_t i = 0; i < n; ++i) {
    if (!images[i].ring()) fail(ErrorCode::UnassignedVariable, "variable " + f.ring()->vars()[i] + " is unassigned");
    if (!target) target = images[i].ring();
    else check_same_ring(images[0], images[i]);
  }
  if (!target) {
    // No variables: f is a constant, carried over unchanged.
    return f;
  }
  // Cache powers per variable.
  std::vector<std::vector<MultiPoly>> powers(n);
  auto power = [&](std::size_t i, std::uint32_t k) -> const MultiPoly& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(MultiPoly::constant(target, target->field().one()));
    while (v.size() <= k) v.push_back(mul(v.back(), images[i]));
    return v[k];
  };
  MultiPoly out(target);
  for (const auto& [e, c] : f.terms()) {
    MultiPoly term = MultiPoly::constant(target, c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) term = mul(term, power(i, e[i]));
    out = add(out, term);
  }
  return out;
}

MultiPoly substitute(const MultiPoly& f, const std::map<std::string, MultiPoly>& assignment, RingPtr target) {
  std::vector<MultiPoly> images;
  for (const auto& v : f.ring()->vars()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) fail(ErrorCode::UnassignedVariable, "variable " + v + " is unassigned");
    if (!(*it->second.ring() == *target)) fail(ErrorCode::RingMismatch, "image of " + v + " is not in the target ring");
    images.push_back(it->second);
  }
  if (images.empty()) return relevel(f, target);
  return substitute(f, images);
}

MultiPoly apply_sigma(const MultiPoly& f, std::uint64_t i) {
  const Field& field = f.ring()->field();
  MultiPoly out(f.ring());
  for (const auto& [e, c] : f.terms()) out.add_term(e, field.frobenius(c, i));
  return out;
}

MultiPoly normal_form_field_eqs(const MultiPoly& f, const std::vector<std::optional<ExponentRelation>>& per_var) {
  MultiPoly out(f.ring());
  for (const auto& [e, c] : f.terms()) {
    Exponents r = e;
    for (std::size_t i = 0; i < r.size() && i < per_var.size(); ++i) {
      if (!per_var[i]) continue;
      const auto [a, b] = *per_var[i];
      if (!(a > b && b >= 1)) fail(ErrorCode::InvalidArgument, "exponent relation needs a > b >= 1");
      while (r[i] >= a) r[i] = r[i] - a + b;
    }
    out.add_term(r, c);
  }
  return out;
}

MultiPoly normal_form_field_eqs(const MultiPoly& f, ExponentRelation all_vars) {
  return normal_form_field_eqs(f, std::vector<std::optional<ExponentRelation>>(f.ring()->nvars(), all_vars));
}

bool lies_in_subfield(const MultiPoly& f) {
  const Field& field = f.ring()->field();
  return std::all_of(f.terms().begin(), f.terms().end(), [&](const auto& t) { return field.in_subfield(t.second); });
}

Elem evaluate(const MultiPoly& f, std::span<const Elem> point) {
  const Field& field = f.ring()->field();
  if (point.size() != f.ring()->nvars()) fail(ErrorCode::InvalidArgument, "point has the wrong number of coordinates");
  Elem acc{};
  for (const auto& [e, c] : f.terms()) {
    Elem t = c;
    for (std::size_t i = 0; i < e.size() && !t.is_zero(); ++i)
      if (e[i]) t = field.mul(t, field.pow(point[i], e[i]));
    acc = field.add(acc, t);
  }
  return acc;
}

MultiPoly embed(const MultiPoly& f, RingPtr target, const std::vector<std::size_t>& var_map) {
  if (var_map.size() != f.ring()->nvars()) fail(ErrorCode::InvalidArgument, "variable map has the wrong length");
  if (target->field().spec() != f.ring()->field().spec()) fail(ErrorCode::RingMismatch, "embedding across fields");
  MultiPoly out(target);
  Exponents t(target->nvars());
  for (const auto& [e, c] : f.terms()) {
    std::fill(t.begin(), t.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) t[var_map[i]] += e[i];
    out.add_term(t, c);
  }
  return relevel(out, target);
}

MultiPoly relevel(const MultiPoly& f, RingPtr target) {
  if (target->nvars() != f.ring()->nvars() || target->field().spec() != f.ring()->field().spec())
    fail(ErrorCode::RingMismatch, "relevel needs the same variables and field");
  if (target->level() == Level::KPrime && !lies_in_subfield(f))
    fail(ErrorCode::CoordinateNotInField, "coefficient outside k'");
  MultiPoly out(target);
  for (const auto& [e, c] : f.terms()) out.add_term(e, c);
  return out;
}

int PolySystem::degree() const {
  int d = MultiPoly::kNegInfDegree;
  for (const auto& f : polys) d = std::max(d, f.degree());
  return d;
}

// ---- text form -------------------------------------------------------------

std::string coeff_to_text(const Ring& ring, Elem c) {
  if (ring.level() == Level::KPrime) return ring.field().base().to_string(c);
  return ring.field().to_string(c);
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char ch) {
    skip_ws();
    if (pos < s.size() && s[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!eat(ch)) fail(ErrorCode::ParseError, std::string("expected '") + ch + "' at offset " + std::to_string(pos));
  }
  std::uint32_t number() {
    skip_ws();
    std::size_t start = pos;
    std::uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      if (v > UINT32_MAX) fail(ErrorCode::ParseError, "number too large");
      ++pos;
    }
    if (pos == start) fail(ErrorCode::ParseError, "expected a number at offset " + std::to_string(start));
    return static_cast<std::uint32_t>(v);
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
};

std::uint32_t parse_kprime_coord(Cursor& cur, const Field& field) {
  const std::uint32_t p = field.p(), e = field.e();
  if (e == 1) {
    const auto v = cur.number();
    if (v >= p) fail(ErrorCode::CoordinateNotInField, "coordinate " + std::to_string(v) + " not in GF(" + std::to_string(p) + ")");
    return v;
  }
  cur.expect('(');
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t l = 0; l < e; ++l) {
    if (l) cur.expect(',');
    const auto v = cur.number();
    if (v >= p) fail(ErrorCode::CoordinateNotInField, "digit out of range");
    out += v * scale;
    scale *= p;
  }
  cur.expect(')');
  return out;
}

Elem parse_coeff(Cursor& cur, const Ring& ring) {
  const Field& field = ring.field();
  const std::uint32_t n = ring.level() == Level::KPrime ? 1 : field.n();
  std::vector<std::uint32_t> coords(field.n(), 0);
  cur.expect('(');
  for (std::uint32_t j = 0; j < n; ++j) {
    if (j) cur.expect(',');
    coords[j] = parse_kprime_coord(cur, field);
  }
  cur.expect(')');
  return field.from_coords(coords);
}

}  // namespace

Elem parse_coeff_text(const Ring& ring, std::string_view text) {
  Cursor cur{text};
  Elem c = parse_coeff(cur, ring);
  if (!cur.done()) fail(ErrorCode::ParseError, "trailing characters after coefficient");
  return c;
}

std::string to_text(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  const Ring& ring = *f.ring();
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += coeff_to_text(ring, c);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += ' ';
      mono += ring.vars()[i];
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    if (!mono.empty()) out += " * " + mono;
  }
  return out;
}

MultiPoly parse_poly_text(const RingPtr& ring, std::string_view text) {
  Cursor cur{text};
  MultiPoly out(ring);
  if (cur.eat('0')) {
    if (!cur.done()) fail(ErrorCode::ParseError, "unexpected text after 0");
    return out;
  }
  for (;;) {
    const Elem c = parse_coeff(cur, *ring);
    Exponents e(ring->nvars(), 0);
    if (cur.eat('*')) {
      // Monomial: space-separated name[^exp] tokens up to '+' or end.
      bool any = false;
      for (;;) {
        cur.skip_ws();
        if (cur.pos >= cur.s.size() || cur.s[cur.pos] == '+') break;
        std::size_t start = cur.pos;
        while (cur.pos < cur.s.size() && !std::isspace(static_cast<unsigned char>(cur.s[cur.pos])) &&
               cur.s[cur.pos] != '^' && cur.s[cur.pos] != '+')
          ++cur.pos;
        const auto name = cur.s.substr(start, cur.pos - start);
        const auto idx = ring->var_index(name);
        if (!idx) fail(ErrorCode::ParseError, "unknown variable '" + std::string(name) + "'");
        std::uint32_t k = 1;
        if (cur.pos < cur.s.size() && cur.s[cur.pos] == '^') {
          ++cur.pos;
          k = cur.number();
        }
        e[*idx] += k;
        any = true;
      }
      if (!any) fail(ErrorCode::ParseError, "empty monomial after '*'");
    }
    out.add_term(e, c);
    if (cur.done()) break;
    cur.expect('+');
  }
  return out;
}

}  // namespace weil
