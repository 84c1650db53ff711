#include "groebner.hpp"

#include <algorithm>

#include "error.hpp"
#include "monomial.hpp"

namespace weil {

namespace {

struct Term {
  Exponents e;
  Elem c;
};

// Terms sorted descending in the working order.
using GPoly = std::vector<Term>;

struct Ctx {
  const Field& field;
  MonomialOrder order;

  bool greater(const Exponents& a, const Exponents& b) const { return compare_monomials(a, b, order) > 0; }

  GPoly from(const MultiPoly& f) const {
    GPoly g;
    for (const auto& [e, c] : f.terms()) g.push_back({e, c});
    std::sort(g.begin(), g.end(), [&](const Term& a, const Term& b) { return greater(a.e, b.e); });
    return g;
  }

  // p - s * x^m * g
  GPoly sub_shifted(const GPoly& p, Elem s, const Exponents& m, const GPoly& g) const {
    GPoly out;
    out.reserve(p.size() + g.size());
    std::size_t i = 0, j = 0;
    const Elem ns = field.neg(s);
    Exponents t(m.size());
    auto shifted = [&](std::size_t k) {
      for (std::size_t v = 0; v < m.size(); ++v) t[v] = g[k].e[v] + m[v];
      return t;
    };
    while (i < p.size() || j < g.size()) {
      if (j == g.size()) {
        out.push_back(p[i++]);
        continue;
      }
      const Exponents& tj = shifted(j);
      if (i == p.size() || greater(tj, p[i].e)) {
        out.push_back({tj, field.mul(ns, g[j].c)});
        ++j;
      } else if (greater(p[i].e, tj)) {
        out.push_back(p[i++]);
      } else {
        const Elem c = field.add(p[i].c, field.mul(ns, g[j].c));
        if (!c.is_zero()) out.push_back({p[i].e, c});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void make_monic(GPoly& g) const {
    if (g.empty()) return;
    const Elem inv = field.inv(g.front().c);
    for (auto& t : g) t.c = field.mul(t.c, inv);
  }

  // Full reduction of p by the polynomials in basis.
  GPoly reduce(GPoly p, const std::vector<const GPoly*>& basis) const {
    GPoly rem;
    Exponents m;
    while (!p.empty()) {
      const GPoly* hit = nullptr;
      for (const GPoly* g : basis)
        if (divides(g->front().e, p.front().e)) {
          hit = g;
          break;
        }
      if (!hit) {
        rem.push_back(p.front());
        p.erase(p.begin());
        continue;
      }
      m.assign(p.front().e.size(), 0);
      for (std::size_t v = 0; v < m.size(); ++v) m[v] = p.front().e[v] - hit->front().e[v];
      p = sub_shifted(p, field.div(p.front().c, hit->front().c), m, *hit);
    }
    return rem;
  }
};

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool disjoint(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

struct Pair {
  std::size_t i, j;
  Exponents lcm;
};

MultiPoly to_multi(const RingPtr& ring, const GPoly& g) {
  MultiPoly f(ring);
  for (const auto& t : g) f.add_term(t.e, t.c);
  return f;
}

}  // namespace

std::vector<Exponents> GroebnerBasis::leading_monomials() const {
  std::vector<Exponents> out;
  for (const auto& g : gens) out.push_back(g.leading(order)->first);
  return out;
}

std::uint32_t GroebnerBasis::max_degree() const {
  int d = 0;
  for (const auto& g : gens) d = std::max(d, g.degree());
  return static_cast<std::uint32_t>(d);
}

GroebnerBasis groebner_toy(const PolySystem& F, const GroebnerOptions& options) {
  const RingPtr& ring = F.ring;
  Ctx ctx{ring->field(), options.order};
  std::vector<GPoly> polys;             // every polynomial ever added
  std::vector<std::size_t> basis;       // indices into polys currently in G
  std::vector<Pair> pairs;
  std::uint64_t steps = 0;

  auto lm = [&](std::size_t k) -> const Exponents& { return polys[k].front().e; };

  auto update = [&](std::size_t h) {
    // Gebauer-Moeller installation of the new element h.
    std::vector<Pair> C;
    for (auto g : basis) C.push_back({g, h, lcm(lm(g), lm(h))});
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = disjoint(lm(p.i), lm(h));
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (divides(C[b].lcm, p.lcm)) keep = false;
        for (const auto& d : D)
          if (keep && divides(d.lcm, p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> E;
    for (auto& p : D)
      if (!disjoint(lm(p.i), lm(h))) E.push_back(std::move(p));
    std::vector<Pair> kept;
    for (auto& p : pairs) {
      const bool drop = divides(lm(h), p.lcm) && lcm(lm(p.i), lm(h)) != p.lcm && lcm(lm(h), lm(p.j)) != p.lcm;
      if (!drop) kept.push_back(std::move(p));
    }
    for (auto& p : E) kept.push_back(std::move(p));
    pairs = std::move(kept);
    std::vector<std::size_t> nb;
    for (auto g : basis)
      if (!divides(lm(h), lm(g))) nb.push_back(g);
    nb.push_back(h);
    basis = std::move(nb);
  };

  auto current = [&]() {
    std::vector<const GPoly*> out;
    for (auto g : basis) out.push_back(&polys[g]);
    return out;
  };

  for (const auto& f : F.polys) {
    if (f.is_zero()) continue;
    GPoly g = ctx.reduce(ctx.from(f), current());
    if (g.empty()) continue;
    ctx.make_monic(g);
    polys.push_back(std::move(g));
    update(polys.size() - 1);
  }

  while (!pairs.empty()) {
    // Normal selection strategy: smallest lcm first.
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      return compare_monomials(a.lcm, b.lcm, options.order) < 0;
    });
    Pair p = std::move(*best);
    pairs.erase(best);
    if (++steps > options.step_budget)
      fail(ErrorCode::StepBudgetExceeded, "Buchberger step budget of " + std::to_string(options.step_budget) + " exhausted");
    const GPoly& a = polys[p.i];
    const GPoly& b = polys[p.j];
    Exponents ma(p.lcm.size()), mb(p.lcm.size());
    for (std::size_t v = 0; v < ma.size(); ++v) {
      ma[v] = p.lcm[v] - a.front().e[v];
      mb[v] = p.lcm[v] - b.front().e[v];
    }
    // Both inputs are monic.
    GPoly s = ctx.sub_shifted(ctx.sub_shifted({}, ctx.field.neg(ctx.field.one()), ma, a), ctx.field.one(), mb, b);
    GPoly r = ctx.reduce(std::move(s), current());
    if (r.empty()) continue;
    ctx.make_monic(r);
    polys.push_back(std::move(r));
    update(polys.size() - 1);
  }

  // Minimalize, then inter-reduce.
  std::vector<std::size_t> minimal;
  for (auto g : basis) {
    bool redundant = false;
    for (auto h : basis)
      if (h != g && divides(lm(h), lm(g)) && (lm(h) != lm(g) || h < g)) redundant = true;
    if (!redundant) minimal.push_back(g);
  }
  std::vector<GPoly> reduced;
  for (auto g : minimal) {
    std::vector<const GPoly*> others;
    for (auto h : minimal)
      if (h != g) others.push_back(&polys[h]);
    GPoly head{polys[g].front()};
    GPoly tail(polys[g].begin() + 1, polys[g].end());
    GPoly rt = ctx.reduce(std::move(tail), others);
    head.insert(head.end(), rt.begin(), rt.end());
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const GPoly& a, const GPoly& b) { return ctx.greater(b.front().e, a.front().e); });

  GroebnerBasis G;
  G.ring = ring;
  G.order = options.order;
  for (const auto& g : reduced) G.gens.push_back(to_multi(ring, g));
  return G;
}

MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& G) {
  Ctx ctx{G.ring->field(), G.order};
  std::vector<GPoly> gs;
  for (const auto& g : G.gens) gs.push_back(ctx.from(g));
  std::vector<const GPoly*> ptrs;
  for (const auto& g : gs) ptrs.push_back(&g);
  return to_multi(G.ring, ctx.reduce(ctx.from(f), ptrs));
}

bool ideal_contains(const GroebnerBasis& G, const MultiPoly& f) { return normal_form(f, G).is_zero(); }

std::uint64_t monomial_count_up_to(std::size_t nvars, std::uint32_t j) {
  // C(nvars + j, nvars)
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= nvars; ++i) r = r * (j + i) / i;
  return r;
}

std::vector<std::uint64_t> standard_monomial_counts(const GroebnerBasis& G, std::uint32_t max_j) {
  const std::size_t n = G.ring->nvars();
  const auto leads = G.leading_monomials();
  std::vector<std::uint64_t> out(max_j + 1, 0);
  std::uint64_t running = 0;
  for (std::uint32_t d = 0; d <= max_j; ++d) {
    for (const auto& m : monomials_of_degree(n, d, MonomialOrder::Grevlex)) {
      bool standard = true;
      for (const auto& l : leads)
        if (divides(l, m)) {
          standard = false;
          break;
        }
      if (standard) ++running;
    }
    out[d] = running;
  }
  return out;
}

std::uint64_t ideal_truncation_dim(const GroebnerBasis& G, std::uint32_t j) {
  return monomial_count_up_to(G.ring->nvars(), j) - standard_monomial_counts(G, j)[j];
}

}  // namespace weil
