// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "campaign.hpp"
#include "descent.hpp"
#include "error.hpp"
#include "falldeg.hpp"
#include "groebner.hpp"
#include "linsys.hpp"
#include "support.hpp"

using namespace weil;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string summary(const CampaignResult& r) {
  return std::to_string(r.rows.size()) + " rows, " + std::to_string(r.passed) + " pass, " + std::to_string(r.failed) +
         " fail, " + std::to_string(r.inconclusive) + " inconclusive";
}

Verdict campaign_criterion(const std::string& kind, const Json& config, std::size_t min_rows, double min_certified,
                           double budget_seconds) {
  const auto t0 = Clock::now();
  const auto r = run_campaign(kind, config);
  const double secs = seconds_since(t0);
  const std::size_t certified = r.rows.size() - r.inconclusive;
  Verdict v;
  v.pass = r.rows.size() >= min_rows && r.failed == 0 &&
           static_cast<double>(certified) >= min_certified * static_cast<double>(r.rows.size()) &&
           secs <= budget_seconds;
  v.detail = summary(r) + ", " + std::to_string(secs).substr(0, 6) + " s";
  return v;
}

template <class Rng>
PolySystem random_system(const RingPtr& ring, std::size_t count, std::uint32_t degree, Rng& rng) {
  PolySystem F{ring, {}};
  for (std::size_t j = 0; j < count; ++j) F.polys.push_back(oracle::random_nonzero_poly(ring, degree, rng));
  return F;
}

Verdict span_oracle(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t systems = 0, mismatches = 0;
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t nvars = 1; nvars <= 4; ++nvars)
      for (int rep = 0; rep < 7; ++rep) {
        auto ring = Ring::make(Field::make(p, 1, 1 + rep % 2), Level::K, numbered_vars("X", nvars));
        const auto F = random_system(ring, 1 + rep % 3, 1 + rep % 3, rng);
        ++systems;
        for (std::uint32_t i = 0; i <= 5; ++i)
          if (span_closure(F, i).dim() != oracle::naive_closure_dim(F, i)) ++mismatches;
      }
  return {systems >= 50 && mismatches == 0,
          std::to_string(systems) + " systems, " + std::to_string(mismatches) + " mismatches"};
}

Verdict bijection(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto k = Field::make(2, 1, 2);
  auto ctx = DescentContext::make(k, 1);
  std::size_t bad = 0, trials = 0;
  for (; trials < 60; ++trials) {
    const auto F = random_system(ctx.source_ring(), 1 + trials % 2, 2, rng);
    const auto z = oracle::count_zeros(F, oracle::all_elements(*k));
    const auto z1 = oracle::count_zeros(build_F1(F, ctx), oracle::all_elements(*k));
    const auto zp = oracle::count_zeros(build_Fprime1(F, ctx), oracle::subfield_elements(*k));
    if (z1 != z || zp != z) ++bad;
  }
  return {bad == 0, std::to_string(trials) + " systems, " + std::to_string(bad) + " count mismatches"};
}

// ---- property suites -------------------------------------------------------------

struct Property {
  std::string name;
  std::function<std::string(std::mt19937_64&)> run;  // empty string: pass
};

std::string field_axioms(std::mt19937_64& rng) {
  for (auto [p, e, n] : std::vector<std::tuple<int, int, int>>{{2, 1, 2}, {2, 1, 5}, {3, 1, 2}, {2, 2, 3}, {5, 1, 2}}) {
    auto k = Field::make(p, e, n);
    for (int t = 0; t < 3000; ++t) {
      const Elem a = k->random(rng), b = k->random(rng), c = k->random(rng);
      if (k->mul(a, k->mul(b, c)) != k->mul(k->mul(a, b), c) || k->add(a, k->add(b, c)) != k->add(k->add(a, b), c) ||
          k->mul(a, k->add(b, c)) != k->add(k->mul(a, b), k->mul(a, c)) || k->mul(a, b) != k->mul(b, a) ||
          k->add(a, k->neg(a)) != Elem{} || (!a.is_zero() && k->mul(a, k->inv(a)) != k->one()))
        return "axiom violated in GF(" + std::to_string(k->size()) + ")";
    }
  }
  return {};
}

std::string frobenius_linearity(std::mt19937_64& rng) {
  for (auto [p, e, n] : std::vector<std::tuple<int, int, int>>{{2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {3, 1, 4}}) {
    auto k = Field::make(p, e, n);
    for (int t = 0; t < 2000; ++t) {
      const Elem a = k->random(rng), b = k->random(rng), c = k->random_base(rng);
      const auto s = [&](Elem x) { return k->frobenius(x, 1); };
      if (s(k->add(a, b)) != k->add(s(a), s(b)) || s(k->mul(a, b)) != k->mul(s(a), s(b)) || s(c) != c ||
          k->frobenius(a, n) != a)
        return "Frobenius not a k'-linear automorphism of GF(" + std::to_string(k->size()) + ")";
    }
  }
  return {};
}

std::string descent_reconstruction(std::mt19937_64& rng) {
  for (auto [p, n, m] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {2, 3, 1}, {3, 2, 2}, {2, 4, 1}}) {
    auto k = Field::make(p, 1, n);
    auto ctx = DescentContext::make(k, m);
    for (int t = 0; t < 40; ++t) {
      const auto f = oracle::random_poly(ctx.source_ring(), 1 + t % 3, rng);
      const auto parts = weil_descend(f, ctx);
      MultiPoly sum(ctx.lifted_ring());
      for (int j = 0; j < n; ++j) {
        if (!lies_in_subfield(parts[j]) || parts[j].degree() > f.degree()) return "descended part leaves k' or degree";
        sum = add(sum, scale(relevel(parts[j], ctx.lifted_ring()), ctx.basis()[j]));
      }
      if (sum != lift(f, ctx)) return "sum alpha_j f_j != f";
    }
  }
  return {};
}

std::vector<PolySystem> falldeg_systems(std::mt19937_64& rng) {
  std::vector<PolySystem> out;
  for (int rep = 0; rep < 4; ++rep)
    for (auto [p, n, nvars] : std::vector<std::tuple<int, int, int>>{{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {2, 2, 2}}) {
      auto ring = Ring::make(Field::make(p, 1, n), Level::K, numbered_vars("X", nvars));
      out.push_back(random_system(ring, 2, 2, rng));
    }
  return out;
}

std::string falldeg_monotone_sound(std::mt19937_64& rng) {
  for (const auto& F : falldeg_systems(rng)) {
    const auto G = groebner_toy(F);
    std::size_t prev = 0;
    for (std::uint32_t i = 0; i <= 4; ++i) {
      const auto V = span_closure(F, i);
      if (V.dim_up_to(i == 0 ? 0 : i - 1) < prev && i > 0) return "V_{F,i-1} not contained in V_{F,i}";
      prev = V.dim();
      for (const auto& g : V.polys())
        if (!normal_form(g, G).is_zero()) return "closure element outside the ideal";
    }
  }
  return {};
}

std::string falldeg_order_independent(std::mt19937_64& rng) {
  for (const auto& F : falldeg_systems(rng)) {
    const auto a = last_fall_degree(F, FallOptions{std::nullopt, true, MonomialOrder::Grevlex});
    const auto b = last_fall_degree(F, FallOptions{std::nullopt, true, MonomialOrder::Grlex});
    if (a.status == FallStatus::Certified && b.status == FallStatus::Certified && a.last_fall_degree != b.last_fall_degree)
      return "grevlex and grlex disagree";
  }
  return {};
}

// d_{MF} = d_F for invertible M, checked literally.
std::string recombination_invariance(std::mt19937_64& rng) {
  std::size_t compared = 0, differ = 0;
  std::string first;
  for (const auto& F : falldeg_systems(rng)) {
    const Field& k = F.ring->field();
    const std::size_t s = F.polys.size();
    Matrix M(s, s);
    do {
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) M.at(i, j) = k.random(rng);
    } while (rank(k, M) < s);
    PolySystem MF{F.ring, {}};
    for (std::size_t i = 0; i < s; ++i) {
      MultiPoly g(F.ring);
      for (std::size_t j = 0; j < s; ++j) g = add(g, scale(F.polys[j], M.at(i, j)));
      MF.polys.push_back(g);
    }
    const auto a = last_fall_degree(F), b = last_fall_degree(MF);
    if (a.status != FallStatus::Certified || b.status != FallStatus::Certified) continue;
    ++compared;
    if (a.last_fall_degree != b.last_fall_degree) {
      if (first.empty())
        first = "d_F=" + std::to_string(a.last_fall_degree) + " d_MF=" + std::to_string(b.last_fall_degree);
      ++differ;
    }
  }
  if (differ == 0) return {};
  return std::to_string(differ) + "/" + std::to_string(compared) + " recombinations move d (" + first + ")";
}

std::vector<LinearizedPoly> random_linearized(const FieldPtr& field, std::size_t m, std::size_t npolys, bool kprime,
                                              std::mt19937_64& rng) {
  std::vector<LinearizedPoly> F;
  for (std::size_t t = 0; t < npolys; ++t) {
    LinearGenConfig gen;
    gen.field = field;
    gen.m = m;
    gen.c = Field::uniform_below(rng, 3);
    gen.count = 1;
    gen.kprime_coeffs = kprime;
    gen.zero_one_in = 3;
    F.push_back(gen_random_linearized(gen, rng).front());
  }
  return F;
}

std::string l_ell_correspondence(std::mt19937_64& rng) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {2, 4}}) {
    auto k = Field::make(p, 1, n);
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      const auto W = subspace_from_fW(fW, k);
      for (int t = 0; t < 10; ++t) {
        const std::size_t len = 1 + Field::uniform_below(rng, W.nprime + 2);
        std::vector<UPoly> f;
        for (int i = 0; i < 2; ++i) {
          std::vector<Elem> c(len);
          for (auto& a : c) a = k->random(rng);
          f.push_back(UPoly(std::move(c)));
        }
        const auto L = L_op(f, len);
        const auto l = reduce_to_form(L, W);
        for (int s = 0; s < 30; ++s) {
          std::vector<Elem> v;
          for (int i = 0; i < 2; ++i) {
            Elem w{};
            for (Elem b : W.basis) w = k->add(w, k->mul(k->random_base(rng), b));
            v.push_back(w);
          }
          if (evaluate(*k, L, v) != evaluate(*k, l, v)) return "L(f) and l(f) differ on W^m";
        }
      }
    }
  }
  return {};
}

std::string kernel_dimension_law(std::mt19937_64&) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {2, 6}, {3, 3}}) {
    auto k = Field::make(p, 1, n);
    UPolyRing R(k->base());
    const auto divisors = monic_divisors_of_xn_minus_1(*k);
    for (const auto& fW : divisors) {
      const auto W = subspace_from_fW(fW, k);
      for (const auto& g : divisors)
        if (R.divides(g, fW) && brute_force_solve({L_op({g}, g.c.size())}, W, 1).dim() != std::size_t(g.degree()))
          return "dim ker L(g)|_W != deg g";
    }
  }
  return {};
}

std::string gbar_bound(std::mt19937_64& rng) {
  std::size_t certified = 0;
  for (int n : {2, 3, 4}) {
    auto k = Field::make(2, 1, n);
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      const auto W = subspace_from_fW(fW, k);
      for (int t = 0; t < 6; ++t) {
        const std::size_t m = 1 + t % 2;
        const auto F = random_linearized(k, m, 1 + t % 2, t % 3 == 0, rng);
        if (!reducibility_check(F, W, m).reducible) continue;
        const auto prof = last_fall_degree(stage_structure(F, W, m).Gbar);
        if (prof.status != FallStatus::Certified) continue;
        ++certified;
        if (prof.last_fall_degree > (k->q() - 1) * m + 1) return "d_Gbar exceeds (q-1)m+1";
      }
    }
  }
  return certified > 0 ? std::string{} : "no certified reducible rows";
}

// f_W irreducible over k' => reducible, checked literally on k- and
// k'-coefficient systems.
std::string lemma24(std::mt19937_64& rng) {
  std::size_t trials = 0, counter = 0;
  std::string first;
  for (int n : {2, 3, 4, 5}) {
    auto k = Field::make(2, 1, n);
    UPolyRing Rp(k->base());
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      if (!Rp.is_irreducible(fW)) continue;
      const auto W = subspace_from_fW(fW, k);
      for (int t = 0; t < 12; ++t) {
        const std::size_t m = 2;
        const bool kprime = t % 2 == 1;
        const auto F = random_linearized(k, m, 1 + t % 2, kprime, rng);
        const auto rc = reducibility_check(F, W, m);
        ++trials;
        if (rc.reducible) continue;
        // A failing stage has forms with nonzero leading component by construction.
        ++counter;
        if (first.empty())
          first = std::string(kprime ? "k'" : "k") + "-coefficients, n=" + std::to_string(n) + ": " + rc.detail;
      }
    }
  }
  if (counter == 0) return {};
  return std::to_string(counter) + "/" + std::to_string(trials) + " not reducible (" + first + ")";
}

Verdict properties(std::uint64_t seed) {
  const std::vector<Property> props = {
      {"field axioms", field_axioms},
      {"Frobenius linearity", frobenius_linearity},
      {"descent reconstruction and degree bound", descent_reconstruction},
      {"closure monotone and sound", falldeg_monotone_sound},
      {"last fall order independence", falldeg_order_independent},
      {"recombination invariance", recombination_invariance},
      {"L/l pointwise correspondence", l_ell_correspondence},
      {"kernel dimension law", kernel_dimension_law},
      {"d_Gbar <= (q-1)m+1 on reducible rows", gbar_bound},
      {"f_W irreducible => reducible", lemma24},
  };
  Verdict v{true, {}};
  std::size_t failed = 0;
  for (std::size_t i = 0; i < props.size(); ++i) {
    std::mt19937_64 rng(seed + i);
    std::string why;
    try {
      why = props[i].run(rng);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    std::fprintf(stderr, "  property %-42s %s%s\n", props[i].name.c_str(), why.empty() ? "ok" : "FAILED: ",
                 why.c_str());
    if (!why.empty()) {
      ++failed;
      v.pass = false;
      v.detail += (v.detail.empty() ? "" : "; ") + props[i].name + ": " + why;
    }
  }
  v.detail = std::to_string(props.size() - failed) + "/" + std::to_string(props.size()) + " properties hold" +
             (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 descent fall-degree equality",
       [&] { return campaign_criterion("thm11", Json{{"seed", seed}, {"threads", threads}}, 200, 0.95, 1800); }},
      {"2 linearized fall-degree bound",
       [&] { return campaign_criterion("thm26", Json{{"seed", seed}, {"threads", threads}}, 100, 0.0, 900); }},
      {"3 bivariate linearized example",
       [&] { return campaign_criterion("example", Json{{"seed", seed}, {"threads", threads}}, 20, 0.0, 300); }},
      {"4 solver-oracle equivalence",
       [&] { return campaign_criterion("solver", Json{{"seed", seed}, {"threads", threads}}, 500, 0.0, 600); }},
      {"5 span-closure oracle equivalence", [&] { return span_oracle(seed); }},
      {"6 bijection check", [&] { return bijection(seed); }},
      {"7 property suites", [&] { return properties(seed); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s criterion %s: %s\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
