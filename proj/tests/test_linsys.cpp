#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "campaign.hpp"
#include "error.hpp"
#include "falldeg.hpp"
#include "linsys.hpp"
#include "support.hpp"

using namespace weil;

namespace {

UPoly xn_minus_one(const Field& k) {
  UPolyRing R(k);
  return R.sub(UPoly::monomial(k.one(), k.n()), R.one());
}

// Every element of W, as k'-combinations of its basis.
std::vector<Elem> elements_of(const InvariantSubspace& W) {
  const Field& k = *W.field;
  std::vector<Elem> out{Elem{}};
  for (Elem b : W.basis) {
    std::vector<Elem> next;
    for (Elem x : out)
      for (Elem c : oracle::subfield_elements(k)) next.push_back(k.add(x, k.mul(c, b)));
    out = std::move(next);
  }
  return out;
}

template <class Rng>
UPoly random_upoly(const Field& k, std::size_t len, Rng& rng, bool kprime) {
  std::vector<Elem> c(len);
  for (auto& a : c) a = kprime ? k.random_base(rng) : k.random(rng);
  return UPoly(std::move(c));
}

template <class Rng>
std::vector<LinearizedPoly> random_system(const FieldPtr& field, std::size_t m, std::size_t npolys, Rng& rng,
                                          bool kprime) {
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

// L(g) as a map k -> k.
Elem apply(const Field& k, const UPoly& g, Elem x) {
  if (g.is_zero()) return Elem{};
  return evaluate(k, L_op({g}, g.c.size()), 0, x);
}

}  // namespace

TEST(LinearOps, Examples) {
  auto k = Field::make(2, 1, 3);
  UPolyRing R(*k);
  // The identity map x_0 is L(1); conventional x^j stands for x^(q^j).
  const auto L1 = L_op({R.one()}, 1);
  EXPECT_EQ(L1.coeffs[0], std::vector<Elem>{k->one()});
  EXPECT_EQ(ell_op({R.one()}, 1), LinearForm::variable(1, 1, 0, 0, k->one()));
  const Elem a = k->generator_t();
  const auto f = L_op({UPoly({Elem{}, k->one(), a})}, 3);
  for (Elem x : oracle::all_elements(*k))
    EXPECT_EQ(evaluate(*k, f, 0, x), k->add(k->pow(x, 2), k->mul(a, k->pow(x, 4))));
  auto sum = LinearForm::variable(2, 1, 0, 0, k->one());
  sum = add(*k, sum, LinearForm::variable(2, 1, 1, 0, k->one()));
  EXPECT_EQ(ell_op({R.one(), R.one()}, 1), sum);
  EXPECT_THROW(L_op({R.x()}, 1), Error);
  EXPECT_THROW(ell_op({UPoly::monomial(k->one(), 3)}, 3), Error);
}

TEST(LinearOps, ComposeExamples) {
  auto k = Field::make(2, 1, 3);
  UPolyRing R(*k);
  const std::vector<UPoly> f{R.x(), UPoly({k->generator_t(), k->one()})};
  EXPECT_EQ(compose(*k, R.x(), f), f);
  const auto g = compose(*k, UPoly::monomial(k->one(), 2), {R.x()});
  for (Elem x : oracle::all_elements(*k)) EXPECT_EQ(apply(*k, g[0], x), k->pow(x, 4));
}

TEST(LinearOps, SkewProductIsComposition) {
  std::mt19937_64 rng(41);
  auto k = Field::make(2, 1, 3);
  UPolyRing R(*k);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_upoly(*k, 1 + trial % 4, rng, false);
    const auto f = random_upoly(*k, 1 + trial % 3, rng, false);
    const auto gf = R.skew_mul(g, f);
    for (Elem v : oracle::all_elements(*k)) ASSERT_EQ(apply(*k, g, apply(*k, f, v)), apply(*k, gf, v));
  }
}

TEST(LinearOps, AdditiveAndKprimeHomogeneous) {
  std::mt19937_64 rng(42);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {2, 6}}) {
    auto field = Field::make(p, 1, n);
    const Field& k = *field;
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_system(field, 2, 1, rng, false).front();
      for (int s = 0; s < 50; ++s) {
        const std::vector<Elem> x{k.random(rng), k.random(rng)}, y{k.random(rng), k.random(rng)};
        const Elem c = k.random_base(rng);
        const std::vector<Elem> xy{k.add(x[0], y[0]), k.add(x[1], y[1])}, cx{k.mul(c, x[0]), k.mul(c, x[1])};
        ASSERT_EQ(evaluate(k, f, xy), k.add(evaluate(k, f, x), evaluate(k, f, y)));
        ASSERT_EQ(evaluate(k, f, cx), k.mul(c, evaluate(k, f, x)));
      }
    }
  }
}

TEST(Subspace, Examples) {
  auto k = Field::make(2, 1, 3);
  UPolyRing R(*k);
  const auto Wkp = subspace_from_fW(R.sub(R.x(), R.one()), k);
  EXPECT_EQ(Wkp.nprime, 1u);
  EXPECT_EQ(elements_of(Wkp), (std::vector<Elem>{Elem{0}, Elem{1}}));
  const auto Wk = subspace_from_fW(xn_minus_one(*k), k);
  EXPECT_EQ(Wk.nprime, 3u);
  EXPECT_EQ(elements_of(Wk).size(), 8u);
  const auto W2 = subspace_from_fW(R.from_ints({1, 1, 1}), k);
  EXPECT_EQ(W2.nprime, 2u);
  for (Elem w : elements_of(W2)) {
    EXPECT_TRUE(W2.contains(w));
    EXPECT_EQ(k->add(k->add(k->frobenius(w, 2), k->frobenius(w, 1)), w), Elem{});
  }
  EXPECT_THROW(subspace_from_fW(R.from_ints({1, 0, 1}), k), Error);
}

TEST(Subspace, DivisorsAndDimensions) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    auto k = Field::make(p, 1, n);
    UPolyRing R(k->base());
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      EXPECT_TRUE(R.divides(fW, xn_minus_one(*k)));
      const auto W = subspace_from_fW(fW, k);
      ASSERT_EQ(W.nprime, static_cast<std::size_t>(fW.degree()));
      for (Elem b : W.basis) ASSERT_TRUE(W.contains(k->frobenius(b, 1)));
      for (Elem w : elements_of(W)) ASSERT_EQ(W.coordinates(w).size(), W.nprime);
    }
  }
}

TEST(Qbar, Examples) {
  auto k2 = Field::make(2, 1, 2);
  UPolyRing R2(*k2);
  const auto Q1 = build_Qbar(subspace_from_fW(xn_minus_one(*k2), k2), 1);
  ASSERT_EQ(Q1.polys.size(), 2u);
  EXPECT_EQ(to_text(Q1.polys[0]), "(1,0) * x0_0^2 + (1,0) * x0_1");
  EXPECT_EQ(to_text(Q1.polys[1]), "(1,0) * x0_1^2 + (1,0) * x0_0");

  const auto Q2 = build_Qbar(subspace_from_fW(R2.sub(R2.x(), R2.one()), k2), 1);
  ASSERT_EQ(Q2.polys.size(), 1u);
  EXPECT_EQ(to_text(Q2.polys[0]), "(1,0) * x0_0^2 + (1,0) * x0_0");

  auto k3 = Field::make(2, 1, 3);
  UPolyRing R3(*k3);
  const auto Q3 = build_Qbar(subspace_from_fW(R3.from_ints({1, 1, 1}), k3), 1);
  ASSERT_EQ(Q3.polys.size(), 2u);
  EXPECT_EQ(to_text(Q3.polys[0]), "(1,0,0) * x0_0^2 + (1,0,0) * x0_1");
  EXPECT_EQ(to_text(Q3.polys[1]), "(1,0,0) * x0_1^2 + (1,0,0) * x0_0 + (1,0,0) * x0_1");
}

TEST(Qbar, VanishesOnOrbitsOfW) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {2, 4}}) {
    auto k = Field::make(p, 1, n);
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      const auto W = subspace_from_fW(fW, k);
      const auto Q = build_Qbar(W, 1);
      for (Elem w : elements_of(W)) {
        std::vector<Elem> pt;
        for (std::size_t j = 0; j < W.nprime; ++j) pt.push_back(k->frobenius(w, j));
        for (const auto& r : Q.polys) ASSERT_TRUE(evaluate(r, pt).is_zero());
      }
    }
  }
}

TEST(FrobeniusStep, Examples) {
  auto k = Field::make(2, 1, 2);
  UPolyRing R(*k);
  const auto x00 = LinearForm::variable(1, 1, 0, 0, k->one());
  EXPECT_EQ(frobenius_step(x00, subspace_from_fW(R.sub(R.x(), R.one()), k)), x00);
  const auto Wk = subspace_from_fW(xn_minus_one(*k), k);
  EXPECT_EQ(frobenius_step(LinearForm::variable(1, 2, 0, 0, k->one()), Wk), LinearForm::variable(1, 2, 0, 1, k->one()));
}

TEST(FrobeniusStep, NFoldIterationIsIdentityOnK) {
  std::mt19937_64 rng(43);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    auto k = Field::make(p, 1, n);
    const auto W = subspace_from_fW(xn_minus_one(*k), k);
    for (int trial = 0; trial < 30; ++trial) {
      LinearForm f = LinearForm::zero(2, n);
      for (auto& b : f.b) b = k->random(rng);
      LinearForm g = f;
      for (int s = 0; s < n; ++s) g = frobenius_step(g, W);
      ASSERT_EQ(g, f);
      // One step raises the value to the q-th power on W^m.
      const auto h = frobenius_step(f, W);
      for (int s = 0; s < 20; ++s) {
        const std::vector<Elem> v{k->random(rng), k->random(rng)};
        ASSERT_EQ(evaluate(*k, h, v), k->frobenius(evaluate(*k, f, v), 1));
      }
    }
  }
}

TEST(FrobeniusStep, PreservesStageMembership) {
  std::mt19937_64 rng(44);
  auto k = Field::make(2, 1, 4);
  for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
    const auto W = subspace_from_fW(fW, k);
    for (int trial = 0; trial < 20; ++trial) {
      LinearForm f = LinearForm::zero(3, W.nprime);
      const std::size_t r = trial % 3;
      for (std::size_t i = r; i < 3; ++i)
        for (std::size_t j = 0; j < W.nprime; ++j) f.at(i, j) = k->random(rng);
      ASSERT_TRUE(frobenius_step(f, W).in_stage(r));
    }
  }
}

TEST(LComposeReduce, Examples) {
  std::mt19937_64 rng(45);
  auto k = Field::make(2, 1, 2);
  const auto W = subspace_from_fW(xn_minus_one(*k), k);
  LinearForm f = LinearForm::zero(2, 2);
  for (auto& b : f.b) b = k->random(rng);
  const Elem c = k->generator_t();
  EXPECT_EQ(lcompose_reduce(UPoly::constant(c), f, W), scale(*k, f, c));
  UPolyRing R(*k);
  EXPECT_EQ(lcompose_reduce(R.x(), LinearForm::variable(1, 2, 0, 0, k->one()), W),
            LinearForm::variable(1, 2, 0, 1, k->one()));
}

TEST(LComposeReduce, PointwiseOnW) {
  std::mt19937_64 rng(46);
  auto k = Field::make(2, 1, 3);
  for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
    const auto W = subspace_from_fW(fW, k);
    const auto elems = elements_of(W);
    for (int trial = 0; trial < 20; ++trial) {
      LinearForm f = LinearForm::zero(2, W.nprime);
      for (auto& b : f.b) b = k->random(rng);
      const auto g = random_upoly(*k, 1 + trial % 5, rng, false);
      const auto h = lcompose_reduce(g, f, W);
      for (Elem a : elems)
        for (Elem b : elems) {
          const std::vector<Elem> v{a, b};
          ASSERT_EQ(evaluate(*k, h, v), apply(*k, g, evaluate(*k, f, v)));
        }
    }
  }
}

TEST(Correspondence, LAndEllAgreeOnW) {
  std::mt19937_64 rng(47);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    auto k = Field::make(p, 1, n);
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      const auto W = subspace_from_fW(fW, k);
      const auto elems = elements_of(W);
      for (int trial = 0; trial < 10; ++trial) {
        // Short enough to read directly as a form, then long ones through f_W.
        std::vector<UPoly> shortf{random_upoly(*k, W.nprime, rng, false), random_upoly(*k, W.nprime, rng, false)};
        const auto Ls = L_op(shortf, W.nprime);
        const auto ls = ell_op(shortf, W.nprime);
        ASSERT_EQ(ell_of(Ls, W.nprime), ls);
        const std::size_t len = W.nprime + 1 + trial % 3;
        const auto Ll = L_op({random_upoly(*k, len, rng, false), random_upoly(*k, len, rng, false)}, len);
        const auto ll = reduce_to_form(Ll, W);
        for (Elem a : elems)
          for (Elem b : elems) {
            const std::vector<Elem> v{a, b};
            ASSERT_EQ(evaluate(*k, Ls, v), evaluate(*k, ls, v));
            ASSERT_EQ(evaluate(*k, Ll, v), evaluate(*k, ll, v));
          }
      }
    }
  }
}

TEST(Bezout, Examples) {
  auto k = Field::make(2, 1, 3);
  UPolyRing R(*k);
  const UPoly fW = R.sub(R.x(), R.one());
  const auto one = bezout(*k, R.one(), xn_minus_one(*k));
  EXPECT_EQ(one.A, R.one());
  EXPECT_TRUE(one.B.is_zero());
  const auto xb = bezout(*k, R.x(), fW);
  EXPECT_EQ(xb.A, R.one());
  EXPECT_EQ(xb.B, R.one());
  try {
    bezout(*k, R.from_ints({1, 1}), xn_minus_one(*k));
    FAIL() << "expected NotCoprime";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCoprime);
    EXPECT_NE(std::string(e.what()).find("gcd(f0, f_W) = (1,0,0)*x + (1,0,0)"), std::string::npos) << e.what();
  }
}

TEST(Bezout, RandomCertificates) {
  std::mt19937_64 rng(48);
  auto k = Field::make(2, 1, 4);
  UPolyRing R(*k);
  std::size_t plain = 0, skew = 0;
  for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
    if (fW.degree() < 1) continue;
    for (int trial = 0; trial < 40; ++trial) {
      const auto f0 = random_upoly(*k, 1 + trial % 5, rng, false);
      if (f0.is_zero()) continue;
      if (R.gcd(f0, fW) == R.one()) {
        const auto bz = bezout(*k, f0, fW);
        ASSERT_LT(bz.A.degree(), fW.degree());
        ASSERT_EQ(R.add(R.mul(bz.A, f0), R.mul(bz.B, fW)), R.one());
        ++plain;
      }
      if (skew_right_gcd(*k, {f0, fW}) == R.one()) {
        const auto bz = skew_bezout(*k, f0, fW);
        ASSERT_EQ(R.add(R.skew_mul(bz.A, f0), R.skew_mul(bz.B, fW)), R.one());
        ++skew;
      } else {
        EXPECT_THROW(skew_bezout(*k, f0, fW), Error);
      }
    }
  }
  EXPECT_GT(plain, 20u);
  EXPECT_GT(skew, 20u);
}

TEST(EliminateStage, EqualVariables) {
  auto k = Field::make(2, 1, 2);
  const auto W = subspace_from_fW(xn_minus_one(*k), k);
  LinearizedPoly f = LinearizedPoly::zero(2, 1);
  f.coeffs[0] = {k->one()};
  f.coeffs[1] = {k->neg(k->one())};
  const auto rc = reducibility_check({f}, W, 2);
  ASSERT_TRUE(rc.reducible);
  ASSERT_EQ(rc.witnesses.size(), 1u);
  const auto el = eliminate_stage(rc.witnesses[0], W);
  ASSERT_EQ(el.ell.size(), 2u);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(el.ell[j], LinearForm::variable(2, 2, 1, j, k->one()));
  const auto elems = elements_of(W);
  for (Elem a : elems)
    for (Elem b : elems) {
      const std::vector<Elem> v{a, b};
      const bool zero = evaluate(*k, f, v).is_zero();
      bool substituted = true;
      for (std::size_t j = 0; j < 2; ++j)
        substituted = substituted && k->frobenius(a, j) == evaluate(*k, el.ell[j], v);
      ASSERT_EQ(zero, substituted);
    }
}

TEST(EliminateStage, RejectsNonCoprimeComponent) {
  auto k = Field::make(2, 1, 2);
  const auto W = subspace_from_fW(xn_minus_one(*k), k);
  StageWitness w;
  w.stage = 0;
  w.form = LinearForm::zero(2, 2);
  w.form.at(0, 0) = k->one();
  w.form.at(0, 1) = k->one();  // x + 1 divides x^2 - 1
  w.form.at(1, 0) = k->one();
  try {
    eliminate_stage(w, W);
    FAIL() << "expected GcdConditionFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GcdConditionFailed);
  }
}

TEST(EliminateStage, SubstitutionPreservesSolutions) {
  std::mt19937_64 rng(49);
  for (int n : {2, 3}) {
    auto k = Field::make(2, 1, n);
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      const auto W = subspace_from_fW(fW, k);
      const auto elems = elements_of(W);
      for (int trial = 0; trial < 15; ++trial) {
        const auto F = random_system(k, 2, 1 + trial % 2, rng, trial % 2 == 0);
        const auto rc = reducibility_check(F, W, 2);
        if (!rc.reducible || rc.witnesses.empty()) continue;
        const auto el = eliminate_stage(rc.witnesses[0], W);
        // Every solution satisfies the stage-0 substitutions.
        for (Elem a : elems)
          for (Elem b : elems) {
            const std::vector<Elem> v{a, b};
            bool zero = true;
            for (const auto& f : F) zero = zero && evaluate(*k, f, v).is_zero();
            if (!zero) continue;
            for (std::size_t j = 0; j < W.nprime; ++j)
              ASSERT_EQ(k->frobenius(a, j), evaluate(*k, el.ell[j], v));
          }
      }
    }
  }
}

TEST(Reducibility, SingleVariableIsVacuous) {
  std::mt19937_64 rng(50);
  auto k = Field::make(2, 1, 3);
  const auto W = subspace_from_fW(xn_minus_one(*k), k);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rc = reducibility_check(random_system(k, 1, 2, rng, false), W, 1);
    EXPECT_TRUE(rc.reducible);
    EXPECT_TRUE(rc.witnesses.empty());
  }
}

TEST(Reducibility, BivariateExampleKprimeCoefficients) {
  // a x^4 + b x^2 + c x + u y^4 + v y^2 + w y with k' coefficients: the
  // ordinary gcd condition on either variable makes F reducible for k, taking
  // the coprime variable first.
  std::mt19937_64 rng(51);
  for (int n : {3, 5}) {
    auto k = Field::make(2, 1, n);
    UPolyRing R(*k);
    const auto W = subspace_from_fW(xn_minus_one(*k), k);
    int accepted = 0;
    while (accepted < 20) {
      LinearizedPoly f = LinearizedPoly::zero(2, 3);
      for (auto& row : f.coeffs)
        for (auto& c : row) c = k->random_base(rng);
      const bool gx = R.gcd(f.component(0), xn_minus_one(*k)) == R.one();
      const bool gy = R.gcd(f.component(1), xn_minus_one(*k)) == R.one();
      if (!gx && !gy) continue;
      ++accepted;
      if (!gx) std::swap(f.coeffs[0], f.coeffs[1]);
      EXPECT_TRUE(reducibility_check({f}, W, 2).reducible);
    }
  }
}

TEST(Reducibility, BivariateExampleKCoefficients) {
  // With k coefficients the stage-0 witness exists iff L(a x^2 + b x + c) is
  // a bijection of k, which the ordinary gcd does not decide.
  std::mt19937_64 rng(55);
  auto k = Field::make(2, 1, 3);
  UPolyRing R(*k);
  const auto W = subspace_from_fW(xn_minus_one(*k), k);
  int gcd_but_not_reducible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearizedPoly f = LinearizedPoly::zero(2, 3);
    for (auto& row : f.coeffs)
      for (auto& c : row) c = k->random(rng);
    std::set<Elem> image;
    for (Elem x : oracle::all_elements(*k)) image.insert(evaluate(*k, f, 0, x));
    const bool bijective = image.size() == k->size();
    const bool gx = R.gcd(f.component(0), xn_minus_one(*k)) == R.one();
    const bool reducible = reducibility_check({f}, W, 2).reducible;
    ASSERT_EQ(reducible, bijective);
    ASSERT_EQ(skew_right_gcd(*k, {f.component(0), xn_minus_one(*k)}) == R.one(), bijective);
    if (gx && !reducible) ++gcd_but_not_reducible;
  }
  EXPECT_GT(gcd_but_not_reducible, 0);

  // Pinned: t + x^2 is coprime to x^3 - 1, yet L = x^4 + t x has a nonzero kernel.
  const Elem t = k->generator_t();
  LinearizedPoly g = LinearizedPoly::zero(2, 3);
  g.coeffs[0] = {t, Elem{}, k->one()};
  g.coeffs[1] = {k->one(), Elem{}, Elem{}};
  ASSERT_EQ(R.gcd(g.component(0), xn_minus_one(*k)), R.one());
  std::size_t kernel = 0;
  for (Elem x : oracle::all_elements(*k)) kernel += evaluate(*k, g, 0, x).is_zero();
  ASSERT_GT(kernel, 1u);
  EXPECT_FALSE(reducibility_check({g}, W, 2).reducible);
}

TEST(Reducibility, IrreducibleFWWithKprimeCoefficients) {
  std::mt19937_64 rng(52);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 2}, {2, 5}}) {
    auto k = Field::make(p, 1, n);
    UPolyRing Rp(k->base());
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      if (!Rp.is_irreducible(fW)) continue;
      const auto W = subspace_from_fW(fW, k);
      for (int trial = 0; trial < 15; ++trial) {
        const auto rc = reducibility_check(random_system(k, 2 + trial % 2, 1 + trial % 3, rng, true), W, 2 + trial % 2);
        ASSERT_TRUE(rc.reducible) << rc.detail;
      }
    }
  }
}

TEST(Reducibility, IrreducibleFWWithKCoefficientsCanFail) {
  // v0^2 + a v0 + v1 with a in W: L(x + a) kills a, so x + a shares a right
  // factor with f_W and no stage-0 witness exists, though f_W is irreducible.
  auto k = Field::make(2, 1, 3);
  UPolyRing R(*k);
  const UPoly fW = R.from_ints({1, 1, 1});
  ASSERT_TRUE(UPolyRing(k->base()).is_irreducible(fW));
  const auto W = subspace_from_fW(fW, k);
  for (Elem a : elements_of(W)) {
    if (a.is_zero()) continue;
    LinearizedPoly f = LinearizedPoly::zero(2, 2);
    f.coeffs[0] = {a, k->one()};
    f.coeffs[1] = {k->one(), Elem{}};
    EXPECT_NE(skew_right_gcd(*k, {f.component(0), fW}), R.one());
    const auto rc = reducibility_check({f}, W, 2);
    EXPECT_FALSE(rc.reducible);
    EXPECT_EQ(rc.failed_stage, std::optional<std::size_t>{0});
    EXPECT_THROW(solve_structured({f}, W, 2), Error);
    // The oracle still solves it.
    const auto sol = brute_force_solve({f}, W, 2);
    const auto pts = enumerate_solutions({f}, W, 2);
    EXPECT_EQ(pts.size(), static_cast<std::size_t>(1) << sol.dim());
    for (const auto& pt : pts) EXPECT_TRUE(in_span(*k, sol.generators, pt));
  }
}

TEST(Solver, Examples) {
  auto k = Field::make(2, 1, 3);
  UPolyRing R(*k);
  const auto Wk = subspace_from_fW(xn_minus_one(*k), k);
  for (std::size_t m : {1u, 2u}) {
    EXPECT_EQ(solve_structured({}, Wk, m).dim(), 3 * m);
    EXPECT_EQ(brute_force_solve({}, Wk, m).dim(), 3 * m);
  }
  const auto frob = L_op({R.sub(R.x(), R.one())}, 2);
  const auto sol = solve_structured({frob}, Wk, 1);
  EXPECT_EQ(sol.g, R.sub(R.x(), R.one()));
  ASSERT_EQ(sol.dim(), 1u);
  EXPECT_TRUE(k->in_subfield(sol.generators[0][0]));
  EXPECT_TRUE(same_subspace(*k, sol.generators, {{k->one()}}));
  EXPECT_EQ(brute_force_solve({L_op({R.one()}, 1)}, Wk, 1).dim(), 0u);
}

TEST(Solver, AgreesWithOracleAndEnumeration) {
  std::mt19937_64 rng(53);
  std::size_t reducible = 0, not_reducible = 0;
  for (int n : {2, 3, 4}) {
    auto k = Field::make(2, 1, n);
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      const auto W = subspace_from_fW(fW, k);
      for (int trial = 0; trial < 24; ++trial) {
        const std::size_t m = 1 + trial % 2;
        const auto F = random_system(k, m, Field::uniform_below(rng, m + 2), rng, trial % 3 == 0);
        const auto oracle = brute_force_solve(F, W, m);
        for (const auto& g : oracle.generators) {
          for (Elem x : g) ASSERT_TRUE(W.contains(x));
          for (const auto& f : F) ASSERT_TRUE(evaluate(*k, f, g).is_zero());
        }
        ASSERT_EQ(kprime_rank(*k, oracle.generators), oracle.dim());
        const auto pts = enumerate_solutions(F, W, m);
        ASSERT_EQ(pts.size(), static_cast<std::size_t>(1) << oracle.dim());
        for (const auto& pt : pts) ASSERT_TRUE(in_span(*k, oracle.generators, pt));
        try {
          const auto sol = solve_structured(F, W, m);
          ASSERT_TRUE(same_subspace(*k, sol.generators, oracle.generators));
          ASSERT_EQ(sol.dim(), oracle.dim());
          ++reducible;
        } catch (const Error& e) {
          ASSERT_EQ(e.code(), ErrorCode::NotReducible);
          ++not_reducible;
        }
      }
    }
  }
  EXPECT_GT(reducible, 100u);
  RecordProperty("not_reducible", static_cast<int>(not_reducible));
}

TEST(Solver, KernelDimensionLaw) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {2, 6}}) {
    auto k = Field::make(p, 1, n);
    UPolyRing R(k->base());
    const auto divisors = monic_divisors_of_xn_minus_1(*k);
    for (const auto& fW : divisors) {
      const auto W = subspace_from_fW(fW, k);
      for (const auto& g : divisors) {
        if (!R.divides(g, fW)) continue;
        const auto F = std::vector<LinearizedPoly>{L_op({g}, g.c.size())};
        ASSERT_EQ(brute_force_solve(F, W, 1).dim(), static_cast<std::size_t>(g.degree()));
        ASSERT_EQ(solve_structured(F, W, 1).dim(), static_cast<std::size_t>(g.degree()));
      }
    }
  }
}

TEST(Solver, FallDegreeBoundOnReducibleInstances) {
  std::mt19937_64 rng(54);
  std::size_t certified = 0;
  for (int n : {2, 3}) {
    auto k = Field::make(2, 1, n);
    for (const auto& fW : monic_divisors_of_xn_minus_1(*k)) {
      const auto W = subspace_from_fW(fW, k);
      for (int trial = 0; trial < 8; ++trial) {
        const std::size_t m = 1 + trial % 2;
        const auto F = random_system(k, m, 1 + trial % 2, rng, false);
        if (!reducibility_check(F, W, m).reducible) continue;
        const auto prof = last_fall_degree(stage_structure(F, W, m).Gbar);
        if (prof.status != FallStatus::Certified) continue;
        ++certified;
        ASSERT_LE(prof.last_fall_degree, (k->q() - 1) * m + 1);
      }
    }
  }
  EXPECT_GT(certified, 20u);
}
