#include "campaign.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "descent.hpp"
#include "error.hpp"
#include "falldeg.hpp"
#include "monomial.hpp"

namespace weil {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
  return std::mt19937_64(seq);
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

std::uint64_t require_seed(const Json& config) {
  if (!config.contains("seed") || config.at("seed").is_null())
    fail(ErrorCode::InvalidArgument, "campaign config needs a seed");
  return config.at("seed").get<std::uint64_t>();
}

unsigned worker_count(const Json& config) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return std::max(1u, get_or<unsigned>(config, "threads", hw));
}

std::optional<std::uint32_t> cap_of(const Json& config) {
  if (!config.contains("cap") || config.at("cap").is_null()) return std::nullopt;
  return config.at("cap").get<std::uint32_t>();
}

std::string str(std::uint64_t v) { return std::to_string(v); }

// Runs task(i) for i < count on a pool; a thrown Error becomes a failed row.
template <class Task>
std::vector<ResultRow> run_pool(std::size_t count, unsigned threads, Task task) {
  std::vector<ResultRow> rows(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        rows[i] = task(i);
      } catch (const std::exception& e) {
        rows[i].outcome = Outcome::Fail;
        rows[i].note = std::string("error: ") + e.what();
      }
      rows[i].wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(threads, count); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

void tally(CampaignResult& res) {
  for (const auto& r : res.rows) {
    if (r.outcome == Outcome::Pass) ++res.passed;
    else if (r.outcome == Outcome::Fail) ++res.failed;
    else ++res.inconclusive;
  }
}

template <class T>
std::vector<T> list_or(const Json& j, const char* key, std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  if (j.at(key).is_array()) return j.at(key).get<std::vector<T>>();
  return {j.at(key).get<T>()};
}

UPoly x_pow_minus_one(const Field& k) {
  std::vector<Elem> c(k.n() + 1);
  c[0] = k.neg(k.one());
  c[k.n()] = k.add(c[k.n()], k.one());
  return UPoly(std::move(c));
}

PolySystem linearized_as_system(const std::vector<LinearizedPoly>& F, const DescentContext& ctx) {
  PolySystem out{ctx.source_ring(), {}};
  for (const auto& f : F) out.polys.push_back(to_multipoly(f, ctx.source_ring()));
  return out;
}

struct FieldChoice {
  std::uint32_t p = 2, e = 1, n = 2;
};

std::vector<FieldChoice> field_choices(const Json& config) {
  std::vector<FieldChoice> out;
  if (!config.contains("fields")) return {{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {3, 1, 3}};
  for (const auto& f : config.at("fields"))
    out.push_back({f.at("p").get<std::uint32_t>(), get_or<std::uint32_t>(f, "e", 1), get_or<std::uint32_t>(f, "n", 1)});
  return out;
}

// ---- campaigns ---------------------------------------------------------------

CampaignResult campaign_thm11(const Json& config) {
  CampaignResult res;
  res.kind = "thm11";
  res.seed = require_seed(config);
  const auto fields = field_choices(config);
  const auto ms = list_or<std::size_t>(config, "m", {1, 2});
  const auto max_degree = get_or<std::uint32_t>(config, "max_degree", 3);
  const auto count = get_or<std::size_t>(config, "instances", 200);
  const auto cap = cap_of(config);
  std::vector<FieldPtr> built;
  for (const auto& f : fields) built.push_back(Field::make(f.p, f.e, f.n));

  res.rows = run_pool(count, worker_count(config), [&](std::size_t id) {
    const std::size_t nf = built.size(), nm = ms.size();
    DenseGenConfig gen;
    gen.field = built[id % nf];
    gen.m = ms[(id / nf) % nm];
    gen.degree = 1 + static_cast<std::uint32_t>((id / (nf * nm)) % max_degree);
    auto rng = instance_rng(res.seed, id);
    return thm11_row(id, gen_random_system(gen, rng), cap);
  });
  tally(res);
  return res;
}

CampaignResult campaign_thm26(const Json& config) {
  CampaignResult res;
  res.kind = "thm26";
  res.seed = require_seed(config);
  const auto p = get_or<std::uint32_t>(config, "p", 2);
  const auto e = get_or<std::uint32_t>(config, "e", 1);
  const auto ns = list_or<std::uint32_t>(config, "n", {2, 3, 4});
  const auto ms = list_or<std::size_t>(config, "m", {1, 2});
  const auto cs = list_or<std::size_t>(config, "c", {1, 2});
  const auto count = get_or<std::size_t>(config, "instances", 100);
  const auto max_attempts = get_or<std::size_t>(config, "max_attempts", 50 * count);
  const auto cap = cap_of(config);
  std::vector<FieldPtr> fields;
  for (auto n : ns) fields.push_back(Field::make(p, e, n));

  struct Instance {
    std::size_t id;
    FieldPtr field;
    std::size_t m, c;
    std::vector<LinearizedPoly> F;
  };
  // The reducibility filter runs serially so the accepted ids do not depend
  // on scheduling.
  std::vector<Instance> accepted;
  for (std::size_t id = 0; id < max_attempts && accepted.size() < count; ++id) {
    const std::size_t nn = ns.size(), nm = ms.size();
    LinearGenConfig gen;
    gen.field = fields[id % nn];
    gen.m = ms[(id / nn) % nm];
    gen.c = cs[(id / (nn * nm)) % cs.size()];
    auto rng = instance_rng(res.seed, id);
    auto F = gen_random_linearized(gen, rng);
    const auto W = subspace_from_fW(x_pow_minus_one(*gen.field), gen.field);
    SearchOptions opts;
    opts.seed = res.seed + id;
    if (!reducibility_check(F, W, gen.m, opts).reducible) {
      ++res.filtered;
      continue;
    }
    accepted.push_back({id, gen.field, gen.m, gen.c, std::move(F)});
  }

  res.rows = run_pool(accepted.size(), worker_count(config), [&](std::size_t idx) {
    const Instance& inst = accepted[idx];
    const std::uint32_t q = inst.field->q();
    auto ctx = DescentContext::make(inst.field, inst.m);
    const PolySystem F = linearized_as_system(inst.F, ctx);
    const int d = std::max(F.degree(), 0);
    FallOptions fo;
    fo.cap = cap;
    const auto prof = last_fall_degree(build_Fprime1(F, ctx), fo);
    const std::uint32_t bound = std::max<std::uint32_t>((q - 1) * static_cast<std::uint32_t>(inst.m) + 1,
                                                        q * static_cast<std::uint32_t>(d));
    ResultRow row;
    row.id = inst.id;
    row.fields = {{"q", str(q)},
                  {"n", str(inst.field->n())},
                  {"m", str(inst.m)},
                  {"c", str(inst.c)},
                  {"deg_F", str(static_cast<std::uint64_t>(d))},
                  {"d_Fprime1", str(prof.last_fall_degree)},
                  {"status_Fprime1", to_string(prof.status)},
                  {"bound", str(bound)}};
    if (prof.status != FallStatus::Certified) {
      row.outcome = Outcome::Inconclusive;
      row.note = prof.note;
    } else {
      row.outcome = prof.last_fall_degree <= bound ? Outcome::Pass : Outcome::Fail;
    }
    return row;
  });
  tally(res);
  return res;
}

CampaignResult campaign_example(const Json& config) {
  CampaignResult res;
  res.kind = "example";
  res.seed = require_seed(config);
  const auto ns = list_or<std::uint32_t>(config, "n", {3, 5});
  const auto count = get_or<std::size_t>(config, "instances", 40);
  const auto max_attempts = get_or<std::size_t>(config, "max_attempts", 50 * count);
  const auto cap = cap_of(config);
  std::vector<FieldPtr> fields;
  for (auto n : ns) fields.push_back(Field::make(2, 1, n));

  struct Instance {
    std::size_t id;
    FieldPtr field;
    std::array<Elem, 6> coef;  // a b c u v w
    bool gcd_x, gcd_y;
  };
  std::vector<Instance> accepted;
  for (std::size_t id = 0; id < max_attempts && accepted.size() < count; ++id) {
    FieldPtr field = fields[id % fields.size()];
    const Field& k = *field;
    auto rng = instance_rng(res.seed, id);
    Instance inst{id, field, {}, false, false};
    for (auto& x : inst.coef) x = k.random(rng);
    UPolyRing R(k);
    const UPoly xn1 = x_pow_minus_one(k);
    inst.gcd_x = R.gcd(UPoly({inst.coef[2], inst.coef[1], inst.coef[0]}), xn1) == R.one();
    inst.gcd_y = R.gcd(UPoly({inst.coef[5], inst.coef[4], inst.coef[3]}), xn1) == R.one();
    if (!inst.gcd_x && !inst.gcd_y) {
      ++res.filtered;
      continue;
    }
    accepted.push_back(inst);
  }

  res.rows = run_pool(accepted.size(), worker_count(config), [&](std::size_t idx) {
    const Instance& inst = accepted[idx];
    const Field& k = *inst.field;
    const std::uint32_t q = k.q();
    LinearizedPoly f = LinearizedPoly::zero(2, 3);
    f.coeffs[0] = {inst.coef[2], inst.coef[1], inst.coef[0]};
    f.coeffs[1] = {inst.coef[5], inst.coef[4], inst.coef[3]};
    auto ctx = DescentContext::make(inst.field, 2);
    const PolySystem F = linearized_as_system({f}, ctx);
    FallOptions fo;
    fo.cap = cap;
    const auto prof = last_fall_degree(build_Fprime1(F, ctx), fo);
    const auto W = subspace_from_fW(x_pow_minus_one(k), inst.field);
    SearchOptions opts;
    opts.seed = res.seed + inst.id;
    const bool reducible = reducibility_check({f}, W, 2, opts).reducible;
    ResultRow row;
    row.id = inst.id;
    row.fields = {{"n", str(k.n())},
                  {"a", k.to_string(inst.coef[0])},
                  {"b", k.to_string(inst.coef[1])},
                  {"c", k.to_string(inst.coef[2])},
                  {"u", k.to_string(inst.coef[3])},
                  {"v", k.to_string(inst.coef[4])},
                  {"w", k.to_string(inst.coef[5])},
                  {"gcd_x_is_1", inst.gcd_x ? "1" : "0"},
                  {"gcd_y_is_1", inst.gcd_y ? "1" : "0"},
                  {"reducible_for_k", reducible ? "1" : "0"},
                  {"d_Fprime1", str(prof.last_fall_degree)},
                  {"status_Fprime1", to_string(prof.status)},
                  {"bound", str(2 * q)}};
    if (prof.status != FallStatus::Certified) {
      row.outcome = Outcome::Inconclusive;
      row.note = prof.note;
    } else {
      row.outcome = prof.last_fall_degree <= 2 * q ? Outcome::Pass : Outcome::Fail;
    }
    return row;
  });
  tally(res);
  return res;
}

CampaignResult campaign_solver(const Json& config) {
  CampaignResult res;
  res.kind = "solver";
  res.seed = require_seed(config);
  const auto p = get_or<std::uint32_t>(config, "p", 2);
  const auto e = get_or<std::uint32_t>(config, "e", 1);
  const auto ns = list_or<std::uint32_t>(config, "n", {2, 3, 4});
  const auto ms = list_or<std::size_t>(config, "m", {1, 2});
  const auto max_c = get_or<std::size_t>(config, "max_c", 2);
  const auto count = get_or<std::size_t>(config, "instances", 500);
  const auto enum_limit = get_or<std::uint64_t>(config, "enum_limit", 4096);
  const auto cap = cap_of(config);
  std::vector<FieldPtr> fields;
  std::vector<std::vector<UPoly>> divisors;
  for (auto n : ns) {
    fields.push_back(Field::make(p, e, n));
    divisors.push_back(monic_divisors_of_xn_minus_1(*fields.back()));
  }

  res.rows = run_pool(count, worker_count(config), [&](std::size_t id) {
    const std::size_t nn = ns.size(), nm = ms.size();
    const std::size_t fi = id % nn;
    const FieldPtr& field = fields[fi];
    const Field& k = *field;
    const std::size_t m = ms[(id / nn) % nm];
    const auto& divs = divisors[fi];
    const UPoly& fW = divs[(id / (nn * nm)) % divs.size()];
    const auto W = subspace_from_fW(fW, field);
    auto rng = instance_rng(res.seed, id);
    const bool kprime = rng() & 1;
    const std::size_t npolys = Field::uniform_below(rng, m + 2);
    std::vector<LinearizedPoly> F;
    for (std::size_t t = 0; t < npolys; ++t) {
      LinearGenConfig gen;
      gen.field = field;
      gen.m = m;
      gen.c = Field::uniform_below(rng, max_c + 1);
      gen.count = 1;
      gen.kprime_coeffs = kprime;
      gen.zero_one_in = 3;
      F.push_back(gen_random_linearized(gen, rng).front());
    }

    ResultRow row;
    row.id = id;
    UPolyRing R(k);
    row.fields = {{"q", str(k.q())},           {"n", str(k.n())},
                  {"m", str(m)},               {"fW", R.to_string(fW)},
                  {"nprime", str(W.nprime)},   {"npolys", str(npolys)},
                  {"coeffs", kprime ? "kprime" : "k"}};
    const auto oracle = brute_force_solve(F, W, m);
    SearchOptions opts;
    opts.seed = res.seed + id;
    std::optional<SolutionBasis> sol;
    try {
      sol = solve_structured(F, W, m, opts);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotReducible) throw;
    }
    const std::uint32_t bound = (k.q() - 1) * static_cast<std::uint32_t>(m) + 1;
    row.fields.emplace_back("reducible", sol ? "1" : "0");
    row.fields.emplace_back("dim_structured", sol ? str(sol->dim()) : "");
    row.fields.emplace_back("dim_oracle", str(oracle.dim()));
    if (sol) {
      const bool same = same_subspace(k, sol->generators, oracle.generators) && sol->dim() == oracle.dim();
      StageStructure st = stage_structure(F, W, m);
      FallOptions fo;
      fo.cap = cap;
      const auto prof = last_fall_degree(st.Gbar, fo);
      row.fields.emplace_back("subspace_equal", same ? "1" : "0");
      row.fields.emplace_back("d_Gbar", str(prof.last_fall_degree));
      row.fields.emplace_back("status_Gbar", to_string(prof.status));
      row.fields.emplace_back("bound_Gbar", str(bound));
      row.fields.emplace_back("enumeration", "skipped");
      if (!same) {
        row.outcome = Outcome::Fail;
        row.note = "structured and oracle subspaces differ";
      } else if (prof.status != FallStatus::Certified) {
        row.outcome = Outcome::Inconclusive;
        row.note = prof.note;
      } else if (prof.last_fall_degree > bound) {
        row.outcome = Outcome::Fail;
        row.note = "d_Gbar exceeds (q-1)m+1";
      } else {
        row.outcome = Outcome::Pass;
      }
    } else {
      row.fields.emplace_back("subspace_equal", "");
      row.fields.emplace_back("d_Gbar", "");
      row.fields.emplace_back("status_Gbar", "");
      row.fields.emplace_back("bound_Gbar", str(bound));
      std::string enumeration = "skipped";
      row.outcome = Outcome::Pass;
      try {
        const auto pts = enumerate_solutions(F, W, m, enum_limit);
        std::uint64_t expected = 1;
        for (std::size_t d = 0; d < oracle.dim(); ++d) expected *= k.q();
        bool ok = pts.size() == expected;
        for (std::size_t t = 0; ok && t < pts.size(); ++t) ok = in_span(k, oracle.generators, pts[t]);
        enumeration = ok ? "match" : "mismatch";
        if (!ok) {
          row.outcome = Outcome::Fail;
          row.note = "oracle disagrees with point enumeration";
        }
      } catch (const Error& err) {
        if (err.code() != ErrorCode::SearchBudgetExceeded) throw;
      }
      row.fields.emplace_back("enumeration", enumeration);
    }
    return row;
  });
  tally(res);
  return res;
}

}  // namespace

PolySystem gen_random_system(const DenseGenConfig& config, std::mt19937_64& rng) {
  const Field& k = *config.field;
  const RingPtr ring = Ring::make(config.field, Level::K, numbered_vars("X", config.m));
  const std::size_t count = config.count ? config.count : config.m;
  PolySystem out{ring, {}};
  for (std::size_t t = 0; t < count; ++t) {
    MultiPoly f(ring);
    for (std::uint32_t d = 0; d <= config.degree; ++d)
      for (const auto& e : monomials_of_degree(config.m, d, MonomialOrder::Grevlex)) f.add_term(e, k.random(rng));
    if (f.degree() < static_cast<int>(config.degree)) {
      const auto top = monomials_of_degree(config.m, config.degree, MonomialOrder::Grevlex);
      f.add_term(top[Field::uniform_below(rng, top.size())], k.random_nonzero(rng));
    }
    out.polys.push_back(std::move(f));
  }
  return out;
}

std::vector<LinearizedPoly> gen_random_linearized(const LinearGenConfig& config, std::mt19937_64& rng) {
  const Field& k = *config.field;
  const std::size_t count = config.count ? config.count : config.m;
  auto draw = [&](bool nonzero) {
    if (nonzero) return config.kprime_coeffs ? Elem{1 + static_cast<std::uint32_t>(Field::uniform_below(rng, k.q() - 1))}
                                             : k.random_nonzero(rng);
    if (config.zero_one_in && Field::uniform_below(rng, config.zero_one_in) == 0) return Elem{};
    return config.kprime_coeffs ? k.random_base(rng) : k.random(rng);
  };
  std::vector<LinearizedPoly> out;
  for (std::size_t t = 0; t < count; ++t) {
    LinearizedPoly f = LinearizedPoly::zero(config.m, config.c + 1);
    for (auto& row : f.coeffs)
      for (auto& a : row) a = draw(false);
    if (f.length() < config.c + 1) f.coeffs[Field::uniform_below(rng, config.m)][config.c] = draw(true);
    out.push_back(std::move(f));
  }
  return out;
}

ResultRow thm11_row(std::size_t id, const PolySystem& F, std::optional<std::uint32_t> cap) {
  const Field& k = F.ring->field();
  const std::uint32_t q = k.q();
  auto ctx = DescentContext::make(F.ring->field_ptr(), F.ring->nvars());
  FallOptions fo;
  fo.cap = cap;
  const auto a = last_fall_degree(build_F1(F, ctx), fo);
  const auto b = last_fall_degree(build_Fprime1(F, ctx), fo);
  const std::uint32_t qd = q * static_cast<std::uint32_t>(std::max(F.degree(), 0));
  const std::uint32_t ma = std::max(a.last_fall_degree, qd), mb = std::max(b.last_fall_degree, qd);
  ResultRow row;
  row.id = id;
  row.fields = {{"q", str(q)},
                {"n", str(k.n())},
                {"m", str(F.ring->nvars())},
                {"deg_F", str(static_cast<std::uint64_t>(std::max(F.degree(), 0)))},
                {"d_F1", str(a.last_fall_degree)},
                {"status_F1", to_string(a.status)},
                {"d_Fprime1", str(b.last_fall_degree)},
                {"status_Fprime1", to_string(b.status)},
                {"q_degF", str(qd)},
                {"max_F1", str(ma)},
                {"max_Fprime1", str(mb)}};
  if (a.status != FallStatus::Certified || b.status != FallStatus::Certified) {
    row.outcome = Outcome::Inconclusive;
    row.note = a.status != FallStatus::Certified ? "F_1: " + a.note : "F'_1: " + b.note;
  } else {
    row.outcome = ma == mb ? Outcome::Pass : Outcome::Fail;
  }
  return row;
}

CampaignResult run_campaign(const std::string& kind, const Json& config) {
  try {
    if (kind == "thm11") return campaign_thm11(config);
    if (kind == "thm26") return campaign_thm26(config);
    if (kind == "example") return campaign_example(config);
    if (kind == "solver") return campaign_solver(config);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  fail(ErrorCode::InvalidArgument, "unknown campaign \"" + kind + "\"");
}

std::string to_csv(const CampaignResult& result) {
  std::ostringstream out;
  out << "id";
  if (!result.rows.empty())
    for (const auto& [name, _] : result.rows.front().fields) out << ',' << name;
  out << ",outcome,note\n";
  for (const auto& r : result.rows) {
    out << r.id;
    for (const auto& [_, value] : r.fields) out << ',' << csv_cell(value);
    out << ',' << to_string(r.outcome) << ',' << csv_cell(r.note) << '\n';
  }
  return out.str();
}

std::string timings_csv(const CampaignResult& result) {
  std::ostringstream out;
  out << "id,wall_seconds\n";
  for (const auto& r : result.rows) out << r.id << ',' << r.wall_seconds << '\n';
  return out.str();
}

Json to_json(const CampaignResult& result) {
  Json rows = Json::array();
  for (const auto& r : result.rows) {
    Json row{{"id", r.id}};
    for (const auto& [name, value] : r.fields) row[name] = value;
    row["outcome"] = to_string(r.outcome);
    row["note"] = r.note;
    rows.push_back(std::move(row));
  }
  return Json{{"kind", result.kind},
              {"seed", result.seed},
              {"summary",
               {{"rows", result.rows.size()},
                {"passed", result.passed},
                {"failed", result.failed},
                {"inconclusive", result.inconclusive},
                {"filtered", result.filtered}}},
              {"rows", std::move(rows)}};
}

}  // namespace weil
