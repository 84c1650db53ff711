#pragma once

// Seeded instance generators and the verification campaigns.  Every row is
// a function of (seed, instance id) alone, rows come back ordered by id
// whatever the worker count, and the CSV carries no timing so reruns are
// byte-identical; wall times go to a separate table.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json_io.hpp"
#include "linsys.hpp"
#include "poly.hpp"

namespace weil {

enum class Outcome { Pass, Fail, Inconclusive };
std::string to_string(Outcome o);

struct ResultRow {
  std::size_t id = 0;
  std::vector<std::pair<std::string, std::string>> fields;  // fixed column order per campaign
  Outcome outcome = Outcome::Inconclusive;
  std::string note;
  double wall_seconds = 0;
};

struct CampaignResult {
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<ResultRow> rows;
  std::size_t passed = 0, failed = 0, inconclusive = 0;
  std::size_t filtered = 0;  // generated instances rejected by the campaign's filter

  bool all_pass() const { return failed == 0 && inconclusive == 0; }
};

std::string to_csv(const CampaignResult& result);
std::string timings_csv(const CampaignResult& result);
Json to_json(const CampaignResult& result);

// Generator for instance `id` of a campaign seeded with `seed`.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t id);

struct DenseGenConfig {
  FieldPtr field;
  std::size_t m = 1;
  std::uint32_t degree = 2;
  std::size_t count = 0;  // number of polynomials; 0 means m
};
// Uniform coefficients on every monomial of degree <= d over k, with at least
// one term of degree exactly d in each polynomial.
PolySystem gen_random_system(const DenseGenConfig& config, std::mt19937_64& rng);

struct LinearGenConfig {
  FieldPtr field;
  std::size_t m = 1;
  std::size_t c = 1;          // top q-degree exponent: deg = q^c
  std::size_t count = 0;      // 0 means m
  bool kprime_coeffs = false;
  unsigned zero_one_in = 0;   // each coefficient zero with probability 1/zero_one_in (0: uniform only)
};
// Coefficients a_ij for j <= c; the top slot of some variable is nonzero.
std::vector<LinearizedPoly> gen_random_linearized(const LinearGenConfig& config, std::mt19937_64& rng);

// kind: "thm11", "thm26", "example" or "solver".  Config keys are listed in
// the README; "seed" is mandatory.
CampaignResult run_campaign(const std::string& kind, const Json& config);

// Descent-equality row for one system (exposed for the acceptance binary).
ResultRow thm11_row(std::size_t id, const PolySystem& F, std::optional<std::uint32_t> cap);

}  // namespace weil
