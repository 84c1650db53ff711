#include "weil/weil.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "campaign.hpp"
#include "descent.hpp"
#include "error.hpp"
#include "falldeg.hpp"
#include "json_io.hpp"
#include "linsys.hpp"

struct weil_field {
  weil::FieldPtr field;
};

struct weil_system {
  weil::PolySystem system;
};

struct weil_campaign {
  weil::CampaignResult result;
};

namespace {

thread_local std::string last_error;

int record(weil::ErrorCode code, const std::string& message) {
  last_error = message;
  return static_cast<int>(code);
}

// Runs fn, turning exceptions into status codes.
template <class Fn>
int guard(Fn&& fn) {
  try {
    fn();
    return WEIL_OK;
  } catch (const weil::Error& e) {
    return record(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return record(weil::ErrorCode::Internal, "out of memory");
  } catch (const std::exception& e) {
    return record(weil::ErrorCode::Internal, e.what());
  }
}

void need(const void* p, const char* what) {
  if (!p) weil::fail(weil::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

weil::Elem elem_arg(const weil::Field& k, uint32_t a) {
  if (a >= k.size()) weil::fail(weil::ErrorCode::CoordinateNotInField, "element index out of range");
  return weil::Elem{a};
}

}  // namespace

extern "C" {

const char* weil_version(void) { return "1.0.0"; }

const char* weil_status_name(int status) {
  if (status < 0 || status > static_cast<int>(weil::ErrorCode::Internal)) return "UNKNOWN";
  return weil::error_code_name(static_cast<weil::ErrorCode>(status));
}

const char* weil_last_error(void) { return last_error.c_str(); }

void weil_string_free(char* s) { std::free(s); }

int weil_field_create(uint32_t p, uint32_t e, uint32_t n, weil_field** out) {
  return guard([&] {
    need(out, "out");
    *out = new weil_field{weil::Field::make(p, e, n)};
  });
}

int weil_field_from_json(const char* json, weil_field** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new weil_field{weil::field_from_json(weil::parse_json(json))};
  });
}

int weil_field_to_json(const weil_field* field, char** out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    *out = dup_string(weil::field_to_json(*field->field).dump());
  });
}

void weil_field_free(weil_field* field) { delete field; }

int weil_field_info(const weil_field* field, uint32_t* q, uint32_t* n, uint32_t* size) {
  return guard([&] {
    need(field, "field");
    if (q) *q = field->field->q();
    if (n) *n = field->field->n();
    if (size) *size = field->field->size();
  });
}

int weil_field_add(const weil_field* field, uint32_t a, uint32_t b, uint32_t* out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    const auto& k = *field->field;
    *out = k.add(elem_arg(k, a), elem_arg(k, b)).index();
  });
}

int weil_field_mul(const weil_field* field, uint32_t a, uint32_t b, uint32_t* out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    const auto& k = *field->field;
    *out = k.mul(elem_arg(k, a), elem_arg(k, b)).index();
  });
}

int weil_field_inv(const weil_field* field, uint32_t a, uint32_t* out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    const auto& k = *field->field;
    *out = k.inv(elem_arg(k, a)).index();
  });
}

int weil_field_frobenius(const weil_field* field, uint32_t a, uint64_t i, uint32_t* out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    const auto& k = *field->field;
    *out = k.frobenius(elem_arg(k, a), i).index();
  });
}

int weil_field_to_string(const weil_field* field, uint32_t a, char** out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    const auto& k = *field->field;
    *out = dup_string(k.to_string(elem_arg(k, a)));
  });
}

int weil_system_from_json(const char* json, weil_system** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new weil_system{weil::system_from_json(weil::parse_json(json))};
  });
}

int weil_system_to_json(const weil_system* system, char** out) {
  return guard([&] {
    need(system, "system");
    need(out, "out");
    *out = dup_string(weil::system_to_json(system->system).dump());
  });
}

void weil_system_free(weil_system* system) { delete system; }

int weil_system_size(const weil_system* system, size_t* npolys, size_t* nvars) {
  return guard([&] {
    need(system, "system");
    if (npolys) *npolys = system->system.polys.size();
    if (nvars) *nvars = system->system.ring->nvars();
  });
}

int weil_descend(const weil_system* system, const uint32_t* basis, size_t basis_len, int emit, weil_system** out) {
  return guard([&] {
    need(system, "system");
    need(out, "out");
    const auto& F = system->system;
    std::optional<std::vector<weil::Elem>> alpha;
    if (basis) {
      alpha.emplace();
      for (size_t i = 0; i < basis_len; ++i) alpha->push_back(elem_arg(F.ring->field(), basis[i]));
      if (alpha->size() != F.ring->field().n()) weil::fail(weil::ErrorCode::NotABasis, "basis needs n elements");
    }
    auto ctx = weil::DescentContext::make(F.ring->field_ptr(), F.ring->nvars(), alpha);
    // Move the input into the context's source ring (same variable count).
    weil::PolySystem src{ctx.source_ring(), {}};
    std::vector<std::size_t> ident(F.ring->nvars());
    for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
    if (F.ring->level() != weil::Level::K) weil::fail(weil::ErrorCode::RingMismatch, "descent needs a system over k");
    for (const auto& f : F.polys) src.polys.push_back(weil::embed(f, ctx.source_ring(), ident));
    switch (emit) {
      case WEIL_EMIT_FPRIME: *out = new weil_system{weil::weil_descend_system(src, ctx)}; break;
      case WEIL_EMIT_FPRIME1: *out = new weil_system{weil::build_Fprime1(src, ctx)}; break;
      case WEIL_EMIT_F1: *out = new weil_system{weil::build_F1(src, ctx)}; break;
      default: weil::fail(weil::ErrorCode::InvalidArgument, "unknown emit kind");
    }
  });
}

int weil_last_fall_degree(const weil_system* system, const weil_fall_options* options, uint32_t* degree,
                          int* certified, char** profile_json) {
  return guard([&] {
    need(system, "system");
    weil::FallOptions fo;
    if (options) {
      if (options->cap) fo.cap = options->cap;
      fo.certify = options->certify != 0;
      if (options->order != 0 && options->order != 1) weil::fail(weil::ErrorCode::InvalidArgument, "unknown order");
      fo.order = options->order == 1 ? weil::MonomialOrder::Grlex : weil::MonomialOrder::Grevlex;
      if (options->groebner_budget) fo.groebner_budget = options->groebner_budget;
    }
    const auto prof = weil::last_fall_degree(system->system, fo);
    if (degree) *degree = prof.last_fall_degree;
    if (certified) *certified = prof.status == weil::FallStatus::Certified;
    if (profile_json) *profile_json = dup_string(weil::fall_profile_to_json(prof).dump());
  });
}

int weil_solve_linearized(const char* request_json, int mode, char** result_json) {
  return guard([&] {
    need(request_json, "request_json");
    need(result_json, "result_json");
    if (mode < WEIL_SOLVE_STRUCTURED || mode > WEIL_SOLVE_COMPARE)
      weil::fail(weil::ErrorCode::InvalidArgument, "unknown solve mode");
    const auto req = weil::request_from_json(weil::parse_json(request_json));
    const auto W = weil::subspace_from_fW(req.fW, req.field);

    auto oracle = [&] {
      auto sol = weil::brute_force_solve(req.polys, W, req.m);
      try {
        sol.reducible = weil::reducibility_check(req.polys, W, req.m, req.options).reducible;
      } catch (const weil::Error& e) {
        if (e.code() != weil::ErrorCode::SearchBudgetExceeded && e.code() != weil::ErrorCode::Unsupported) throw;
      }
      return sol;
    };
    weil::Json out;
    if (mode == WEIL_SOLVE_STRUCTURED) {
      out = weil::solution_to_json(weil::solve_structured(req.polys, W, req.m, req.options), W);
    } else if (mode == WEIL_SOLVE_ORACLE) {
      out = weil::solution_to_json(oracle(), W);
    } else {
      const auto o = oracle();
      out["oracle"] = weil::solution_to_json(o, W);
      try {
        const auto s = weil::solve_structured(req.polys, W, req.m, req.options);
        out["structured"] = weil::solution_to_json(s, W);
        out["same_subspace"] = weil::same_subspace(*req.field, s.generators, o.generators);
      } catch (const weil::Error& e) {
        if (e.code() != weil::ErrorCode::NotReducible) throw;
        out["structured"] = nullptr;
        out["same_subspace"] = nullptr;
        out["note"] = std::string("structured solver declined: ") + e.what();
      }
    }
    *result_json = dup_string(out.dump(2));
  });
}

int weil_generate(const char* config_json, char** out_json) {
  return guard([&] {
    need(config_json, "config_json");
    need(out_json, "out_json");
    const auto cfg = weil::parse_json(config_json);
    try {
      if (!cfg.contains("seed")) weil::fail(weil::ErrorCode::InvalidArgument, "generation needs a seed");
      const auto field = weil::field_from_json(cfg.value("field", weil::Json{{"p", 2}, {"n", 2}}));
      auto rng = weil::instance_rng(cfg.at("seed").get<std::uint64_t>(), cfg.value("id", std::uint64_t{0}));
      const std::string mode = cfg.value("mode", std::string("dense"));
      const std::size_t m = cfg.value("m", std::size_t{1});
      if (m == 0) weil::fail(weil::ErrorCode::InvalidArgument, "m must be positive");
      if (mode == "dense") {
        weil::DenseGenConfig gen{field, m, cfg.value("degree", std::uint32_t{2}), cfg.value("count", std::size_t{0})};
        *out_json = dup_string(weil::system_to_json(weil::gen_random_system(gen, rng)).dump(2));
      } else if (mode == "linearized") {
        weil::LinearGenConfig gen;
        gen.field = field;
        gen.m = m;
        gen.c = cfg.value("c", std::size_t{1});
        gen.count = cfg.value("count", std::size_t{0});
        gen.kprime_coeffs = cfg.value("kprime", false);
        weil::LinearRequest req;
        req.field = field;
        req.m = m;
        req.polys = weil::gen_random_linearized(gen, rng);
        if (cfg.contains("fW")) {
          weil::Json probe{{"field", weil::field_to_json(*field)}, {"m", m}, {"fW", cfg.at("fW")}, {"polys", weil::Json::array()}};
          req.fW = weil::request_from_json(probe).fW;
        } else {
          std::vector<weil::Elem> c(field->n() + 1);
          c[0] = field->neg(field->one());
          c[field->n()] = field->add(c[field->n()], field->one());
          req.fW = weil::UPoly(std::move(c));
        }
        req.options.seed = cfg.at("seed").get<std::uint64_t>();
        *out_json = dup_string(weil::request_to_json(req).dump(2));
      } else {
        weil::fail(weil::ErrorCode::InvalidArgument, "mode must be \"dense\" or \"linearized\"");
      }
    } catch (const nlohmann::json::exception& e) {
      weil::fail(weil::ErrorCode::ParseError, e.what());
    }
  });
}

int weil_campaign_run(const char* kind, const char* config_json, weil_campaign** out) {
  return guard([&] {
    need(kind, "kind");
    need(config_json, "config_json");
    need(out, "out");
    *out = new weil_campaign{weil::run_campaign(kind, weil::parse_json(config_json))};
  });
}

int weil_campaign_summary(const weil_campaign* campaign, size_t* passed, size_t* failed, size_t* inconclusive,
                          size_t* filtered) {
  return guard([&] {
    need(campaign, "campaign");
    const auto& r = campaign->result;
    if (passed) *passed = r.passed;
    if (failed) *failed = r.failed;
    if (inconclusive) *inconclusive = r.inconclusive;
    if (filtered) *filtered = r.filtered;
  });
}

int weil_campaign_csv(const weil_campaign* campaign, char** out) {
  return guard([&] {
    need(campaign, "campaign");
    need(out, "out");
    *out = dup_string(weil::to_csv(campaign->result));
  });
}

int weil_campaign_json(const weil_campaign* campaign, char** out) {
  return guard([&] {
    need(campaign, "campaign");
    need(out, "out");
    *out = dup_string(weil::to_json(campaign->result).dump(2));
  });
}

int weil_campaign_timings_csv(const weil_campaign* campaign, char** out) {
  return guard([&] {
    need(campaign, "campaign");
    need(out, "out");
    *out = dup_string(weil::timings_csv(campaign->result));
  });
}

void weil_campaign_free(weil_campaign* campaign) { delete campaign; }

}  // extern "C"
