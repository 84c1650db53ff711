#include "json_io.hpp"

#include "error.hpp"

namespace weil {

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

// Wraps nlohmann type errors so callers see one error kind.
template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Json field_to_json(const Field& field) {
  const auto& s = field.spec();
  return Json{{"p", s.p}, {"e", s.e}, {"n", s.n}, {"m1", s.m1}, {"m2", s.m2}};
}

FieldPtr field_from_json(const Json& j) {
  return guarded([&] {
    FieldSpec spec;
    spec.p = require(j, "p").get<std::uint32_t>();
    spec.e = get_or<std::uint32_t>(j, "e", 1);
    spec.n = get_or<std::uint32_t>(j, "n", 1);
    spec.m1 = get_or<std::vector<std::uint32_t>>(j, "m1", {});
    spec.m2 = get_or<std::vector<std::uint32_t>>(j, "m2", {});
    return Field::make(spec);
  });
}

Json system_to_json(const PolySystem& system) {
  Json polys = Json::array();
  for (const auto& f : system.polys) polys.push_back(to_text(f));
  return Json{{"field", field_to_json(system.ring->field())},
              {"level", system.ring->level() == Level::K ? "k" : "kprime"},
              {"vars", system.ring->vars()},
              {"polys", std::move(polys)}};
}

PolySystem system_from_json(const Json& j) {
  return guarded([&] {
    FieldPtr field = field_from_json(require(j, "field"));
    const std::string level = get_or<std::string>(j, "level", "k");
    if (level != "k" && level != "kprime") fail(ErrorCode::ParseError, "level must be \"k\" or \"kprime\"");
    auto vars = require(j, "vars").get<std::vector<std::string>>();
    RingPtr ring = Ring::make(field, level == "k" ? Level::K : Level::KPrime, std::move(vars));
    PolySystem out{ring, {}};
    for (const auto& p : require(j, "polys")) out.polys.push_back(parse_poly_text(ring, p.get<std::string>()));
    return out;
  });
}

Json elem_to_json(const Field& field, Elem x) { return field.to_string(x); }

Elem elem_from_json(const Field& field, const Json& j) {
  return guarded([&] {
    if (j.is_number_unsigned() || j.is_number_integer()) {
      const auto v = j.get<std::int64_t>();
      if (v < 0 || v >= static_cast<std::int64_t>(field.size()))
        fail(ErrorCode::CoordinateNotInField, "element index " + std::to_string(v) + " out of range");
      return Elem{static_cast<std::uint32_t>(v)};
    }
    const RingPtr ring = Ring::make(field.shared_from_this(), Level::K, {});
    return parse_coeff_text(*ring, j.get<std::string>());
  });
}

Json request_to_json(const LinearRequest& req) {
  const Field& k = *req.field;
  Json polys = Json::array();
  for (const auto& f : req.polys) {
    Json rows = Json::array();
    for (const auto& row : f.coeffs) {
      Json r = Json::array();
      for (auto c : row) r.push_back(elem_to_json(k, c));
      rows.push_back(std::move(r));
    }
    polys.push_back(std::move(rows));
  }
  Json fW = Json::array();
  for (auto c : req.fW.c) fW.push_back(c.index());
  return Json{{"field", field_to_json(k)}, {"m", req.m}, {"fW", std::move(fW)}, {"polys", std::move(polys)},
              {"seed", req.options.seed}};
}

LinearRequest request_from_json(const Json& j) {
  return guarded([&] {
    LinearRequest req;
    req.field = field_from_json(require(j, "field"));
    const Field& k = *req.field;
    req.m = require(j, "m").get<std::size_t>();
    if (j.contains("fW")) {
      std::vector<Elem> c;
      for (const auto& x : j.at("fW")) {
        const Elem e = elem_from_json(k, x);
        if (!k.in_subfield(e)) fail(ErrorCode::NotADivisor, "fW coefficient outside k'");
        c.push_back(e);
      }
      req.fW = UPoly(std::move(c));
    } else {
      std::vector<Elem> c(k.n() + 1);
      c[0] = k.neg(k.one());
      c[k.n()] = k.add(c[k.n()], k.one());
      req.fW = UPoly(std::move(c));
    }
    for (const auto& f : require(j, "polys")) {
      if (f.size() != req.m) fail(ErrorCode::ParseError, "each polynomial needs one coefficient row per variable");
      std::size_t bound = 0;
      for (const auto& row : f) bound = std::max(bound, row.size());
      LinearizedPoly lp = LinearizedPoly::zero(req.m, bound);
      for (std::size_t i = 0; i < req.m; ++i)
        for (std::size_t t = 0; t < f[i].size(); ++t) lp.coeffs[i][t] = elem_from_json(k, f[i][t]);
      req.polys.push_back(std::move(lp));
    }
    req.options.seed = get_or<std::uint64_t>(j, "seed", 1);
    req.options.allow_large_q = get_or<bool>(j, "allow_large_q", false);
    return req;
  });
}

namespace {

Json upoly_json(const Field& k, const UPoly& p) {
  Json out = Json::array();
  for (auto c : p.c) out.push_back(elem_to_json(k, c));
  return out;
}

Json form_json(const Field& k, const LinearForm& f) {
  Json out = Json::array();
  for (std::size_t i = 0; i < f.m; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < f.nprime; ++j) row.push_back(elem_to_json(k, f.at(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Json solution_to_json(const SolutionBasis& sol, const InvariantSubspace& W) {
  const Field& k = *W.field;
  UPolyRing R(k);
  Json gens = Json::array();
  for (const auto& g : sol.generators) {
    Json mat = Json::array();
    for (auto x : g) mat.push_back(k.coords(x));
    gens.push_back(std::move(mat));
  }
  Json trace = Json::array();
  for (const auto& el : sol.trace) {
    Json gamma = Json::array();
    for (const auto& f : el.gamma) gamma.push_back(form_json(k, f));
    trace.push_back(Json{{"stage", el.stage},
                         {"A", upoly_json(k, el.A)},
                         {"B", upoly_json(k, el.B)},
                         {"substitution", gamma.empty() ? Json::array() : gamma.front()},
                         {"gamma", std::move(gamma)}});
  }
  Json H = Json::array();
  for (const auto& h : sol.H) H.push_back(form_json(k, h));
  return Json{{"method", sol.method},
              {"reducible", sol.reducible},
              {"m", sol.m},
              {"nprime", W.nprime},
              {"fW", R.to_string(W.fW)},
              {"dim", sol.dim()},
              {"generators", std::move(gens)},
              {"eliminated_stages", sol.N},
              {"free_stages", sol.free_stages},
              {"trace", std::move(trace)},
              {"H", std::move(H)},
              {"g", sol.g.is_zero() ? std::string() : R.to_string(sol.g)}};
}

Json fall_profile_to_json(const FallProfile& profile) {
  Json records = Json::array();
  for (const auto& r : profile.records)
    records.push_back(Json{{"degree", r.degree},
                           {"dim_V", r.dim_V},
                           {"dim_V_cap_lower", r.dim_V_cap_lower},
                           {"dim_prev", r.dim_prev},
                           {"fall", r.fall}});
  return Json{{"last_fall_degree", profile.last_fall_degree},
              {"status", to_string(profile.status)},
              {"degree_reached", profile.degree_reached},
              {"cap", profile.cap},
              {"note", profile.note},
              {"records", std::move(records)}};
}

}  // namespace weil
