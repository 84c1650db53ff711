#pragma once

// JSON wire formats shared by the C API and the CLI.
//
//   field    {"p": 2, "e": 1, "n": 3, "m1": [...], "m2": [...]}   (moduli optional)
//   system   {"field": <field>, "level": "k" | "kprime", "vars": [...],
//             "polys": ["(1,0) * X0^2 + (0,1)", ...]}
//   request  {"field": <field>, "m": 2, "fW": [1, 1, 1],
//             "polys": [[[a00, a01], [a10, a11]], ...], "seed": 1}
//
// Field elements inside requests are either packed indices (integers) or
// k'-coordinate tuples "(c0,...,c_{n-1})"; outputs use the tuple form.
// fW lists k'-coefficients little-endian.

#include <json.hpp>

#include "falldeg.hpp"
#include "field.hpp"
#include "linsys.hpp"
#include "poly.hpp"

namespace weil {

using Json = nlohmann::ordered_json;

Json field_to_json(const Field& field);
FieldPtr field_from_json(const Json& j);

Json system_to_json(const PolySystem& system);
PolySystem system_from_json(const Json& j);
// Throws ParseError with the parser's message.
Json parse_json(std::string_view text);

Json elem_to_json(const Field& field, Elem x);
Elem elem_from_json(const Field& field, const Json& j);

struct LinearRequest {
  FieldPtr field;
  std::size_t m = 0;
  UPoly fW;
  std::vector<LinearizedPoly> polys;
  SearchOptions options;
};

Json request_to_json(const LinearRequest& req);
LinearRequest request_from_json(const Json& j);

// generators as m x n matrices of k'-coordinates, plus the elimination trace.
Json solution_to_json(const SolutionBasis& sol, const InvariantSubspace& W);
Json fall_profile_to_json(const FallProfile& profile);

}  // namespace weil
