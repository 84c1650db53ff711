// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "weil/weil.h"

namespace {

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  weil_string_free(s);
  return out;
}

constexpr const char* kSquare =
    R"({"field": {"p": 2, "e": 1, "n": 2}, "level": "k", "vars": ["X0"], "polys": ["(1,0) * X0^2"]})";

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(weil_version(), "");
  EXPECT_STREQ(weil_status_name(WEIL_OK), "Ok");
  EXPECT_STREQ(weil_status_name(WEIL_NOT_REDUCIBLE), "NotReducible");
  EXPECT_STRNE(weil_status_name(999), "");
}

TEST(CApi, FieldArithmetic) {
  weil_field* k = nullptr;
  ASSERT_EQ(weil_field_create(2, 1, 2, &k), WEIL_OK);
  uint32_t q = 0, n = 0, size = 0;
  ASSERT_EQ(weil_field_info(k, &q, &n, &size), WEIL_OK);
  EXPECT_EQ(q, 2u);
  EXPECT_EQ(n, 2u);
  EXPECT_EQ(size, 4u);
  uint32_t r = 0;
  // t * t = t + 1 in GF(4) = GF(2)[t]/(t^2 + t + 1).
  ASSERT_EQ(weil_field_mul(k, 2, 2, &r), WEIL_OK);
  EXPECT_EQ(r, 3u);
  ASSERT_EQ(weil_field_add(k, 2, 3, &r), WEIL_OK);
  EXPECT_EQ(r, 1u);
  ASSERT_EQ(weil_field_frobenius(k, 2, 1, &r), WEIL_OK);
  EXPECT_EQ(r, 3u);
  ASSERT_EQ(weil_field_inv(k, 2, &r), WEIL_OK);
  EXPECT_EQ(r, 3u);
  EXPECT_EQ(weil_field_inv(k, 0, &r), WEIL_DIVISION_BY_ZERO);
  EXPECT_NE(std::string(weil_last_error()), "");
  EXPECT_EQ(weil_field_add(k, 7, 0, &r), WEIL_COORDINATE_NOT_IN_FIELD);
  char* s = nullptr;
  ASSERT_EQ(weil_field_to_string(k, 2, &s), WEIL_OK);
  EXPECT_EQ(take(s), "(0,1)");

  char* js = nullptr;
  ASSERT_EQ(weil_field_to_json(k, &js), WEIL_OK);
  const std::string text = take(js);
  weil_field* back = nullptr;
  ASSERT_EQ(weil_field_from_json(text.c_str(), &back), WEIL_OK);
  ASSERT_EQ(weil_field_to_json(back, &js), WEIL_OK);
  EXPECT_EQ(take(js), text);
  weil_field_free(back);
  weil_field_free(k);
}

TEST(CApi, RejectsBadInput) {
  weil_field* k = nullptr;
  EXPECT_EQ(weil_field_create(4, 1, 2, &k), WEIL_NON_PRIME_CHARACTERISTIC);
  EXPECT_EQ(k, nullptr);
  EXPECT_EQ(weil_field_create(2, 1, 2, nullptr), WEIL_INVALID_ARGUMENT);
  weil_system* sys = nullptr;
  EXPECT_EQ(weil_system_from_json("{", &sys), WEIL_PARSE_ERROR);
  EXPECT_EQ(weil_system_from_json(R"({"field": {"p": 2, "e": 1, "n": 2}, "polys": ["Z^2"]})", &sys),
            WEIL_PARSE_ERROR);
  weil_field_free(nullptr);
  weil_system_free(nullptr);
  weil_string_free(nullptr);
}

TEST(CApi, DescendAndFallDegree) {
  weil_system* sys = nullptr;
  ASSERT_EQ(weil_system_from_json(kSquare, &sys), WEIL_OK);
  size_t np = 0, nv = 0;
  ASSERT_EQ(weil_system_size(sys, &np, &nv), WEIL_OK);
  EXPECT_EQ(np, 1u);
  EXPECT_EQ(nv, 1u);

  weil_system* fp = nullptr;
  ASSERT_EQ(weil_descend(sys, nullptr, 0, WEIL_EMIT_FPRIME, &fp), WEIL_OK);
  char* js = nullptr;
  ASSERT_EQ(weil_system_to_json(fp, &js), WEIL_OK);
  const std::string text = take(js);
  EXPECT_NE(text.find("X0_0^2 + (1) * X0_1^2"), std::string::npos) << text;
  EXPECT_NE(text.find("\"kprime\""), std::string::npos) << text;
  weil_system_free(fp);

  const uint32_t dependent[2] = {1, 1};
  EXPECT_EQ(weil_descend(sys, dependent, 2, WEIL_EMIT_FPRIME, &fp), WEIL_NOT_A_BASIS);
  EXPECT_EQ(weil_descend(sys, nullptr, 0, 7, &fp), WEIL_INVALID_ARGUMENT);

  weil_system* f1 = nullptr;
  ASSERT_EQ(weil_descend(sys, nullptr, 0, WEIL_EMIT_F1, &f1), WEIL_OK);
  ASSERT_EQ(weil_system_size(f1, &np, &nv), WEIL_OK);
  EXPECT_EQ(np, 3u);
  EXPECT_EQ(nv, 2u);
  uint32_t d = 0;
  int certified = 0;
  char* profile = nullptr;
  ASSERT_EQ(weil_last_fall_degree(f1, nullptr, &d, &certified, &profile), WEIL_OK);
  EXPECT_TRUE(certified);
  EXPECT_NE(take(profile).find("\"records\""), std::string::npos);

  weil_fall_options opts{1, 1, 0, 0};
  ASSERT_EQ(weil_last_fall_degree(f1, &opts, &d, &certified, nullptr), WEIL_OK);
  EXPECT_FALSE(certified);
  weil_system_free(f1);
  weil_system_free(sys);
}

TEST(CApi, SolveLinearizedModes) {
  // x^q - x over GF(8) with W = k: the solutions are k'.
  const char* req =
      R"({"field": {"p": 2, "e": 1, "n": 3}, "m": 1, "fW": [1, 0, 0, 1], "polys": [[[1, 1]]], "seed": 1})";
  for (int mode : {WEIL_SOLVE_STRUCTURED, WEIL_SOLVE_ORACLE, WEIL_SOLVE_COMPARE}) {
    char* out = nullptr;
    ASSERT_EQ(weil_solve_linearized(req, mode, &out), WEIL_OK) << weil_last_error();
    const std::string text = take(out);
    if (mode == WEIL_SOLVE_COMPARE)
      EXPECT_NE(text.find("\"same_subspace\": true"), std::string::npos) << text;
    else
      EXPECT_NE(text.find("\"dim\": 1"), std::string::npos) << text;
  }
  char* out = nullptr;
  EXPECT_EQ(weil_solve_linearized(R"({"field": {"p": 2, "e": 1, "n": 3}, "m": 1, "fW": [1, 0, 1], "polys": []})",
                                  WEIL_SOLVE_STRUCTURED, &out),
            WEIL_NOT_A_DIVISOR);
}

TEST(CApi, GenerateIsSeeded) {
  const char* cfg = R"({"mode": "dense", "field": {"p": 3, "e": 1, "n": 2}, "m": 2, "degree": 2, "seed": 4})";
  char* a = nullptr;
  char* b = nullptr;
  ASSERT_EQ(weil_generate(cfg, &a), WEIL_OK);
  ASSERT_EQ(weil_generate(cfg, &b), WEIL_OK);
  EXPECT_EQ(take(a), take(b));
  EXPECT_EQ(weil_generate(R"({"mode": "dense", "field": {"p": 2, "e": 1, "n": 2}})", &a), WEIL_INVALID_ARGUMENT);
}

TEST(CApi, Campaign) {
  weil_campaign* c = nullptr;
  ASSERT_EQ(weil_campaign_run("solver", R"({"seed": 2, "instances": 12})", &c), WEIL_OK);
  size_t passed = 0, failed = 0, inconclusive = 0, filtered = 0;
  ASSERT_EQ(weil_campaign_summary(c, &passed, &failed, &inconclusive, &filtered), WEIL_OK);
  EXPECT_EQ(passed, 12u);
  EXPECT_EQ(failed + inconclusive, 0u);
  char* csv = nullptr;
  ASSERT_EQ(weil_campaign_csv(c, &csv), WEIL_OK);
  EXPECT_EQ(take(csv).rfind("id,q,n,m", 0), 0u);
  char* js = nullptr;
  ASSERT_EQ(weil_campaign_json(c, &js), WEIL_OK);
  EXPECT_NE(take(js).find("\"rows\""), std::string::npos);
  ASSERT_EQ(weil_campaign_timings_csv(c, &csv), WEIL_OK);
  EXPECT_EQ(take(csv).rfind("id,wall_seconds\n", 0), 0u);
  weil_campaign_free(c);
  EXPECT_EQ(weil_campaign_run("bogus", R"({"seed": 1})", &c), WEIL_INVALID_ARGUMENT);
}
