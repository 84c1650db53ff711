// Command-line front end.  Talks to the library only through the C API.
//
// Exit codes: 0 when every assertion passed and nothing was inconclusive
// (inconclusive is tolerated with --allow-inconclusive), 1 when an
// assertion failed or a result was inconclusive, 2 on bad input or a
// library error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weil/weil.h"

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(int rc) {
  if (rc != WEIL_OK) throw UsageError(std::string(weil_status_name(rc)) + ": " + weil_last_error());
}

struct StringFree {
  void operator()(char* s) const { weil_string_free(s); }
};
struct SystemFree {
  void operator()(weil_system* s) const { weil_system_free(s); }
};
struct CampaignFree {
  void operator()(weil_campaign* c) const { weil_campaign_free(c); }
};

using CString = std::unique_ptr<char, StringFree>;
using System = std::unique_ptr<weil_system, SystemFree>;
using Campaign = std::unique_ptr<weil_campaign, CampaignFree>;

std::string take(char* s) { return CString(s).get(); }

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Json parse(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(what + ": " + e.what());
  }
}

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  bool allow_inconclusive = false;

  // --config accepts a file path or an inline JSON object.
  Json load_config() const {
    if (config.empty()) return Json::object();
    const bool inline_json = config.find_first_not_of(" \t\n") != std::string::npos &&
                             config[config.find_first_not_of(" \t\n")] == '{';
    Json j = parse(inline_json ? config : read_text(config), "config");
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    return j;
  }

  std::string format_or(const std::string& fallback) const { return format.empty() ? fallback : format; }

  // Writes `text` to <out>/<name>, or to stdout when no --out was given and
  // `to_stdout` is set.
  void emit(const std::string& name, const std::string& text, bool to_stdout) const {
    if (out.empty()) {
      if (to_stdout) std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
      return;
    }
    std::filesystem::create_directories(out);
    const auto path = std::filesystem::path(out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path.string());
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }

  int verdict(bool failed, bool inconclusive) const {
    if (failed) return 1;
    if (inconclusive && !allow_inconclusive) return 1;
    return 0;
  }
};

System load_system(const std::string& path) {
  weil_system* s = nullptr;
  check(weil_system_from_json(read_text(path).c_str(), &s));
  return System(s);
}

// ---- descend ----------------------------------------------------------------

struct DescendArgs {
  std::string system;
  std::vector<std::uint32_t> basis;
  std::string emit = "Fprime";
  bool text = false;
};

int run_descend(const Globals& g, const DescendArgs& a) {
  const auto F = load_system(a.system);
  const int emit = a.emit == "Fprime" ? WEIL_EMIT_FPRIME : a.emit == "Fprime1" ? WEIL_EMIT_FPRIME1 : WEIL_EMIT_F1;
  weil_system* out = nullptr;
  check(weil_descend(F.get(), a.basis.empty() ? nullptr : a.basis.data(), a.basis.size(), emit, &out));
  const System result(out);
  const Json j = parse(take([&] {
                         char* s = nullptr;
                         check(weil_system_to_json(result.get(), &s));
                         return s;
                       }()),
                       "descend");
  if (a.text) {
    std::string lines;
    for (const auto& p : j.at("polys")) lines += p.get<std::string>() + "\n";
    g.emit("descend.txt", lines, true);
  } else {
    g.emit("descend.json", j.dump(2), true);
  }
  return 0;
}

// ---- lastfall ---------------------------------------------------------------

struct LastfallArgs {
  std::string system;
  std::optional<std::uint32_t> cap;
  std::optional<bool> certify;
  std::optional<std::string> order;
};

std::string profile_csv(const Json& profile) {
  std::ostringstream out;
  out << "degree,dim_V,dim_V_cap_lower,dim_prev,fall\n";
  for (const auto& r : profile.at("records"))
    out << r.at("degree").get<std::uint32_t>() << ',' << r.at("dim_V").get<std::uint64_t>() << ','
        << r.at("dim_V_cap_lower").get<std::uint64_t>() << ',' << r.at("dim_prev").get<std::uint64_t>() << ','
        << (r.at("fall").get<bool>() ? "true" : "false") << '\n';
  return out.str();
}

int run_lastfall(const Globals& g, const LastfallArgs& a) {
  const Json cfg = g.load_config();
  const auto F = load_system(a.system);
  weil_fall_options opts{};
  opts.cap = a.cap.value_or(cfg.value("cap", 0u));
  opts.certify = a.certify.value_or(cfg.value("certify", true)) ? 1 : 0;
  const std::string order = a.order.value_or(cfg.value("order", std::string("grevlex")));
  if (order != "grevlex" && order != "grlex") throw UsageError("order must be grevlex or grlex");
  opts.order = order == "grlex" ? 1 : 0;
  opts.groebner_budget = cfg.value("groebner_budget", std::uint64_t{0});

  std::uint32_t degree = 0;
  int certified = 0;
  char* profile = nullptr;
  check(weil_last_fall_degree(F.get(), &opts, &degree, &certified, &profile));
  const Json j = parse(take(profile), "profile");
  const std::string format = g.format_or("json");
  g.emit("lastfall.json", j.dump(2), format == "json");
  g.emit("lastfall.csv", profile_csv(j), format == "csv");
  if (!g.out.empty())
    std::cout << "last fall degree " << degree << " (" << j.at("status").get<std::string>() << ")\n";
  return g.verdict(false, !certified);
}

// ---- solve-linearized ---------------------------------------------------------

struct SolveArgs {
  std::string request;
  bool oracle = false;
  bool compare = false;
};

int run_solve(const Globals& g, const SolveArgs& a) {
  if (a.oracle && a.compare) throw UsageError("--oracle and --compare are exclusive");
  Json req = parse(read_text(a.request), "request");
  if (g.seed) req["seed"] = *g.seed;
  const int mode = a.compare ? WEIL_SOLVE_COMPARE : a.oracle ? WEIL_SOLVE_ORACLE : WEIL_SOLVE_STRUCTURED;
  char* out = nullptr;
  check(weil_solve_linearized(req.dump().c_str(), mode, &out));
  const std::string text = take(out);
  g.emit("solution.json", text, true);
  if (!a.compare) return 0;
  const Json j = parse(text, "solution");
  const auto& same = j.at("same_subspace");
  if (same.is_null()) {
    std::cerr << "structured solver declined; compared nothing\n";
    return g.verdict(false, true);
  }
  if (!same.get<bool>()) std::cerr << "structured and oracle solution spaces differ\n";
  return g.verdict(!same.get<bool>(), false);
}

// ---- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::string kind;
  std::optional<std::size_t> instances;
  std::optional<std::size_t> threads;
  std::optional<std::uint32_t> cap;
};

int run_verify(const Globals& g, const VerifyArgs& a) {
  Json cfg = g.load_config();
  if (g.seed) cfg["seed"] = *g.seed;
  if (a.instances) cfg["instances"] = *a.instances;
  if (a.threads) cfg["threads"] = *a.threads;
  if (a.cap) cfg["cap"] = *a.cap;
  if (!cfg.contains("seed")) throw UsageError("verify needs a seed (--seed or \"seed\" in --config)");

  weil_campaign* raw = nullptr;
  check(weil_campaign_run(a.kind.c_str(), cfg.dump().c_str(), &raw));
  const Campaign c(raw);
  std::size_t passed = 0, failed = 0, inconclusive = 0, filtered = 0;
  check(weil_campaign_summary(c.get(), &passed, &failed, &inconclusive, &filtered));

  const std::string format = g.format_or("csv");
  if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
  char* s = nullptr;
  check(format == "csv" ? weil_campaign_csv(c.get(), &s) : weil_campaign_json(c.get(), &s));
  g.emit(a.kind + "." + format, take(s), true);
  check(weil_campaign_timings_csv(c.get(), &s));
  g.emit(a.kind + "_timings.csv", take(s), false);

  std::ostream& log = g.out.empty() ? std::cerr : std::cout;
  log << a.kind << ": " << passed << " passed, " << failed << " failed, " << inconclusive << " inconclusive, "
      << filtered << " filtered\n";
  return g.verdict(failed > 0, inconclusive > 0);
}

// ---- gen --------------------------------------------------------------------

struct GenArgs {
  std::optional<std::string> mode;
  std::optional<std::uint32_t> p, e, n;
  std::optional<std::size_t> m, count, c;
  std::optional<std::uint32_t> degree;
  std::optional<std::uint64_t> id;
  bool kprime = false;
  std::vector<std::uint32_t> fW;
};

int run_gen(const Globals& g, const GenArgs& a) {
  Json cfg = g.load_config();
  if (g.seed) cfg["seed"] = *g.seed;
  if (!cfg.contains("seed")) throw UsageError("gen needs a seed (--seed or \"seed\" in --config)");
  if (a.mode) cfg["mode"] = *a.mode;
  if (a.p || a.e || a.n) {
    Json field = cfg.value("field", Json{{"p", 2}, {"n", 2}});
    if (a.p) field["p"] = *a.p;
    if (a.e) field["e"] = *a.e;
    if (a.n) field["n"] = *a.n;
    cfg["field"] = field;
  }
  if (a.m) cfg["m"] = *a.m;
  if (a.count) cfg["count"] = *a.count;
  if (a.c) cfg["c"] = *a.c;
  if (a.degree) cfg["degree"] = *a.degree;
  if (a.id) cfg["id"] = *a.id;
  if (a.kprime) cfg["kprime"] = true;
  if (!a.fW.empty()) cfg["fW"] = a.fW;
  char* out = nullptr;
  check(weil_generate(cfg.dump().c_str(), &out));
  g.emit("instance.json", take(out), true);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil descent, last fall degrees and linearized systems over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", weil_version());

  Globals g;
  app.add_option("--config", g.config, "JSON config: a file path or an inline object");
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  app.add_option("--out", g.out, "Output directory (default: stdout)");
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--allow-inconclusive", g.allow_inconclusive, "Exit 0 even when some result is inconclusive");

  DescendArgs da;
  auto* descend = app.add_subcommand("descend", "Weil descent of a system over k");
  descend->add_option("system", da.system, "System JSON file ('-' for stdin)")->required();
  descend->add_option("--basis", da.basis, "k'-basis of k as packed indices")->delimiter(',');
  descend->add_option("--emit", da.emit, "Which system to emit")->check(CLI::IsMember({"Fprime", "Fprime1", "F1"}));
  descend->add_flag("--text", da.text, "One polynomial per line instead of JSON");

  LastfallArgs la;
  auto* lastfall = app.add_subcommand("lastfall", "Last fall degree of a system");
  lastfall->add_option("system", la.system, "System JSON file ('-' for stdin)")->required();
  lastfall->add_option("--cap", la.cap, "Degree cap (default: derived from the system)");
  lastfall->add_option("--certify", la.certify, "Certify with the Groebner oracle (true|false)");
  lastfall->add_option("--order", la.order, "Monomial order")->check(CLI::IsMember({"grevlex", "grlex"}));

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve-linearized", "Solve a q-linearized system over an invariant subspace");
  solve->add_option("request", sa.request, "Request JSON file ('-' for stdin)")->required();
  solve->add_flag("--oracle", sa.oracle, "Brute-force kernel instead of the structured solver");
  solve->add_flag("--compare", sa.compare, "Run both solvers and compare the solution spaces");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification campaign");
  verify->add_option("kind", va.kind, "Campaign")->required()->check(
      CLI::IsMember({"thm11", "thm26", "solver", "example"}));
  verify->add_option("--instances", va.instances, "Instance count");
  verify->add_option("--threads", va.threads, "Worker threads");
  verify->add_option("--cap", va.cap, "Fall-degree cap");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--mode", ga.mode, "Instance kind")->check(CLI::IsMember({"dense", "linearized"}));
  gen->add_option("--p", ga.p, "Characteristic");
  gen->add_option("--e", ga.e, "q = p^e");
  gen->add_option("--n", ga.n, "Extension degree [k:k']");
  gen->add_option("--m", ga.m, "Number of variables");
  gen->add_option("--count", ga.count, "Number of polynomials (default m)");
  gen->add_option("--degree", ga.degree, "Total degree (dense mode)");
  gen->add_option("--c", ga.c, "Top q-power exponent (linearized mode)");
  gen->add_option("--id", ga.id, "Instance id within the seed");
  gen->add_flag("--kprime", ga.kprime, "Draw coefficients from k' (linearized mode)");
  gen->add_option("--fW", ga.fW, "Coefficients of f_W, constant first (linearized mode)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every usage error maps to 2.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*descend) return run_descend(g, da);
    if (*lastfall) return run_lastfall(g, la);
    if (*solve) return run_solve(g, sa);
    if (*verify) return run_verify(g, va);
    return run_gen(g, ga);
  } catch (const std::exception& e) {
    std::cerr << "weil: " << e.what() << '\n';
    return 2;
  }
}
