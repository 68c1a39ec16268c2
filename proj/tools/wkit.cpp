// wkit: command-line front end for the W-algebra engine.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal error.

#include "wkit/walgebra.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace wkit;

constexpr const char* kSchema = "wkit/1";

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  int n = 1;
  std::string variant = "susy";
  std::string a, b;
  std::string out;
  std::string suite;
  std::uint64_t seed = 1;
  std::string format = "json";
};

Variant parse_variant(const std::string& s) {
  if (s == "susy") return Variant::Susy;
  if (s == "nonsusy") return Variant::NonSusy;
  throw UsageError("unknown variant '" + s + "'");
}

void emit(const RunConfig& cfg, json j, const std::function<void(std::ostream&)>& text) {
  if (cfg.format == "json") {
    j["schema"] = kSchema;
    std::cout << j.dump(2) << "\n";
  } else {
    text(std::cout);
  }
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------

int cmd_decompose(const RunConfig& cfg) {
  auto lie = build_lie_data(cfg.n);
  json osp = json::array(), sl21 = json::array();
  for (int i = 1; i <= 2 * cfg.n; ++i) osp.push_back({{"i", i}, {"dim", 2 * i + 1}, {"lowest", "v(" + std::to_string(i) + ",0)"}});
  for (int i = 1; i <= cfg.n; ++i)
    sl21.push_back({{"i", i}, {"components", {2 * i - 1, 2 * i}}, {"dim", 8 * i}});
  SuiteReport rep = verify_section2(*lie);
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"status", c.ok ? "pass" : "fail"}, {"detail", c.detail}});
  json j{{"command", "decompose"}, {"n", cfg.n}, {"dim", lie->g->dimension()}, {"osp12", osp}, {"sl21", sl21}, {"checks", checks}};
  emit(cfg, j, [&](std::ostream& os) {
    os << "sl(" << cfg.n + 1 << "|" << cfg.n << "), dim " << lie->g->dimension() << "\n";
    for (int i = 1; i <= 2 * cfg.n; ++i) os << "  osp(1|2): R_" << i << " dim " << 2 * i + 1 << "\n";
    for (int i = 1; i <= cfg.n; ++i)
      os << "  sl(2|1): R~_" << i << " = R_" << 2 * i - 1 << " + R_" << 2 * i << " dim " << 8 * i << "\n";
    for (const auto& c : rep.checks) os << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
  });
  return rep.ok() ? 0 : 1;
}

int cmd_bracket(const RunConfig& cfg) {
  const Variant v = parse_variant(cfg.variant);
  auto w = build_walgebra(v, cfg.n);
  FieldPoly a = w->element(parse_element(w->lie(), cfg.a));
  FieldPoly b = w->element(parse_element(w->lie(), cfg.b));
  LambdaPoly x = (*w)(a, b);
  json j{{"command", "bracket"}, {"variant", variant_name(v)}, {"n", cfg.n}, {"a", {{"spec", cfg.a}, {"value", a.str()}}},
         {"b", {{"spec", cfg.b}, {"value", b.str()}}}, {"bracket", x.to_json()}, {"text", x.str()}};
  emit(cfg, j, [&](std::ostream& os) { os << "{" << a.str() << " _L " << b.str() << "} = " << x.str() << "\n"; });
  return 0;
}

int cmd_table(const RunConfig& cfg) {
  const Variant v = parse_variant(cfg.variant);
  auto w = build_walgebra(v, cfg.n);
  json t = w->structure_table();
  t["schema"] = kSchema;
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) throw UsageError("cannot open '" + cfg.out + "' for writing");
    f << t.dump(2) << "\n";
    std::cerr << "wrote " << cfg.out << "\n";
    return 0;
  }
  emit(cfg, t, [&](std::ostream& os) {
    for (std::uint32_t g = 0; g < w->size(); ++g)
      for (std::uint32_t h = g; h < w->size(); ++h)
        os << "{" << w->arena()->names[g] << " _L " << w->arena()->names[h] << "} = " << w->table().entry(g, h).str() << "\n";
  });
  return 0;
}

int cmd_gen(const RunConfig& cfg) {
  if (cfg.n > 2) throw UsageError("gen supports n <= 2");
  const Variant v = parse_variant(cfg.variant);
  auto w = build_walgebra(v, cfg.n);
  Reduction red(v, w->structure_ptr());
  json gens = json::array();
  std::vector<std::string> lines;
  for (std::uint32_t g = 0; g < w->size(); ++g) {
    Stopwatch sw;
    OracleStats st;
    FieldPoly x = oracle_generator(red, w_generator_tag(v, g), &st);
    std::cerr << "gen " << w->arena()->names[g] << ": " << sw.ms() << " ms\n";
    gens.push_back({{"name", w->arena()->names[g]}, {"value", x.to_json()}, {"text", x.str()}, {"unknowns", st.unknowns},
                    {"equations", st.equations}});
    lines.push_back(w->arena()->names[g] + " = " + x.str());
  }
  json j{{"command", "gen"}, {"variant", variant_name(v)}, {"n", cfg.n}, {"generators", gens}};
  emit(cfg, j, [&](std::ostream& os) {
    for (const auto& l : lines) os << l << "\n";
  });
  return 0;
}

// ---------------------------------------------------------------------------

struct SuiteRun {
  json sections = json::array();
  bool ok = true;
  std::vector<std::string> text;

  void add(const std::string& name, const SuiteReport& rep, double ms, json published = nullptr) {
    std::cerr << "[" << name << "] " << rep.checks.size() << " checks, " << ms << " ms\n";
    json checks = json::array();
    for (const auto& c : rep.checks) {
      json e{{"name", c.name}, {"status", c.ok ? "pass" : "fail"}};
      if (!c.detail.empty()) e["detail"] = c.detail;
      checks.push_back(e);
      text.push_back(std::string(c.ok ? "PASS " : "FAIL ") + name + ": " + c.name + (c.detail.empty() ? "" : "  [" + c.detail + "]"));
    }
    json s{{"section", name}, {"status", rep.ok() ? "pass" : "fail"}, {"checks", checks}};
    if (!published.is_null()) s["published"] = published;
    sections.push_back(s);
    ok = ok && rep.ok();
  }
};

int cmd_verify(const RunConfig& cfg) {
  SuiteRun run;
  const std::string& s = cfg.suite;
  const int n = cfg.n;
  auto timed = [&](const std::string& name, const std::function<SuiteReport(json&)>& f) {
    Stopwatch sw;
    json pub;
    SuiteReport rep = f(pub);
    run.add(name, rep, sw.ms(), pub);
  };
  if (s == "sec2") {
    auto lie = build_lie_data(n);
    timed("decomposition", [&](json&) { return verify_section2(*lie); });
    timed("identities", [&](json&) { return lie_identity_suite(*lie); });
  } else if (s == "sec5-susy") {
    timed("sec5-susy", [&](json& pub) {
      Section5Data d;
      auto r = suite_section5_susy(n, &d);
      pub = d.to_json();
      return r;
    });
  } else if (s == "sec5-nonsusy") {
    timed("sec5-nonsusy", [&](json& pub) {
      Section5Data d;
      auto r = suite_section5_nonsusy(n, &d);
      pub = d.to_json();
      return r;
    });
  } else if (s == "generators") {
    timed("generators", [&](json&) { return suite_generator_changes(n); });
  } else if (s == "oracle") {
    for (auto v : {Variant::Susy, Variant::NonSusy})
      timed(std::string("oracle-") + variant_name(v), [&](json& pub) {
        auto r = suite_oracle(v, n);
        json st = json::array();
        for (const auto& x : r.stats) st.push_back({{"unknowns", x.unknowns}, {"equations", x.equations}});
        pub = {{"pairs", r.pairs}, {"generators", st}};
        return r.report;
      });
  } else if (s == "jacobi" || s == "axioms") {
    const std::size_t samples = n == 1 ? 0 : 200;
    for (auto v : {Variant::Susy, Variant::NonSusy}) {
      timed(std::string("axioms-") + variant_name(v), [&](json&) { return suite_axioms(v, n, samples, cfg.seed); });
      if (s == "axioms") timed(std::string("grading-") + variant_name(v), [&](json&) { return suite_grading(v, n); });
    }
  } else if (s == "affine") {
    timed("affine", [&](json& pub) {
      auto r = suite_affine(n);
      if (r.central_charge) pub = {{"central_charge", r.central_charge->str()}};
      return r.report;
    });
  } else if (s == "susy-affine") {
    timed("susy-affine", [&](json& pub) {
      auto r = suite_susy_affine(n);
      if (r.central_charge) pub = {{"central_charge", r.central_charge->str()}};
      return r.report;
    });
  } else {
    throw UsageError("unknown suite '" + s + "'");
  }
  json j{{"command", "verify"}, {"suite", s}, {"n", n}, {"seed", cfg.seed}, {"status", run.ok ? "pass" : "fail"},
         {"sections", run.sections}};
  emit(cfg, j, [&](std::ostream& os) {
    for (const auto& l : run.text) os << l << "\n";
  });
  return run.ok ? 0 : 1;
}

int error_exit(const RunConfig& cfg, int code, const std::string& type, const std::string& msg) {
  if (cfg.format == "json")
    std::cout << json{{"schema", kSchema}, {"error", {{"type", type}, {"message", msg}}}}.dump(2) << "\n";
  std::cerr << "wkit: " << type << ": " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Classical W-algebras of sl(n+1|n): brackets, tables and verification suites"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "Rank n of sl(n+1|n)")->required(); };
  auto add_variant = [&](CLI::App* sub) {
    sub->add_option("--variant", cfg.variant, "susy or nonsusy")->check(CLI::IsMember({"susy", "nonsusy"}));
  };

  auto* decompose = app.add_subcommand("decompose", "osp(1|2) and sl(2|1) decompositions of sl(n+1|n)");
  add_n(decompose);
  auto* bracket = app.add_subcommand("bracket", "Bracket of two W-algebra generators");
  add_n(bracket);
  add_variant(bracket);
  bracket->add_option("--a", cfg.a, "Element spec")->required();
  bracket->add_option("--b", cfg.b, "Element spec")->required();
  auto* table = app.add_subcommand("table", "Full generator bracket table");
  add_n(table);
  add_variant(table);
  table->add_option("--out", cfg.out, "Write JSON table to this path");
  auto* gen = app.add_subcommand("gen", "Generators from the Hamiltonian reduction (n <= 2)");
  add_n(gen);
  add_variant(gen);
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  add_n(verify);
  verify->add_option("--suite", cfg.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"sec2", "sec5-susy", "sec5-nonsusy", "generators", "oracle", "jacobi", "axioms", "affine",
                             "susy-affine"}));
  verify->add_option("--seed", cfg.seed, "Seed for sampled Jacobi triples");

  // Global options may appear after the subcommand.
  for (auto* sub : {decompose, bracket, table, gen, verify})
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.n < 1) throw InvalidRank("n must be positive, got " + std::to_string(cfg.n));
    if (cfg.command == "decompose") return cmd_decompose(cfg);
    if (cfg.command == "bracket") return cmd_bracket(cfg);
    if (cfg.command == "table") return cmd_table(cfg);
    if (cfg.command == "gen") return cmd_gen(cfg);
    return cmd_verify(cfg);
  } catch (const InvalidRank& e) {
    return error_exit(cfg, 2, "InvalidRank", e.what());
  } catch (const ElementParseError& e) {
    return error_exit(cfg, 2, "ElementParseError", e.what());
  } catch (const NotLowestWeight& e) {
    return error_exit(cfg, 2, "NotLowestWeight", e.what());
  } catch (const UsageError& e) {
    return error_exit(cfg, 2, "UsageError", e.what());
  } catch (const std::exception& e) {
    return error_exit(cfg, 3, "InternalError", e.what());
  }
}
