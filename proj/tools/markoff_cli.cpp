// markoff: command-line front end for the Markoff-over-F_p[t] library.
//
// Exit codes: 0 success, 1 verification false, 2 usage or parse error,
// 3 budget exceeded.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "markoff.hpp"

namespace {

using namespace markoff;

constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Globals {
  u64 p = 13;
  std::string A = "1";
  std::string format = "json";
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 1;
};

/// Error already formatted for the terminal.
struct CliError {
  int exit_code;
  std::string message;
};

std::string caret_message(const std::string& flag, const std::string& text, const SyntaxError& e) {
  std::ostringstream out;
  out << flag << ": " << e.what() << "\n  " << text << "\n  " << std::string(e.position(), ' ') << "^";
  return out.str();
}

Polynomial parse_poly_arg(const std::string& flag, const std::string& text, PrimeModulus mod) {
  try {
    return parse_poly(text, mod);
  } catch (const SyntaxError& e) {
    throw CliError{kExitUsage, caret_message(flag, text, e)};
  }
}

MarkoffTriple parse_triple_arg(const std::string& flag, const std::string& text, PrimeModulus mod) {
  try {
    return parse_triple(text, mod);
  } catch (const SyntaxError& e) {
    throw CliError{kExitUsage, caret_message(flag, text, e)};
  }
}

MarkoffContext make_context(const Globals& g, u64 p) {
  const PrimeModulus mod(p);
  Polynomial A = parse_poly_arg("--A", g.A, mod);
  if (A.is_zero()) throw CliError{kExitUsage, "--A: A must be a nonzero polynomial"};
  return MarkoffContext(std::move(A));
}

std::uint64_t budget_or(const Globals& g, std::uint64_t fallback) { return g.budget.value_or(fallback); }

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string sig_text(const Signature& s) {
  return "(" + s.degrees[0].to_string() + ", " + s.degrees[1].to_string() + ", " + s.degrees[2].to_string() + ")";
}

std::string form_text(const FundamentalForm& form, RenderStyle style) {
  auto sign = [](int s) { return s > 0 ? std::string("+") : std::string("-"); };
  if (const auto* z = std::get_if<ZeroForm>(&form)) {
    return "ZeroForm{f=" + render_poly(z->f, style) + ", sign=" + sign(z->sign) + "}";
  }
  const auto& c = std::get<ConstantForm>(form);
  return "ConstantForm{f=" + render_poly(c.f, style) + ", a=" + std::to_string(c.a) + ", sign=" + sign(c.sign) + "}";
}

// --- subcommands -----------------------------------------------------------

int cmd_verify(const Globals& g, const std::string& triple_text) {
  const auto ctx = make_context(g, g.p);
  const auto P = parse_triple_arg("--triple", triple_text, ctx.modulus());
  const bool ok = is_solution(ctx, P);
  if (!ok) {
    if (g.format == "text") {
      std::cout << "solution: false\n";
    } else {
      print_json({{"solution", false}});
    }
    return kExitFalse;
  }
  const auto sig = P.signature();
  const auto h = P.height();
  const bool fundamental = h > 0 && is_fundamental(sort_triple(P).first);
  if (g.format == "text") {
    std::cout << "solution: true\nsignature: " << sig_text(sig) << "\nheight: " << h.to_string()
              << "\nfundamental: " << (fundamental ? "true" : "false") << "\n";
  } else {
    print_json({{"solution", true},
                {"signature", to_json(sig)},
                {"height", h.is_finite() ? json(h.value()) : json(nullptr)},
                {"fundamental", fundamental}});
  }
  return 0;
}

int cmd_tree(const Globals& g, const std::string& root_text, int depth) {
  const auto ctx = make_context(g, g.p);
  const auto root = parse_triple_arg("--root", root_text, ctx.modulus());
  const auto tree = generate_tree(ctx, root, depth, budget_or(g, kDefaultNodeBudget));
  const auto style = preferred_style(ctx.modulus());
  if (g.format == "text") {
    std::cout << tree_to_text(tree, style);
  } else if (g.format == "dot") {
    std::cout << tree_to_dot(tree, style);
  } else {
    print_json(to_json(tree));
  }
  return 0;
}

int cmd_descend(const Globals& g, const std::string& triple_text) {
  const auto ctx = make_context(g, g.p);
  const auto P = parse_triple_arg("--triple", triple_text, ctx.modulus());
  const auto d = descend(ctx, P);
  const auto form = classify_fundamental(ctx, d.fundamental);
  const bool replay_ok = replay_word(ctx, d.fundamental, d.word) == P;
  const auto style = preferred_style(ctx.modulus());
  if (g.format == "text") {
    std::cout << "fundamental: " << render_triple(d.fundamental, style) << "\nform: " << form_text(form, style)
              << "\npredecessor steps: " << d.predecessor_steps << "\nword:";
    for (const auto& gen : d.word) std::cout << " " << to_string(gen);
    std::cout << "\nreplay: " << (replay_ok ? "ok" : "MISMATCH") << "\n";
  } else {
    print_json({{"input", to_json(P)},
                {"fundamental", to_json(d.fundamental)},
                {"form", to_json(form)},
                {"word", to_json(d.word)},
                {"predecessor_steps", d.predecessor_steps},
                {"replay_ok", replay_ok}});
  }
  return replay_ok ? 0 : kExitFalse;
}

euclid::EuclidTriple parse_int_triple(const std::string& text) {
  std::string cleaned;
  for (char c : text) cleaned += (c == ',' || c == ';' || c == '(' || c == ')') ? ' ' : c;
  std::istringstream in(cleaned);
  euclid::EuclidTriple T{};
  if (!(in >> T.tau1 >> T.tau2 >> T.tau3) || !(in >> std::ws).eof()) {
    throw CliError{kExitUsage, "--member: expected three integers like \"2,3,5\", got \"" + text + "\""};
  }
  return T;
}

int cmd_euclid(const Globals& g, std::int64_t alpha, std::int64_t beta, int depth, const std::string& member) {
  if (!member.empty()) {
    const auto T = parse_int_triple(member);
    const auto id = euclid::membership(T, beta);
    json out = {{"triple", to_json(T)}, {"beta", beta}, {"alpha", id ? json(id->alpha) : json(nullptr)}};
    if (T.tau1 >= 1 && T.tau2 >= 1 && T.tau3 == T.tau1 + T.tau2) {
      const auto red = euclid::gamma_reduce(T);
      out["gamma_root"] = to_json(red.root);
      out["gamma_steps"] = red.steps;
    }
    if (g.format == "text") {
      std::cout << T.to_string() << " beta=" << beta << ": "
                << (id ? "on the (" + std::to_string(id->alpha) + "," + std::to_string(beta) + ")-tree"
                       : std::string("on no tree"))
                << "\n";
    } else {
      print_json(out);
    }
    return 0;
  }

  const euclid::TreeId id{alpha, beta};
  const auto budget = static_cast<std::int64_t>(budget_or(g, euclid::kDefaultLayerBudget));
  std::vector<std::set<euclid::EuclidTriple>> layers;
  for (int j = 0; j <= depth; ++j) layers.push_back(euclid::layer(id, j, budget));

  if (g.format == "text") {
    for (int j = 0; j <= depth; ++j) {
      std::cout << "L" << j << ":";
      for (const auto& T : layers[j]) std::cout << " " << T.to_string();
      std::cout << "\n";
    }
  } else if (g.format == "dot") {
    std::cout << "digraph euclid_tree {\n";
    auto name = [](const euclid::EuclidTriple& T) { return "\"" + T.to_string() + "\""; };
    for (int j = 0; j < depth; ++j) {
      for (const auto& T : layers[j]) {
        for (int b : {1, 2}) {
          std::cout << "  " << name(T) << " -> " << name(euclid::euclid_branch(T, beta, b)) << " [label=\"g" << b
                    << "\"];\n";
        }
      }
    }
    if (depth == 0) std::cout << "  " << name(*layers[0].begin()) << ";\n";
    std::cout << "}\n";
  } else {
    json ls = json::array();
    for (const auto& L : layers) {
      json arr = json::array();
      for (const auto& T : L) arr.push_back(to_json(T));
      ls.push_back(std::move(arr));
    }
    print_json({{"alpha", alpha}, {"beta", beta}, {"layers", std::move(ls)}});
  }
  return 0;
}

int cmd_count_signatures(const Globals& g, std::int64_t beta, std::optional<std::int64_t> n,
                         std::optional<std::int64_t> H) {
  if (n.has_value() == H.has_value()) throw CliError{kExitUsage, "count signatures: give exactly one of --n, --H"};
  if (n) {
    const auto report = counting::count_C_beta(beta, *n);
    const auto c_a = counting::count_C_A(counting::CountQuery::for_degree(beta, *n));
    if (g.format == "text") {
      std::cout << "C_beta(" << *n << ") = " << report.value << " (beta=" << beta << ")\nC_A(" << *n
                << ") = " << c_a << "\n";
    } else {
      print_json({{"beta", beta}, {"n", *n}, {"C_beta", to_json(report)}, {"C_A", c_a}});
    }
    return 0;
  }
  const auto cum = counting::cumulative_signatures(*H, beta == 0);
  const double ratio = static_cast<double>(cum.total) / (static_cast<double>(*H) * static_cast<double>(*H));
  if (g.format == "text") {
    std::cout << "total(H=" << *H << ") = " << cum.total << ", bounds (" << cum.lower << ", " << cum.upper
              << "], total/H^2 = " << ratio << "\n";
  } else {
    print_json({{"H", *H},
                {"total", cum.total},
                {"bounds", {cum.lower.to_double(), cum.upper.to_double()}},
                {"bounds_exact", {cum.lower.to_string(), cum.upper.to_string()}},
                {"ratio", ratio}});
  }
  return 0;
}

int cmd_count_solutions(const Globals& g, std::int64_t q, int n, bool brute, const std::string& convention) {
  const auto ctx = make_context(g, static_cast<u64>(q));
  std::optional<counting::CountReport> formula;
  if (!ctx.constant_A()) {
    formula = counting::count_finite_field(q, ctx.beta(), n);
  } else if (!brute) {
    throw CliError{kExitUsage,
                   "count solutions: no closed-form count for constant A (this case is left open); "
                   "rerun with --brute for an exhaustive count"};
  }
  json out = {{"q", q},
              {"A", to_json(ctx.A())},
              {"beta", ctx.beta()},
              {"n", n},
              {"formula", formula ? to_json(*formula) : json(nullptr)}};
  if (brute) {
    std::vector<oracle::EnumerationConvention> conventions;
    if (convention == "both") {
      conventions = {oracle::EnumerationConvention::ordered, oracle::EnumerationConvention::degree_sorted};
    } else {
      conventions = {oracle::parse_convention(convention)};
    }
    oracle::EnumerationOptions opts;
    opts.budget = budget_or(g, oracle::kDefaultCandidateBudget);
    json censuses = json::array();
    for (auto c : conventions) censuses.push_back(to_json(oracle::census(ctx, n, c, opts)));
    out["brute"] = std::move(censuses);
  }
  if (g.format == "text") {
    std::cout << "formula: " << (formula ? std::to_string(formula->value) : std::string("n/a")) << "\n";
    if (out.contains("brute")) {
      for (const auto& c : out["brute"]) {
        std::cout << "brute[" << c["convention"].get<std::string>() << "]: " << c["total"] << " (fundamental "
                  << c["fundamental_count"] << ", non-fundamental " << c["nonfundamental_count"]
                  << ", ratios " << c["per_class_ratios"].dump() << ")\n";
      }
    }
  } else {
    print_json(out);
  }
  return 0;
}

int cmd_enumerate(const Globals& g, int max_height, const std::string& convention) {
  const auto ctx = make_context(g, g.p);
  oracle::EnumerationOptions opts;
  opts.budget = budget_or(g, oracle::kDefaultCandidateBudget);
  const auto solutions = oracle::enumerate_solutions(ctx, max_height, oracle::parse_convention(convention), opts);
  const auto style = preferred_style(ctx.modulus());
  for (const auto& P : solutions) {
    if (g.format == "text") {
      std::cout << render_triple(P, style) << "\n";
    } else {
      std::cout << to_json(P).dump() << "\n";
    }
  }
  return 0;
}

/// Random roots, random walks down their trees, then descent and replay.
int cmd_check(const Globals& g, int samples, int max_depth) {
  const auto ctx = make_context(g, g.p);
  const PrimeModulus mod = ctx.modulus();
  std::mt19937_64 rng(g.seed);
  int failures = 0;
  for (int s = 0; s < samples; ++s) {
    const int deg = 1 + static_cast<int>(rng() % 3);
    std::vector<u64> coeffs(static_cast<std::size_t>(deg) + 1);
    for (auto& c : coeffs) c = rng() % mod.value();
    if (coeffs.back() == 0) coeffs.back() = 1;
    const Polynomial f(mod, coeffs);
    const int a = rng() % 2 ? 1 : -1;
    const int sign = rng() % 2 ? 1 : -1;
    const auto family = ctx.constant_A() && rng() % 2 ? RootFamily::constant : RootFamily::zero;
    MarkoffTriple P = make_root(ctx, f, a, sign, family);
    const int depth = static_cast<int>(rng() % static_cast<u64>(max_depth + 1));
    for (int k = 0; k < depth; ++k) P = sort_triple(apply_sigma(ctx, P, 1 + static_cast<int>(rng() % 2))).first;
    bool ok = is_solution(ctx, P);
    if (ok) {
      const auto d = descend(ctx, P);
      classify_fundamental(ctx, d.fundamental);
      ok = replay_word(ctx, d.fundamental, d.word) == P;
    }
    if (!ok) ++failures;
  }
  if (g.format == "text") {
    std::cout << samples << " samples, " << failures << " failures (seed " << g.seed << ")\n";
  } else {
    print_json({{"samples", samples}, {"failures", failures}, {"seed", g.seed}});
  }
  return failures == 0 ? 0 : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markoff triples x^2 + y^2 + z^2 = Axyz over F_p[t]"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--p", g.p, "odd prime modulus")->capture_default_str();
  app.add_option("--A", g.A, "the parameter A as a polynomial expression in t (and i)")->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "dot", "text"}))
      ->capture_default_str();
  app.add_option("--budget", g.budget, "work cap: candidate pairs, tree nodes or layer size");
  app.add_option("--seed", g.seed, "seed for randomized commands")->capture_default_str();

  std::string triple_text;
  auto* verify = app.add_subcommand("verify", "check a triple against the equation");
  verify->add_option("--triple", triple_text, "\"(x; y; z)\"")->required();

  std::string root_text;
  int depth = 2;
  auto* tree = app.add_subcommand("tree", "grow the binary Markoff tree under sigma_1, sigma_2");
  tree->add_option("--root", root_text, "\"(x; y; z)\"")->required();
  tree->add_option("--depth", depth)->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* desc = app.add_subcommand("descend", "descend a solution to its fundamental triple");
  desc->add_option("--triple", triple_text, "\"(x; y; z)\"")->required();

  std::int64_t alpha = 1, beta = 0;
  int euclid_depth = 2;
  std::string member;
  auto* euc = app.add_subcommand("euclid", "layers of an (alpha, beta)-Euclid tree");
  euc->add_option("--alpha", alpha)->check(CLI::PositiveNumber)->capture_default_str();
  euc->add_option("--beta", beta)->check(CLI::NonNegativeNumber)->capture_default_str();
  euc->add_option("--depth", euclid_depth)->check(CLI::NonNegativeNumber)->capture_default_str();
  euc->add_option("--member", member, "report which tree contains \"a,b,c\" (uses --beta)");

  auto* count = app.add_subcommand("count", "closed-form counts");
  count->require_subcommand(1);
  std::int64_t sig_beta = 0;
  std::optional<std::int64_t> sig_n, sig_H;
  auto* sigs = count->add_subcommand("signatures", "signature counts C_A(n) or their cumulative sum");
  sigs->add_option("--beta", sig_beta, "deg A")->check(CLI::NonNegativeNumber)->capture_default_str();
  sigs->add_option("--n", sig_n, "exact height")->check(CLI::PositiveNumber);
  sigs->add_option("--H", sig_H, "height bound for the cumulative count")->check(CLI::PositiveNumber);

  std::int64_t q = 5;
  int sol_n = 1;
  bool brute = false;
  std::string convention = "both";
  auto* sols = count->add_subcommand("solutions", "solutions of exact height over F_q[t]");
  sols->add_option("--q", q, "prime field size")->required();
  sols->add_option("--n", sol_n, "exact height")->required()->check(CLI::PositiveNumber);
  sols->add_flag("--brute", brute, "add exhaustive census beside the formula");
  sols->add_option("--convention", convention)
      ->check(CLI::IsMember({"ordered", "degree_sorted", "both"}))
      ->capture_default_str();

  int max_height = 1;
  std::string enum_convention = "ordered";
  auto* enumerate = app.add_subcommand("enumerate", "list every solution up to a height, as JSON lines");
  enumerate->add_option("--max-height", max_height)->check(CLI::NonNegativeNumber)->capture_default_str();
  enumerate->add_option("--convention", enum_convention)
      ->check(CLI::IsMember({"ordered", "degree_sorted"}))
      ->capture_default_str();

  int samples = 100;
  int walk_depth = 6;
  auto* check = app.add_subcommand("check", "randomized descent/replay self-check");
  check->add_option("--samples", samples)->check(CLI::PositiveNumber)->capture_default_str();
  check->add_option("--depth", walk_depth)->check(CLI::NonNegativeNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (const char* env = std::getenv("MARKOFF_BUDGET")) {
    try {
      g.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: MARKOFF_BUDGET must be a non-negative integer\n";
      return kExitUsage;
    }
  }

  try {
    if (*verify) return cmd_verify(g, triple_text);
    if (*tree) return cmd_tree(g, root_text, depth);
    if (*desc) return cmd_descend(g, triple_text);
    if (*euc) return cmd_euclid(g, alpha, beta, euclid_depth, member);
    if (*sigs) return cmd_count_signatures(g, sig_beta, sig_n, sig_H);
    if (*sols) return cmd_count_solutions(g, q, sol_n, brute, convention);
    if (*enumerate) return cmd_enumerate(g, max_height, enum_convention);
    if (*check) return cmd_check(g, samples, walk_depth);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BudgetExceeded ? kExitBudget : kExitUsage;
  }
  return kExitUsage;
}
