#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdsi/allocators.hpp"
#include "fdsi/brute_force.hpp"
#include "fdsi/exact_search.hpp"
#include "fdsi/fairness.hpp"
#include "fdsi/generators.hpp"
#include "fdsi/io.hpp"
#include "fdsi/sa_empty.hpp"

// The fdsi command line. Lives in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 1 unfair / no allocation exists, 2 invalid input or
// usage, 3 budget exceeded.

namespace fdsi::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInvalid = 2, kBudget = 3 };

inline constexpr const char* kBudgetEnv = "FDSI_STATE_BUDGET";

struct NotionArgs {
  std::string base = "ef1";
  bool sa = false;
  std::string alpha;
  bool wsa = false;
};

/// nullopt for "any" (no fairness requirement). A leading "sa-" or "wsa-" on
/// the base is accepted as shorthand for the matching modifier.
inline std::optional<Notion> parse_notion(const NotionArgs& args) {
  std::string base = args.base;
  for (auto& c : base) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  bool sa = args.sa;
  bool wsa = args.wsa;
  if (base != "sa-empty") {
    if (base.rfind("wsa-", 0) == 0) {
      wsa = true;
      base = base.substr(4);
    } else if (base.rfind("sa-", 0) == 0) {
      sa = true;
      base = base.substr(3);
    }
  }
  const bool alpha = !args.alpha.empty();
  if (int(sa) + int(wsa) + int(alpha) > 1)
    throw ValidationError("--sa, --alpha and --wsa are mutually exclusive");

  if (base == "any") {
    if (sa || wsa || alpha) throw ValidationError("'any' takes no awareness modifier");
    return std::nullopt;
  }
  if (base == "sa-empty") {
    if (sa || wsa || alpha) throw ValidationError("'sa-empty' takes no awareness modifier");
    return Notion::sa_empty();
  }
  static const std::vector<std::pair<std::string, Base>> bases = {
      {"ef", Base::EF},       {"ef1", Base::EF1}, {"sef1", Base::sEF1}, {"wef1", Base::wEF1},
      {"swef1", Base::swEF1}, {"efl", Base::EFL}, {"tef1", Base::tEF1}};
  for (const auto& [name, b] : bases) {
    if (name != base) continue;
    if (sa) return Notion::sa(b);
    if (wsa) return Notion::wsa(b);
    if (alpha) {
      Notion n;
      try {
        n = Notion::alpha_sa(b, Rational::parse(args.alpha));
      } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
      }
      try {
        n.validate();
      } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
      }
      return n;
    }
    return Notion::plain(b);
  }
  throw ValidationError("unknown notion '" + args.base + "'");
}

inline void add_notion_options(CLI::App* cmd, NotionArgs& args) {
  cmd->add_option("-n,--notion", args.base,
                  "ef, ef1, sef1, wef1, swef1, efl, tef1, sa-empty or any; sa-/wsa- prefixes allowed")
      ->capture_default_str();
  auto* sa = cmd->add_flag("--sa", args.sa, "socially aware observers (per the instance's aware flags)");
  auto* alpha = cmd->add_option("--alpha", args.alpha, "alpha-SA with rational alpha P/Q in [0, 1]");
  auto* wsa = cmd->add_flag("--wsa", args.wsa, "weakly socially aware observers");
  sa->excludes(alpha)->excludes(wsa);
  alpha->excludes(wsa);
}

inline std::uint64_t default_state_budget() {
  const char* env = std::getenv(kBudgetEnv);
  if (!env || !*env) return SearchOptions{}.state_budget;
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(env, &used);
  } catch (const std::exception&) {
    throw ValidationError(std::string(kBudgetEnv) + " must be a positive integer");
  }
  if (used != std::string(env).size() || value == 0)
    throw ValidationError(std::string(kBudgetEnv) + " must be a positive integer");
  return value;
}

namespace detail {

inline bool binary_equal(const Instance& inst) {
  for (AgentId i = 0; i < inst.num_agents(); ++i)
    for (ItemId g = 0; g < inst.num_items(); ++g) {
      const Value v = inst.valuations[i][g];
      if ((v != 0 && v != 1) || v != inst.impacts[i][g]) return false;
    }
  return true;
}

inline bool picking_base(Base b) {
  return b == Base::EF1 || b == Base::sEF1 || b == Base::wEF1 || b == Base::swEF1 || b == Base::tEF1 ||
         b == Base::EFL;
}

// Picking with the instance's weights for weighted notions, equal weights otherwise.
inline Allocation run_picking(const Instance& inst, const Notion& notion) {
  if (is_weighted(notion.base)) return sa_weighted_picking(inst);
  Instance equal = inst;
  equal.weights.assign(inst.num_agents(), 1);
  return sa_weighted_picking(equal);
}

inline bool passes(const Instance& inst, const Allocation& alloc, const Notion& notion,
                   const AwarenessProfile& profile) {
  return is_sim(inst, alloc).fair && check(inst, alloc, notion, profile).fair;
}

struct SolveConfig {
  std::string method = "auto";
  bool require_sim = true;
  SearchOptions search;
  std::uint64_t brute_cap = kDefaultBruteForceCap;
  bool verbose = false;
};

struct SolveResult {
  std::optional<Allocation> allocation;
  std::string method;
};

inline std::optional<Allocation> run_exact_or_brute(const Instance& inst, const Notion& notion,
                                                    const AwarenessProfile& profile, const SolveConfig& cfg,
                                                    std::string& used) {
  if (notion.awareness == Awareness::AlphaSA || notion.awareness == Awareness::WSA ||
      inst.num_agents() > kMaxSearchAgents) {
    used = "brute";
    return brute_force_solve(inst, notion, profile, true, cfg.brute_cap);
  }
  used = "exact";
  return exact_solve(inst, notion, profile, cfg.search);
}

// "auto": guaranteed polynomial allocators where a theorem covers the case,
// the SA-empty solver for SA-empty, exact search otherwise. Polynomial
// results are re-checked and fall back to exact search on failure.
inline SolveResult auto_solve(const Instance& inst, const Notion& notion, const AwarenessProfile& profile,
                              const SolveConfig& cfg) {
  SolveResult r;
  if (notion.base == Base::SAEmpty) {
    r.method = "sa-empty";
    r.allocation = solve_sa_empty(inst, SAEmptyOptions{cfg.search.state_budget});
    return r;
  }
  require_goods(inst);
  bool all_aware = true;
  for (AgentId i = 0; i < inst.num_agents(); ++i) all_aware = all_aware && profile.is_aware(i);

  auto attempt = [&](const std::string& name, const Allocation& alloc) {
    if (!passes(inst, alloc, notion, profile)) return false;
    r.method = name;
    r.allocation = alloc;
    return true;
  };

  if (notion.awareness == Awareness::SA && all_aware && picking_base(notion.base)) {
    if (notion.base == Base::EFL ? attempt("efl", sa_efl_allocate(inst))
                                 : attempt("picking", run_picking(inst, notion)))
      return r;
  }
  if (notion.awareness == Awareness::SA && notion.base == Base::EF1) {
    if (auto fast = two_agent_mixed_fast_path(inst); fast && attempt("two-agent", *fast)) return r;
  }
  if (notion.awareness == Awareness::None && picking_base(notion.base) && binary_equal(inst) &&
      attempt("picking", run_picking(inst, notion)))
    return r;
  r.allocation = run_exact_or_brute(inst, notion, profile, cfg, r.method);
  return r;
}

inline SolveResult solve(const Instance& inst, const Notion& notion, const SolveConfig& cfg, std::ostream& err) {
  const auto profile = AwarenessProfile::from(inst);
  if (!cfg.require_sim && cfg.method != "brute")
    throw ValidationError("--no-require-sim is only supported by --method brute");
  SolveResult r;
  r.method = cfg.method;
  auto explicit_check = [&](const Allocation& alloc) {
    if (!passes(inst, alloc, notion, profile))
      throw ValidationError("method '" + cfg.method + "' does not guarantee " + notion.name() +
                            " on this instance (its output fails the check)");
    return alloc;
  };
  if (cfg.method == "auto") {
    r = auto_solve(inst, notion, profile, cfg);
  } else if (cfg.method == "picking") {
    r.allocation = explicit_check(run_picking(inst, notion));
  } else if (cfg.method == "efl") {
    r.allocation = explicit_check(sa_efl_allocate(inst));
  } else if (cfg.method == "exact") {
    r.allocation = exact_solve(inst, notion, profile, cfg.search);
  } else if (cfg.method == "brute") {
    r.allocation = brute_force_solve(inst, notion, profile, cfg.require_sim, cfg.brute_cap);
  } else if (cfg.method == "sa-empty") {
    if (notion.base != Base::SAEmpty) throw ValidationError("--method sa-empty needs --notion sa-empty");
    r.allocation = solve_sa_empty(inst, SAEmptyOptions{cfg.search.state_budget});
  } else {
    throw ValidationError("unknown method '" + cfg.method + "'");
  }
  if (cfg.verbose) err << "method: " << r.method << "\n";
  return r;
}

inline std::vector<std::array<std::size_t, 3>> parse_triples(const std::string& text) {
  std::vector<std::array<std::size_t, 3>> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.empty()) continue;
    std::stringstream parts(group);
    std::string part;
    std::vector<std::size_t> values;
    while (std::getline(parts, part, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoul(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw ValidationError("malformed triple '" + group + "'");
      }
    }
    if (values.size() != 3) throw ValidationError("triple '" + group + "' does not have three elements");
    out.push_back({values[0], values[1], values[2]});
  }
  return out;
}

inline RX3CInput::Mode parse_mode(const std::string& mode) {
  if (mode == "strict") return RX3CInput::Mode::Strict;
  if (mode == "relaxed") return RX3CInput::Mode::Relaxed;
  if (mode == "regular") return RX3CInput::Mode::Regular;
  throw ValidationError("unknown RX3C mode '" + mode + "'");
}

}  // namespace detail

/// Runs the CLI on argv, writing to out/err; returns the exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair division of indivisible goods under social-impact maximization"};
  app.name("fdsi");
  app.require_subcommand(1);

  // check
  std::string instance_path, allocation_path;
  NotionArgs notion_args;
  bool require_sim = true;
  auto* check_cmd = app.add_subcommand("check", "Check an allocation; prints a JSON verdict");
  check_cmd->add_option("instance", instance_path, "instance JSON")->required();
  check_cmd->add_option("allocation", allocation_path, "allocation JSON")->required();
  add_notion_options(check_cmd, notion_args);
  check_cmd->add_flag("--require-sim,!--no-require-sim", require_sim, "exit 1 unless the allocation is also SIM")
      ->capture_default_str();

  // solve
  detail::SolveConfig cfg;
  std::optional<std::uint64_t> budget;
  std::string strategy = "bfs";
  auto* solve_cmd = app.add_subcommand("solve", "Find a SIM and fair allocation");
  solve_cmd->add_option("instance", instance_path, "instance JSON")->required();
  add_notion_options(solve_cmd, notion_args);
  solve_cmd->add_option("-m,--method", cfg.method, "picking, efl, exact, brute, sa-empty or auto")
      ->capture_default_str();
  solve_cmd->add_flag("--require-sim,!--no-require-sim", cfg.require_sim, "restrict to SIM allocations")
      ->capture_default_str();
  solve_cmd->add_option("--budget", budget, std::string("state budget; default from ") + kBudgetEnv + " or 1e7");
  solve_cmd->add_option("--brute-cap", cfg.brute_cap, "most allocations brute force may scan")->capture_default_str();
  solve_cmd->add_option("--threads", cfg.search.threads, "worker threads for exact search")->capture_default_str();
  solve_cmd->add_option("--strategy", strategy, "exact search order: bfs or dfs")->capture_default_str();
  solve_cmd->add_flag("-v,--verbose", cfg.verbose, "report the method used on stderr");

  // brute
  bool count = false;
  bool brute_sim = true;
  std::uint64_t brute_cap = kDefaultBruteForceCap;
  auto* brute_cmd = app.add_subcommand("brute", "Exhaustive oracle: first allocation or a count");
  brute_cmd->add_option("instance", instance_path, "instance JSON")->required();
  add_notion_options(brute_cmd, notion_args);
  brute_cmd->add_flag("--count", count, "print the number of passing allocations");
  brute_cmd->add_flag("--require-sim,!--no-require-sim", brute_sim, "restrict to SIM allocations")
      ->capture_default_str();
  brute_cmd->add_option("--cap", brute_cap, "most allocations to scan")->capture_default_str();

  // gen
  std::string output_path, reference_path;
  std::vector<Value> weights;
  std::string alpha_text = "1/2";
  bool duplicate_large = false;
  std::size_t ell = 0;
  std::string triples_text, mode_text = "strict", source_path, example_name;
  bool tef1_mode = false;
  RandomSpec random_spec;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance");
  gen_cmd->require_subcommand(1);
  gen_cmd->add_option("-o,--output", output_path, "output file (default stdout)");
  auto add_weights = [&](CLI::App* c) {
    c->add_option("--weights", weights, "comma-separated positive integers")->delimiter(',')->required();
  };
  auto* g_part = gen_cmd->add_subcommand("partition-ef1", "two-agent Partition gadget");
  add_weights(g_part);
  g_part->add_flag("--duplicate-large", duplicate_large, "two copies of each large item (tEF1 variant)");
  auto* g_mixed = gen_cmd->add_subcommand("mixed-awareness", "one unaware agent, Partition gadget");
  add_weights(g_mixed);
  auto* g_alpha = gen_cmd->add_subcommand("alpha-sa", "alpha-SA Partition gadget");
  add_weights(g_alpha);
  g_alpha->add_option("--alpha", alpha_text, "alpha as P/Q")->capture_default_str();
  auto* g_wsa = gen_cmd->add_subcommand("wsa", "WSA Equitable Partition gadget");
  add_weights(g_wsa);
  g_wsa->add_flag("--duplicate-large", duplicate_large, "two copies of each large item (tEF1 variant)");
  auto* g_x3c = gen_cmd->add_subcommand("x3c-sa-empty", "SA-empty exact-cover gadget");
  g_x3c->add_option("--ell", ell, "l (3l elements, 3l triples)")->required();
  g_x3c->add_option("--triples", triples_text, "0-based triples: 'a,b,c;d,e,f;...'")->required();
  g_x3c->add_option("--mode", mode_text, "strict, relaxed or regular")->capture_default_str();
  auto* g_ef = gen_cmd->add_subcommand("ef-embedding", "embed a binary EF instance");
  g_ef->add_option("--source", source_path, "binary-valuation instance JSON")->required();
  g_ef->add_flag("--tef1", tef1_mode, "two special items per agent");
  auto* g_example = gen_cmd->add_subcommand("example", "canned instance");
  g_example->add_option("name", example_name, "canned instance name")->required();
  g_example->add_option("--alpha", alpha_text, "alpha for alpha-nonexistence")->capture_default_str();
  g_example->add_option("--reference", reference_path, "also write the reference allocation here");
  auto* g_random = gen_cmd->add_subcommand("random", "seeded random goods instance");
  g_random->add_option("--agents", random_spec.n)->capture_default_str();
  g_random->add_option("--items", random_spec.m)->capture_default_str();
  g_random->add_option("--v-max", random_spec.v_max)->capture_default_str();
  g_random->add_option("--s-max", random_spec.s_max)->capture_default_str();
  g_random->add_option("--w-max", random_spec.w_max)->capture_default_str();
  g_random->add_option("--seed", random_spec.seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (check_cmd->parsed()) {
      const Instance inst = io::load_instance(instance_path);
      const Allocation alloc = io::load_allocation(inst, allocation_path);
      const auto notion = parse_notion(notion_args);
      if (!notion) throw ValidationError("check needs a concrete notion, not 'any'");
      const bool complete = validate_allocation(inst, alloc, true).empty();
      std::optional<Verdict> sim;
      if (complete) sim = is_sim(inst, alloc);
      const Verdict fair = check(inst, alloc, *notion);
      out << io::dump(io::verdict_to_json(inst, sim, fair));
      const bool sim_ok = sim && sim->fair;
      return fair.fair && (!require_sim || sim_ok) ? kOk : kNegative;
    }

    if (solve_cmd->parsed()) {
      const Instance inst = io::load_instance(instance_path);
      const auto notion = parse_notion(notion_args);
      if (!notion) throw ValidationError("solve needs a concrete notion, not 'any'");
      cfg.search.state_budget = budget ? *budget : default_state_budget();
      if (strategy == "bfs")
        cfg.search.strategy = SearchStrategy::BreadthFirst;
      else if (strategy == "dfs")
        cfg.search.strategy = SearchStrategy::DepthFirst;
      else
        throw ValidationError("unknown strategy '" + strategy + "'");
      const auto result = detail::solve(inst, *notion, cfg, err);
      if (!result.allocation) {
        err << "no " << (cfg.require_sim ? "SIM and " : "") << notion->name() << " allocation exists\n";
        return kNegative;
      }
      out << io::dump(io::allocation_to_json(inst, *result.allocation));
      return kOk;
    }

    if (brute_cmd->parsed()) {
      const Instance inst = io::load_instance(instance_path);
      const auto notion = parse_notion(notion_args);
      const auto profile = AwarenessProfile::from(inst);
      if (count) {
        const auto n = brute_force_count(inst, notion, profile, brute_sim, brute_cap);
        out << io::dump(io::Json{{"count", n}});
        return n > 0 ? kOk : kNegative;
      }
      std::optional<Allocation> found;
      if (notion) {
        found = brute_force_solve(inst, *notion, profile, brute_sim, brute_cap);
      } else {
        auto it = fdsi::detail::bounded_enumerator(inst, brute_sim, brute_cap);
        found = it.next();
      }
      if (!found) {
        err << "no allocation passes\n";
        return kNegative;
      }
      out << io::dump(io::allocation_to_json(inst, *found));
      return kOk;
    }

    if (gen_cmd->parsed()) {
      Instance inst;
      std::optional<Allocation> reference;
      const PartitionInput partition{weights};
      if (g_part->parsed()) {
        inst = gen_partition_ef1(partition, duplicate_large);
      } else if (g_mixed->parsed()) {
        inst = gen_mixed_awareness(partition);
      } else if (g_alpha->parsed()) {
        inst = gen_alpha_sa(partition, Rational::parse(alpha_text));
      } else if (g_wsa->parsed()) {
        inst = gen_wsa(partition, duplicate_large);
      } else if (g_x3c->parsed()) {
        inst = gen_x3c_sa_empty(RX3CInput{ell, detail::parse_triples(triples_text)}, detail::parse_mode(mode_text));
      } else if (g_ef->parsed()) {
        inst = gen_ef_embedding(io::load_instance(source_path), tef1_mode);
      } else if (g_example->parsed()) {
        auto c = example_name == "alpha-nonexistence" ? canned_alpha_nonexistence(Rational::parse(alpha_text))
                                                      : canned(example_name);
        inst = std::move(c.instance);
        reference = std::move(c.reference);
        if (!reference_path.empty()) {
          if (!reference) throw ValidationError("'" + example_name + "' has no reference allocation");
          io::write_file(reference_path, io::dump(io::allocation_to_json(inst, *reference)));
        }
      } else if (g_random->parsed()) {
        inst = gen_random(random_spec);
      }
      const std::string text = io::dump(io::instance_to_json(inst));
      if (output_path.empty())
        out << text;
      else
        io::write_file(output_path, text);
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const GoodsOnlyError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {  // UnsupportedNotion, malformed rationals
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace fdsi::cli
