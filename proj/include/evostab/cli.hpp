#pragma once

// Command-line front end:
//   analyze  GAME [--strategy LIT | --pure-sweep]
//   barrier  GAME --strategy LIT (--mutants LIT... [--eps RAT...] | --uniform M)
//   simulate GAME --incumbent LIT [--mutants LIT...] [--shares X...] [--dt] [--t-end] [--out CSV]
//   certify  GAME --strategy LIT [--denom D] [--m M] [--eps RAT...] [--escalate]
//   gen      example1 | example2 | hawk-dove [V C] | random K SEED
//
// Exit codes: 0 ok, 2 input error, 3 indeterminate ESS, 4 precondition failure.

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "evostab/barriers.hpp"
#include "evostab/dynamics.hpp"
#include "evostab/generators.hpp"
#include "evostab/io.hpp"
#include "evostab/oracle.hpp"
#include "evostab/report.hpp"
#include "evostab/stability.hpp"

namespace evostab::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kIndeterminate = 3, kPrecondition = 4 };

namespace detail {

inline std::vector<MixedStrategy> parse_strategies(const std::vector<std::string>& literals) {
  std::vector<MixedStrategy> out;
  for (const auto& s : literals) out.push_back(parse_strategy(s));
  return out;
}

inline std::vector<Rational> parse_rationals(const std::vector<std::string>& items, const std::string& field) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(parse_rational(s, field));
  return out;
}

// Vector options keep bracketed literals whole; CLI11 would otherwise split
// "[1/2,1/2]" into separate items.
inline CLI::Option* literal_list(CLI::Option* opt) { return opt->expected(1, 1 << 20)->allow_extra_args(false); }

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolutionary stability against multiple mutations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string game_file, strategy, incumbent, out_file, gen_name;
  std::vector<std::string> mutants, eps, shares_text, gen_args;
  bool pure_sweep = false, escalate = false;
  std::size_t uniform_m = 0, m = 2;
  int denom = 4, max_denominator = 64, stride = 10;
  double dt = 0.01, t_end = 200.0, tol = kDefaultOutcomeTolerance;

  auto* analyze = app.add_subcommand("analyze", "Stability flags for one strategy or every pure strategy");
  analyze->add_option("game", game_file, "Game JSON file")->required();
  analyze->add_option("--strategy", strategy, "Strategy literal, e.g. [1/2,1/2]");
  analyze->add_flag("--pure-sweep", pure_sweep, "Analyze every pure strategy (default)");
  analyze->add_option("--max-denominator", max_denominator, "Finest grid for the boundary ESS test");

  auto* barrier = app.add_subcommand("barrier", "Invasion barrier for a mutation set, or a uniform barrier");
  barrier->add_option("game", game_file)->required();
  barrier->add_option("--strategy", strategy, "Incumbent strategy literal")->required();
  detail::literal_list(barrier->add_option("--mutants", mutants, "Mutant strategy literals"));
  detail::literal_list(barrier->add_option("--eps", eps, "Also evaluate the margins at these proportions"));
  barrier->add_option("--uniform", uniform_m, "Uniform barrier for M arbitrary mutants");

  auto* simulate = app.add_subcommand("simulate", "Replicator dynamics of an invasion");
  simulate->add_option("game", game_file)->required();
  simulate->add_option("--incumbent", incumbent)->required();
  detail::literal_list(simulate->add_option("--mutants", mutants));
  detail::literal_list(
      simulate->add_option("--shares", shares_text, "Mutant shares (incumbent gets the rest) or all m+1 shares"));
  simulate->add_option("--dt", dt);
  simulate->add_option("--t-end", t_end);
  simulate->add_option("--stride", stride, "Record every N steps");
  simulate->add_option("--tol", tol, "Outcome classification tolerance");
  simulate->add_option("--out", out_file, "CSV path (stdout when omitted)");

  auto* certify = app.add_subcommand("certify", "Brute-force search for a multiple-mutation counterexample");
  certify->add_option("game", game_file)->required();
  certify->add_option("--strategy", strategy)->required();
  certify->add_option("--denom", denom);
  certify->add_option("--m", m);
  detail::literal_list(certify->add_option("--eps", eps));
  certify->add_flag("--escalate", escalate, "Run the default escalation schedule instead of one resolution");

  auto* gen = app.add_subcommand("gen", "Print a named game as JSON");
  gen->add_option("name", gen_name, "example1 | example2 | hawk-dove | random")->required();
  gen->add_option("args", gen_args, "hawk-dove: V C; random: K SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*gen) {
      SymmetricGame g;
      if (gen_name == "example1") {
        g = example1_game();
      } else if (gen_name == "example2") {
        g = example2_game();
      } else if (gen_name == "hawk-dove") {
        Rational v = 2, c = 4;
        if (gen_args.size() == 2) {
          v = parse_rational(gen_args[0], "V");
          c = parse_rational(gen_args[1], "C");
        } else if (!gen_args.empty()) {
          err << "hawk-dove takes V and C\n";
          return kInputError;
        }
        if (!(v > 0 && v < c)) {
          err << "hawk-dove needs 0 < V < C\n";
          return kInputError;
        }
        g = hawk_dove_game(v, c);
      } else if (gen_name == "random") {
        if (gen_args.size() != 2) {
          err << "random takes K and SEED\n";
          return kInputError;
        }
        const long k = std::stol(gen_args[0]);
        const auto seed = std::stoull(gen_args[1]);
        if (k < 1) {
          err << "K must be positive\n";
          return kInputError;
        }
        g = random_game(static_cast<std::size_t>(k), seed);
      } else {
        err << "unknown game name: " << gen_name << "\n";
        return kInputError;
      }
      out << game_to_json(g).dump() << "\n";
      return kOk;
    }

    const SymmetricGame g = load_game(game_file);

    if (*analyze) {
      AnalysisDocument doc;
      doc.game = g;
      doc.source = game_file;
      const EssOptions opts{max_denominator};
      std::vector<MixedStrategy> targets;
      if (!strategy.empty() && !pure_sweep) {
        targets.push_back(parse_strategy(strategy));
      } else {
        for (std::size_t i = 0; i < g.k(); ++i) targets.push_back(MixedStrategy::pure(g.k(), i));
      }
      for (const auto& p : targets) doc.results.push_back({p, evostab::analyze(g, p, opts)});
      out << to_json(doc).dump(2) << "\n";
      return kOk;
    }

    if (*barrier) {
      const MixedStrategy p = parse_strategy(strategy);
      json result = {{"incumbent", strategy_to_json(p)}};
      if (uniform_m > 0) {
        result["uniform"] = to_json(uniform_barrier(g, p, uniform_m));
      } else {
        if (mutants.empty()) {
          err << "barrier needs --mutants or --uniform\n";
          return kInputError;
        }
        const MutationSet ms(p, detail::parse_strategies(mutants));
        result["mutants"] = evostab::detail::array_of(ms.mutants(), strategy_to_json);
        result["result"] = to_json(max_box_barrier(g, ms));
        if (!eps.empty()) {
          const auto e = detail::parse_rationals(eps, "eps");
          const auto h = h_values(g, ms, e);
          json hs = json::array();
          for (const auto& x : h) hs.push_back(to_string(x));
          result["eps"] = eps;
          result["h_values"] = std::move(hs);
          result["robust"] = std::all_of(h.begin(), h.end(), [](const Rational& x) { return x > 0; }) &&
                             std::all_of(e.begin(), e.end(), [](const Rational& x) { return x > 0; });
        }
      }
      out << result.dump(2) << "\n";
      return kOk;
    }

    if (*simulate) {
      InvasionScenario sc;
      sc.game = g;
      sc.strategies.push_back(parse_strategy(incumbent));
      for (auto& r : detail::parse_strategies(mutants)) sc.strategies.push_back(std::move(r));
      std::vector<double> shares;
      for (const auto& s : shares_text) shares.push_back(std::stod(s));
      const std::size_t n = sc.strategies.size();
      if (shares.size() == n - 1) {
        double rest = 1.0;
        for (double x : shares) rest -= x;
        shares.insert(shares.begin(), rest);
      } else if (shares.empty() && n == 1) {
        shares = {1.0};
      } else if (shares.size() != n) {
        err << "expected " << n - 1 << " mutant shares or " << n << " shares\n";
        return kInputError;
      }
      sc.initial_shares = std::move(shares);
      sc.dt = dt;
      sc.t_end = t_end;
      sc.stride = stride;
      const auto traj = evostab::simulate(sc, tol);
      if (out_file.empty()) {
        write_trajectory_csv(out, traj);
      } else {
        std::ofstream csv(out_file);
        if (!csv) {
          err << "cannot write " << out_file << "\n";
          return kInputError;
        }
        write_trajectory_csv(csv, traj);
        out << json{{"outcome", to_string(traj.outcome)}, {"final_shares", traj.shares.back()}, {"csv", out_file}}.dump()
            << "\n";
      }
      return kOk;
    }

    if (*certify) {
      const MixedStrategy p = parse_strategy(strategy);
      const auto eps_list = eps.empty() ? default_eps_list() : detail::parse_rationals(eps, "eps");
      CertificationEntry entry;
      entry.strategy = p;
      if (escalate) {
        const auto res = escalate_mess_search(g, p, default_escalation(), eps_list);
        entry.denom = res.resolution.denom;
        entry.m = res.resolution.m;
        entry.counterexample = res.counterexample;
      } else {
        const GridSpec spec{denom, eps_list, m};
        entry.denom = denom;
        entry.m = m;
        entry.counterexample = search_mess_counterexample(g, p, spec);
      }
      entry.eps_list = eps_list;
      out << to_json(entry).dump(2) << "\n";
      return kOk;
    }
  } catch (const IndeterminateError& e) {
    err << "indeterminate: " << e.what() << "\n";
    return kIndeterminate;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidStrategy& e) {
    err << "invalid strategy: " << e.what() << "\n";
    return kInputError;
  } catch (const InfeasibleProportions& e) {
    err << "infeasible proportions: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "number out of range: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "bad number: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace evostab::cli
