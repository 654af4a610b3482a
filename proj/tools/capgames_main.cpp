// capgames: transform capital games to utility games and back, solve for
// equilibria, verify profiles, and simulate repeated game sequences.
//
// Exit codes: 0 success, 1 verification negative, 2 input error,
// 3 unsupported capability.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capgames/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotEquilibrium = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUnsupported = 3;

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw capgames::ParseError("cannot open '" + path + "' for writing");
  }
  out << text << '\n';
}

// Broadcasts a single flag value to all players.
template <typename T>
std::vector<T> per_player(std::vector<T> values, int n,
                          const std::string& flag) {
  if (values.size() == 1 && n > 1) {
    return std::vector<T>(static_cast<std::size_t>(n), values.front());
  }
  if (values.size() != static_cast<std::size_t>(n)) {
    throw capgames::ValidationError(
        flag + ": expected 1 or " + std::to_string(n) + " values, got " +
        std::to_string(values.size()));
  }
  return values;
}

int cmd_transform(const std::string& in_path, const std::string& out_path,
                  const std::string& direction,
                  const std::vector<double>& endowments,
                  const std::vector<std::string>& dynamics,
                  const std::vector<double>& durations) {
  capgames::GameVariant game = capgames::parse_game_file(in_path);
  if (std::holds_alternative<capgames::CapitalGame>(game)) {
    if (!direction.empty() && direction != "capital-to-standard") {
      throw capgames::ValidationError(
          "input is a capital game; direction must be capital-to-standard");
    }
    const auto& G = std::get<capgames::CapitalGame>(game);
    write_output(out_path,
                 capgames::game_to_json(capgames::to_standard_game(G)));
    return kExitOk;
  }
  if (!direction.empty() && direction != "standard-to-capital") {
    throw capgames::ValidationError(
        "input is a standard game; direction must be standard-to-capital");
  }
  const auto& g = std::get<capgames::StandardGame>(game);
  if (endowments.empty() || dynamics.empty()) {
    throw capgames::ValidationError(
        "standard-to-capital requires --endowments and --dynamics");
  }
  const int n = g.num_players();
  std::vector<capgames::DynamicsSpec> specs;
  for (const auto& name : per_player(dynamics, n, "--dynamics")) {
    specs.push_back(capgames::dynamics_by_name(name));
  }
  std::vector<double> w = per_player(endowments, n, "--endowments");
  std::vector<double> dt =
      durations.empty() ? std::vector<double>{}
                        : per_player(durations, n, "--durations");
  capgames::CapitalGame G =
      capgames::from_standard_game(g, std::move(w), std::move(specs), dt);
  write_output(out_path, capgames::game_to_json(G));
  return kExitOk;
}

int cmd_solve(const std::string& in_path, const std::string& out_path,
              bool pure, bool mixed, double eps) {
  capgames::GameVariant game = capgames::parse_game_file(in_path);
  const bool both = pure == mixed;  // neither or both flags: full coverage
  std::vector<capgames::EquilibriumResult> results;
  bool pure_only = false;
  std::string note;

  const int n = std::holds_alternative<capgames::StandardGame>(game)
                    ? std::get<capgames::StandardGame>(game).num_players()
                    : std::get<capgames::CapitalGame>(game).num_players();
  const bool want_mixed = mixed || both;
  if (want_mixed && n > 2) {
    if (mixed && !both) {
      throw capgames::ArityError(
          "mixed-equilibrium solving supports at most 2 players; this game "
          "has " + std::to_string(n));
    }
    // Full solve on n>2 degrades to pure enumeration, flagged below.
  }

  if (std::holds_alternative<capgames::CapitalGame>(game)) {
    const auto& G = std::get<capgames::CapitalGame>(game);
    if (pure && !both) {
      results = capgames::enumerate_pure_growth_equilibria(G);
      for (auto& r : results) {
        auto v = capgames::verify_growth_equilibrium(G, r.profile, eps);
        r.per_player_regret = v.per_player_regret;
        r.source = capgames::EquilibriumSource::kViaCorrespondence;
      }
      pure_only = true;
      note = "pure enumeration only (requested)";
    } else {
      capgames::GrowthSolveReport report = capgames::growth_equilibria(G, eps);
      results = std::move(report.equilibria);
      pure_only = report.pure_only;
      note = report.note;
    }
  } else {
    const auto& g = std::get<capgames::StandardGame>(game);
    if (pure && !both) {
      results = capgames::enumerate_pure_nash(g);
      pure_only = true;
      note = "pure enumeration only (requested)";
    } else if (n == 2) {
      results = capgames::support_enumeration_2p(g, eps);
    } else {
      results = capgames::enumerate_pure_nash(g);
      pure_only = true;
      note = n == 1 ? "single-player game: listed equilibria are the pure "
                      "optima; any mixture over them is also an equilibrium"
                    : "mixed-equilibrium search covers 2-player games only; "
                      "pure equilibria listed";
    }
  }
  write_output(out_path,
               capgames::equilibria_to_json(results, eps, pure_only, note));
  return kExitOk;
}

int cmd_verify(const std::string& in_path, const std::string& profile_path,
               double eps) {
  capgames::GameVariant game = capgames::parse_game_file(in_path);
  const auto profiles = capgames::parse_profiles_any_file(profile_path);
  if (profiles.empty()) {
    throw capgames::ValidationError("no profiles to verify");
  }
  bool all_ok = true;
  std::cout.precision(17);
  std::cout << "[";
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    bool ok = false;
    std::vector<double> regrets;
    if (std::holds_alternative<capgames::CapitalGame>(game)) {
      const auto& G = std::get<capgames::CapitalGame>(game);
      auto v = capgames::verify_growth_equilibrium(G, profiles[k], eps);
      ok = v.is_equilibrium;
      regrets = v.per_player_regret;
    } else {
      const auto& g = std::get<capgames::StandardGame>(game);
      for (int i = 0; i < g.num_players(); ++i) {
        regrets.push_back(
            std::max(0.0, capgames::regret(g, profiles[k], i)));
      }
      ok = capgames::is_nash(g, profiles[k], eps);
    }
    all_ok = all_ok && ok;
    std::cout << (k ? ",\n " : "\n ")
              << "{\"is_equilibrium\": " << (ok ? "true" : "false")
              << ", \"per_player_regret\": [";
    for (std::size_t i = 0; i < regrets.size(); ++i) {
      std::cout << (i ? ", " : "") << regrets[i];
    }
    std::cout << "]}";
  }
  std::cout << "\n]" << std::endl;
  return all_ok ? kExitOk : kExitNotEquilibrium;
}

int cmd_simulate(const std::string& in_path, const std::string& profile_path,
                 std::int64_t rounds, std::int64_t trials, std::uint64_t seed,
                 const std::string& report_path,
                 const std::string& trajectories_path) {
  capgames::GameVariant game = capgames::parse_game_file(in_path);
  if (!std::holds_alternative<capgames::CapitalGame>(game)) {
    throw capgames::ValidationError(
        "simulation needs a capital game (dynamics drive the sequence); got "
        "a standard game");
  }
  const auto& G = std::get<capgames::CapitalGame>(game);
  capgames::MixedStrategyProfile s =
      capgames::parse_profile_file(profile_path);
  capgames::SimulationConfig cfg;
  cfg.rounds = rounds;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.record_trajectories = !trajectories_path.empty();
  capgames::SimulationReport report = capgames::run(G, s, cfg);
  write_output(report_path,
               capgames::report_to_json(report, G.player_names()));
  if (!trajectories_path.empty()) {
    std::ofstream out(trajectories_path);
    if (!out) {
      throw capgames::ParseError("cannot open '" + trajectories_path +
                                 "' for writing");
    }
    capgames::write_trajectories_csv(out, report);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capital games: growth equilibria, transforms, simulation"};
  app.require_subcommand(1);

  std::string in_path = "-";
  std::string out_path = "-";
  std::string direction;
  std::vector<double> endowments;
  std::vector<std::string> dynamics;
  std::vector<double> durations;

  auto* transform = app.add_subcommand(
      "transform", "convert between capital and standard games");
  transform->add_option("--in", in_path, "input game file, - for stdin");
  transform->add_option("--out", out_path, "output file, - for stdout");
  transform->add_option("--direction", direction,
                        "capital-to-standard or standard-to-capital "
                        "(inferred from input when omitted)")
      ->check(CLI::IsMember({"capital-to-standard", "standard-to-capital"}));
  transform->add_option("--endowments", endowments,
                        "per-player endowments (standard-to-capital)");
  transform->add_option("--dynamics", dynamics,
                        "per-player dynamics: additive, multiplicative, sqrt");
  transform->add_option("--durations", durations, "per-player durations");

  bool pure = false;
  bool mixed = false;
  double eps = 1e-8;
  auto* solve = app.add_subcommand("solve", "enumerate equilibria");
  solve->add_option("--in", in_path, "input game file, - for stdin");
  solve->add_option("--out", out_path, "output file, - for stdout");
  solve->add_flag("--pure", pure, "pure equilibria only");
  solve->add_flag("--mixed", mixed, "include mixed equilibria (2 players)");
  solve->add_option("--eps", eps, "acceptance tolerance for regrets");

  std::string profile_path;
  double verify_eps = 1e-9;
  auto* verify = app.add_subcommand("verify", "check a strategy profile");
  verify->add_option("--in", in_path, "input game file, - for stdin");
  verify->add_option("--profile", profile_path,
                     "profile document or solve output")
      ->required();
  verify->add_option("--eps", verify_eps, "equilibrium tolerance");

  std::int64_t rounds = 1000;
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
  std::string report_path = "-";
  std::string trajectories_path;
  auto* simulate =
      app.add_subcommand("simulate", "run a repeated game sequence");
  simulate->add_option("--in", in_path, "capital game file, - for stdin");
  simulate->add_option("--profile", profile_path, "strategy profile document")
      ->required();
  simulate->add_option("--rounds", rounds, "rounds per trial");
  simulate->add_option("--trials", trials, "independent trials");
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--report", report_path, "report file, - for stdout");
  simulate->add_option("--trajectories", trajectories_path,
                       "write checkpoint trajectories CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (transform->parsed()) {
      return cmd_transform(in_path, out_path, direction, endowments, dynamics,
                           durations);
    }
    if (solve->parsed()) {
      return cmd_solve(in_path, out_path, pure, mixed, eps);
    }
    if (verify->parsed()) {
      return cmd_verify(in_path, profile_path, verify_eps);
    }
    if (simulate->parsed()) {
      return cmd_simulate(in_path, profile_path, rounds, trials, seed,
                          report_path, trajectories_path);
    }
  } catch (const capgames::ArityError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUnsupported;
  } catch (const capgames::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitInputError;
  }
  return kExitOk;
}
