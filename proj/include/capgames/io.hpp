#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "capgames/capital_game.hpp"
#include "capgames/game.hpp"
#include "capgames/simulate.hpp"
#include "capgames/solvers.hpp"

namespace capgames {

using GameVariant = std::variant<StandardGame, CapitalGame>;

// Game documents are JSON with an explicit schema_version, canonical key
// order on output, and strict parsing: unknown fields are rejected and all
// validation failures are reported together.
//
//   {"schema_version": 1, "kind": "standard"|"capital",
//    "players": [...], "actions": [[...], ...], "payoffs": [[...], ...],
//    // capital games only:
//    "endowments": [...], "durations": [...],
//    "dynamics": ["additive" | "multiplicative" | {"custom": "sqrt"}, ...]}
GameVariant parse_game(std::istream& in);
GameVariant parse_game_text(const std::string& text);
// path "-" reads stdin.
GameVariant parse_game_file(const std::string& path);

std::string game_to_json(const StandardGame& g);
std::string game_to_json(const CapitalGame& G);
std::string game_to_json(const GameVariant& game);

// Strategy profile document: {"schema_version": 1, "strategies": [[...]]}.
MixedStrategyProfile parse_profile_text(const std::string& text);
MixedStrategyProfile parse_profile_file(const std::string& path);
std::string profile_to_json(const MixedStrategyProfile& s);

// Accepts either a profile document or an equilibria document (the output
// of the solve command), yielding every profile it contains.
std::vector<MixedStrategyProfile> parse_profiles_any(const std::string& text);
std::vector<MixedStrategyProfile> parse_profiles_any_file(
    const std::string& path);

std::string equilibria_to_json(const std::vector<EquilibriumResult>& results,
                               double eps, bool pure_only,
                               const std::string& note);

std::string report_to_json(const SimulationReport& report,
                           const std::vector<std::string>& player_names);

// Flat table, header "round,trial,player,capital".
void write_trajectories_csv(std::ostream& out, const SimulationReport& report);

}  // namespace capgames
