#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capgames/capital_game.hpp"
#include "capgames/game.hpp"

namespace capgames {

enum class EquilibriumSource { kDirect, kViaCorrespondence };

struct EquilibriumResult {
  MixedStrategyProfile profile;
  bool pure = false;  // true iff every strategy vector is degenerate
  std::vector<double> per_player_regret;  // clamped at 0
  EquilibriumSource source = EquilibriumSource::kDirect;
};

// Profiles from adjacent supports closer than this (max norm over all
// strategy entries) are collapsed into one equilibrium.
inline constexpr double kEquilibriumDedupTol = 1e-7;

// Exhaustive check of every action profile.  Results sorted by canonical
// profile index; possibly empty.  Throws SizeError past profile_cap.
std::vector<EquilibriumResult> enumerate_pure_nash(
    const StandardGame& g, double tie_tol = kTieTol,
    std::int64_t profile_cap = 10'000'000);

// Pure growth equilibria of a capital game; equal to pure Nash enumeration
// on the linearized game, and invariant under any substitution of
// per-player dynamics.
std::vector<EquilibriumResult> enumerate_pure_growth_equilibria(
    const CapitalGame& G, double tie_tol = kTieTol,
    std::int64_t profile_cap = 10'000'000);

// Support enumeration for 2-player games: iterates equal-size support
// pairs in increasing size then lexicographic order, solves each
// indifference-and-normalization linear system by Gaussian elimination
// with partial pivoting (pivots below 1e-12 mark the pair singular and
// skipped), keeps solutions with nonnegative probabilities and no
// profitable deviation within eps, and deduplicates near-identical
// profiles.  Deterministic output order.
std::vector<EquilibriumResult> support_enumeration_2p(const StandardGame& g,
                                                      double eps = 1e-8,
                                                      int action_cap = 12);

struct GrowthSolveReport {
  std::vector<EquilibriumResult> equilibria;
  // True when mixed equilibria were not searched (player count != 2); the
  // note says what was and was not covered.
  bool pure_only = false;
  std::string note;
};

// Growth equilibria of G via the linearized standard game: pure equilibria
// for any player count, pure + mixed for two players.  Every result is
// re-verified directly on G; the reported regrets come from that direct
// growth-rate check.
GrowthSolveReport growth_equilibria(const CapitalGame& G, double eps = 1e-8);

struct GrowthVerification {
  bool is_equilibrium = false;
  std::vector<double> per_player_regret;  // clamped at 0
};

// Direct check on the capital game: for each player, the gain available
// from the best unilateral pure deviation in time-average growth.  Agrees
// with is_nash on to_standard_game(G) at the same eps.
GrowthVerification verify_growth_equilibrium(const CapitalGame& G,
                                             const MixedStrategyProfile& s,
                                             double eps);

}  // namespace capgames
