#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capgames/errors.hpp"

namespace capgames {

// Absolute tolerance for best-response ties and equilibrium verification.
inline constexpr double kTieTol = 1e-9;

// Tolerance for probability-vector normalization checks.
inline constexpr double kProbTol = 1e-9;

// One action index per player.
using ActionProfile = std::vector<int>;

// One probability vector per player over that player's actions.
// Immutable after construction; the constructor rejects vectors that are
// not distributions (entries in [0,1], sum within kProbTol of 1).
class MixedStrategyProfile {
 public:
  explicit MixedStrategyProfile(std::vector<std::vector<double>> strategies);

  // Degenerate profile putting mass 1 on the given action profile.
  static MixedStrategyProfile degenerate(const std::vector<int>& action_counts,
                                         const ActionProfile& a);
  // Uniform profile for the given shape.
  static MixedStrategyProfile uniform(const std::vector<int>& action_counts);

  int num_players() const { return static_cast<int>(strategies_.size()); }
  const std::vector<double>& strategy(int player) const {
    return strategies_.at(player);
  }
  const std::vector<std::vector<double>>& strategies() const {
    return strategies_;
  }

  // True iff every player's vector puts all mass on a single action.
  bool is_degenerate(double tol = kProbTol) const;

 private:
  std::vector<std::vector<double>> strategies_;
};

// Finite n-player normal-form game with payoffs in utility units.
//
// Payoff tensors are flat, one per player, indexed by the canonical
// action-profile index: the last player's action varies fastest, so
//   index(a) = ((a_0 * c_1 + a_1) * c_2 + a_2) * ...
// All modules and the file codec share this layout.
class StandardGame {
 public:
  StandardGame(std::vector<int> action_counts,
               std::vector<std::vector<double>> payoffs,
               std::vector<std::string> player_names = {},
               std::vector<std::vector<std::string>> action_names = {});

  int num_players() const { return static_cast<int>(action_counts_.size()); }
  const std::vector<int>& action_counts() const { return action_counts_; }
  std::int64_t num_profiles() const { return num_profiles_; }

  double payoff(int player, std::int64_t profile_index) const {
    return payoffs_[player][static_cast<std::size_t>(profile_index)];
  }
  const std::vector<double>& payoffs(int player) const {
    return payoffs_.at(player);
  }

  std::int64_t profile_index(const ActionProfile& a) const;
  ActionProfile profile_at(std::int64_t index) const;

  const std::vector<std::string>& player_names() const { return player_names_; }
  const std::vector<std::vector<std::string>>& action_names() const {
    return action_names_;
  }

  // Throws ShapeError unless the profile matches this game's shape.
  void check_profile(const MixedStrategyProfile& s) const;
  void check_profile(const ActionProfile& a) const;
  void check_player(int player) const;

 private:
  std::vector<int> action_counts_;
  std::vector<std::vector<double>> payoffs_;
  std::vector<std::string> player_names_;
  std::vector<std::vector<std::string>> action_names_;
  std::int64_t num_profiles_ = 1;
};

// Shared shape helpers (also used by CapitalGame, which mirrors this layout).
std::int64_t checked_profile_count(const std::vector<int>& action_counts);
std::int64_t flat_profile_index(const std::vector<int>& action_counts,
                                const ActionProfile& a);
ActionProfile profile_from_index(const std::vector<int>& action_counts,
                                 std::int64_t index);
// Fills default player/action labels ("p0", "a0", ...) when empty and
// validates label shapes otherwise.
void normalize_labels(const std::vector<int>& action_counts,
                      std::vector<std::string>& player_names,
                      std::vector<std::vector<std::string>>& action_names);

// Probability that profile a is realized under s: prod_i s_i(a_i).
double profile_probability(const MixedStrategyProfile& s,
                           const ActionProfile& a);

// E[u_i | s] = sum over action profiles of payoff times profile probability.
double expected_utility(const StandardGame& g, const MixedStrategyProfile& s,
                        int player);

struct BestResponse {
  double value = 0.0;                // max expected utility over pure actions
  std::vector<int> actions;          // every action within tie_tol of max
};

// Best response of `player` against the other players' strategies in `s`.
// Player's own entry in `s` is ignored.  Any mixture over the returned
// action set is a best response.
BestResponse best_response_set(const StandardGame& g,
                               const MixedStrategyProfile& s, int player,
                               double tie_tol = kTieTol);

// Raw (signed) gap between the best-response value and the realized
// expected utility.  Always >= -tie_tol; callers clamp to 0 for reports.
double regret(const StandardGame& g, const MixedStrategyProfile& s,
              int player);

// True iff every player's regret is <= eps.
bool is_nash(const StandardGame& g, const MixedStrategyProfile& s, double eps);

}  // namespace capgames
