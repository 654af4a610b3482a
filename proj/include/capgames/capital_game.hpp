#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capgames/dynamics.hpp"
#include "capgames/game.hpp"

namespace capgames {

// A lottery with real-valued outcomes and a duration.
struct Gamble {
  struct Outcome {
    double value = 0.0;
    double probability = 0.0;
  };
  std::vector<Outcome> outcomes;
  double duration = 1.0;
};

// Finite game whose payoffs are capital: per-player flat payoff tensors in
// the canonical layout shared with StandardGame, a positive endowment per
// player, per-player durations (default 1.0) and dynamics.
//
// Construction validates shape, finiteness, durations, and the domain
// invariant: a player with domain-restricted dynamics must have their
// endowment and every payoff inside that domain.  Violations are reported
// all together, one line per offending (player, profile) pair.
class CapitalGame {
 public:
  CapitalGame(std::vector<int> action_counts,
              std::vector<std::vector<double>> payoffs,
              std::vector<double> endowments,
              std::vector<DynamicsSpec> dynamics,
              std::vector<double> durations = {},
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
  double endowment(int player) const { return endowments_.at(player); }
  const std::vector<double>& endowments() const { return endowments_; }
  double duration(int player) const { return durations_.at(player); }
  const std::vector<double>& durations() const { return durations_; }
  const DynamicsSpec& dynamics(int player) const {
    return dynamics_.at(player);
  }
  const std::vector<DynamicsSpec>& dynamics() const { return dynamics_; }

  std::int64_t profile_index(const ActionProfile& a) const;
  ActionProfile profile_at(std::int64_t index) const;

  const std::vector<std::string>& player_names() const { return player_names_; }
  const std::vector<std::vector<std::string>>& action_names() const {
    return action_names_;
  }

  // Same game with every player's dynamics replaced (payoffs, endowments and
  // durations kept).  Revalidates the domain invariant.
  CapitalGame with_dynamics(std::vector<DynamicsSpec> dynamics) const;

  void check_profile(const MixedStrategyProfile& s) const;
  void check_player(int player) const;

 private:
  std::vector<int> action_counts_;
  std::vector<std::vector<double>> payoffs_;
  std::vector<double> endowments_;
  std::vector<DynamicsSpec> dynamics_;
  std::vector<double> durations_;
  std::vector<std::string> player_names_;
  std::vector<std::vector<std::string>> action_names_;
  std::int64_t num_profiles_ = 1;
};

// True iff all endowments and all payoff entries are strictly positive.
bool is_positive(const CapitalGame& G);

// Expected growth rate of player's capital under s:
//   sum_a growth_rate(d_i, x_i(a), w_i, dt_i) * s(a).
double time_average_growth(const CapitalGame& G, const MixedStrategyProfile& s,
                           int player);

// Standard game with u_i(a) = (v_i(x_i(a)) - v_i(w_i)) / dt_i; labels
// carried over.  Growth equilibria of G are the Nash equilibria of the
// result.
StandardGame to_standard_game(const CapitalGame& G);

// Reverse construction: x_i(a) = v_inverse_i(u_i(a) * dt_i + v_i(w_i)).
// Additive with dt = 1 gives u + w; multiplicative gives e^u * w (always
// positive).  Requires all endowments > 0 and inside the dynamics domain;
// throws DomainError listing every (player, profile) whose utility cannot
// be mapped back into the dynamics domain.
CapitalGame from_standard_game(const StandardGame& g,
                               std::vector<double> endowments,
                               std::vector<DynamicsSpec> dynamics,
                               std::vector<double> durations = {});

// The gamble player i faces under profile s: outcomes (x_i(a), s(a)) over
// the support of s, equal-valued outcomes merged by summing probabilities
// (exact equality, first-occurrence order), duration dt_i.
Gamble gamble_from_response(const CapitalGame& G, int player,
                            const MixedStrategyProfile& s);

}  // namespace capgames
