#pragma once

#include <cstdint>
#include <vector>

#include "capgames/capital_game.hpp"
#include "capgames/rng.hpp"

namespace capgames {

struct SimulationConfig {
  std::int64_t rounds = 1;   // T
  std::int64_t trials = 1;   // M
  std::uint64_t seed = 0;
  bool record_trajectories = false;
};

struct TrajectoryPoint {
  std::int64_t round = 0;
  std::int64_t trial = 0;
  int player = 0;
  double capital = 0.0;
};

// Repeated-game statistics.  Per-trial data is kept in trial order;
// identical (game, strategy, config) inputs produce bit-identical reports.
struct SimulationReport {
  std::uint64_t seed = 0;
  std::int64_t rounds = 0;
  std::int64_t trials = 0;
  std::int64_t absorbed_trials = 0;

  // Per player.
  std::vector<double> theoretical_growth;
  // Mean over completed trials of (v(w_T) - v(w_0)) / (T * dt); absorbed
  // trials are excluded.
  std::vector<double> time_avg_growth_estimate;
  // Standard error of that mean (0 when fewer than two completed trials).
  std::vector<double> time_avg_growth_stderr;

  // Logarithmically spaced checkpoint rounds (always include 0 and T).
  std::vector<std::int64_t> checkpoint_rounds;
  // Trials still unabsorbed at each checkpoint.
  std::vector<std::int64_t> checkpoint_live_trials;
  // [player][checkpoint] mean capital over live trials.
  std::vector<std::vector<double>> ensemble_avg_capital;

  // [player][trial] capital when the trial ended (completion or absorption).
  std::vector<std::vector<double>> final_capital;
  // [player][trial] realized growth rate over the rounds the trial ran.
  std::vector<std::vector<double>> trial_growth;
  std::vector<bool> trial_absorbed;

  // Captured at checkpoint rounds when record_trajectories is set.
  std::vector<TrajectoryPoint> trajectories;
};

struct StepResult {
  std::vector<double> endowments;
  ActionProfile realized;
  // Set when a player's updated endowment left their dynamics domain; that
  // player's returned endowment is NaN.
  bool domain_exit = false;
  int exiting_player = -1;
};

// One round: samples an action per player from s (independent draws, player
// order), then updates each endowment so the per-profile growth relative to
// the game's original endowment is held fixed:
//   multiplicative  w * (x_i(a) / w_i0)
//   additive        w + (x_i(a) - w_i0)
//   custom          v_inverse(v(w) + v(x_i(a)) - v(w_i0))
StepResult step(const CapitalGame& G, const std::vector<double>& w_current,
                const MixedStrategyProfile& s, SplitMix64& rng);

// Runs cfg.trials independent trials of cfg.rounds rounds each, with
// per-trial seeds derived from cfg.seed.  Wealth is accumulated in the
// linearized domain, so multiplicative trajectories cannot overflow.
SimulationReport run(const CapitalGame& G, const MixedStrategyProfile& s,
                     const SimulationConfig& cfg);

// Log-spaced rounds used for ensemble averages and trajectory capture.
std::vector<std::int64_t> checkpoint_rounds(std::int64_t rounds);

struct ErgodicityRow {
  double estimate = 0.0;
  double theoretical = 0.0;
  double abs_error = 0.0;
  double stderr_estimate = 0.0;
};

// Simulated time-average growth against the analytic expectation, per
// player.
std::vector<ErgodicityRow> ergodicity_check(const CapitalGame& G,
                                            const MixedStrategyProfile& s,
                                            const SimulationConfig& cfg);

}  // namespace capgames
