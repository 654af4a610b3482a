#include "capgames/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace capgames {

namespace {

void check_config(const SimulationConfig& cfg) {
  if (cfg.rounds < 1) {
    throw ValidationError("simulation needs at least 1 round");
  }
  if (cfg.trials < 1) {
    throw ValidationError("simulation needs at least 1 trial");
  }
}

}  // namespace

std::vector<std::int64_t> checkpoint_rounds(std::int64_t rounds) {
  std::vector<std::int64_t> points = {0};
  // Eight points per decade; the grid hits every power of ten exactly.
  for (int k = 0;; ++k) {
    const std::int64_t r =
        static_cast<std::int64_t>(std::llround(std::pow(10.0, k / 8.0)));
    if (r > rounds) break;
    if (r != points.back()) points.push_back(r);
  }
  if (points.back() != rounds) points.push_back(rounds);
  return points;
}

StepResult step(const CapitalGame& G, const std::vector<double>& w_current,
                const MixedStrategyProfile& s, SplitMix64& rng) {
  G.check_profile(s);
  const int n = G.num_players();
  if (w_current.size() != static_cast<std::size_t>(n)) {
    throw ShapeError("current endowments length does not match player count");
  }
  for (int i = 0; i < n; ++i) {
    if (!G.dynamics(i).in_domain(w_current[static_cast<std::size_t>(i)])) {
      std::ostringstream os;
      os << "current endowment " << w_current[static_cast<std::size_t>(i)]
         << " for player " << i << " outside " << G.dynamics(i).name()
         << " domain";
      throw DomainError(os.str());
    }
  }
  StepResult out;
  out.realized.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.realized[static_cast<std::size_t>(i)] =
        sample_index(rng, s.strategy(i));
  }
  const std::int64_t idx = G.profile_index(out.realized);
  out.endowments.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const DynamicsSpec& d = G.dynamics(i);
    const double w = w_current[static_cast<std::size_t>(i)];
    const double x = G.payoff(i, idx);
    const double w0 = G.endowment(i);
    double next = 0.0;
    switch (d.kind()) {
      case DynamicsKind::kMultiplicative:
        next = w * (x / w0);
        break;
      case DynamicsKind::kAdditive:
        next = w + (x - w0);
        break;
      case DynamicsKind::kCustom: {
        const double y = d.linearize(w) + d.linearize(x) - d.linearize(w0);
        if (!d.in_image(y)) {
          out.domain_exit = true;
          if (out.exiting_player < 0) out.exiting_player = i;
          next = std::numeric_limits<double>::quiet_NaN();
        } else {
          next = d.delinearize(y);
        }
        break;
      }
    }
    if (!out.domain_exit && !d.in_domain(next)) {
      out.domain_exit = true;
      if (out.exiting_player < 0) out.exiting_player = i;
      next = std::numeric_limits<double>::quiet_NaN();
    }
    out.endowments[static_cast<std::size_t>(i)] = next;
  }
  return out;
}

SimulationReport run(const CapitalGame& G, const MixedStrategyProfile& s,
                     const SimulationConfig& cfg) {
  check_config(cfg);
  G.check_profile(s);
  const int n = G.num_players();
  const std::int64_t T = cfg.rounds;
  const std::int64_t M = cfg.trials;

  SimulationReport report;
  report.seed = cfg.seed;
  report.rounds = T;
  report.trials = M;
  report.checkpoint_rounds = checkpoint_rounds(T);
  const std::size_t n_checkpoints = report.checkpoint_rounds.size();
  report.checkpoint_live_trials.assign(n_checkpoints, 0);
  report.ensemble_avg_capital.assign(
      static_cast<std::size_t>(n), std::vector<double>(n_checkpoints, 0.0));
  report.final_capital.assign(static_cast<std::size_t>(n),
                              std::vector<double>(static_cast<std::size_t>(M),
                                                  0.0));
  report.trial_growth = report.final_capital;
  report.trial_absorbed.assign(static_cast<std::size_t>(M), false);
  report.theoretical_growth.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    report.theoretical_growth[static_cast<std::size_t>(i)] =
        time_average_growth(G, s, i);
  }

  // Per-player linearized payoff increments: v_i(x_i(a)) - v_i(w_i0).
  std::vector<std::vector<double>> increment(static_cast<std::size_t>(n));
  std::vector<double> v0(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const DynamicsSpec& d = G.dynamics(i);
    v0[static_cast<std::size_t>(i)] = d.linearize(G.endowment(i));
    auto& inc = increment[static_cast<std::size_t>(i)];
    inc.reserve(static_cast<std::size_t>(G.num_profiles()));
    for (double x : G.payoffs(i)) {
      inc.push_back(d.rate(x, G.endowment(i)));
    }
  }

  std::vector<double> y(static_cast<std::size_t>(n));
  ActionProfile realized(static_cast<std::size_t>(n));
  for (std::int64_t m = 0; m < M; ++m) {
    SplitMix64 rng(derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(m)));
    y = v0;
    std::size_t next_checkpoint = 0;
    std::int64_t rounds_run = 0;
    bool absorbed = false;

    const auto record_checkpoint = [&](std::int64_t round) {
      while (next_checkpoint < n_checkpoints &&
             report.checkpoint_rounds[next_checkpoint] == round) {
        ++report.checkpoint_live_trials[next_checkpoint];
        for (int i = 0; i < n; ++i) {
          // Round 0 is the endowment itself; later rounds come back out of
          // the linearized accumulator.
          const double capital =
              round == 0
                  ? G.endowment(i)
                  : G.dynamics(i).delinearize(y[static_cast<std::size_t>(i)]);
          report.ensemble_avg_capital[static_cast<std::size_t>(i)]
                                     [next_checkpoint] += capital;
          if (cfg.record_trajectories) {
            report.trajectories.push_back({round, m, i, capital});
          }
        }
        ++next_checkpoint;
      }
    };

    record_checkpoint(0);
    for (std::int64_t t = 1; t <= T; ++t) {
      for (int i = 0; i < n; ++i) {
        realized[static_cast<std::size_t>(i)] =
            sample_index(rng, s.strategy(i));
      }
      const std::int64_t idx = G.profile_index(realized);
      for (int i = 0; i < n; ++i) {
        y[static_cast<std::size_t>(i)] +=
            increment[static_cast<std::size_t>(i)]
                     [static_cast<std::size_t>(idx)];
      }
      for (int i = 0; i < n && !absorbed; ++i) {
        if (!G.dynamics(i).in_image(y[static_cast<std::size_t>(i)])) {
          absorbed = true;
        }
      }
      if (absorbed) {
        rounds_run = t;
        break;
      }
      rounds_run = t;
      record_checkpoint(t);
    }

    report.trial_absorbed[static_cast<std::size_t>(m)] = absorbed;
    if (absorbed) ++report.absorbed_trials;
    for (int i = 0; i < n; ++i) {
      const double yf = y[static_cast<std::size_t>(i)];
      report.final_capital[static_cast<std::size_t>(i)]
                          [static_cast<std::size_t>(m)] =
          G.dynamics(i).in_image(yf) ? G.dynamics(i).delinearize(yf)
                                     : std::numeric_limits<double>::quiet_NaN();
      report.trial_growth[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(m)] =
          (yf - v0[static_cast<std::size_t>(i)]) /
          (static_cast<double>(rounds_run) * G.duration(i));
    }
  }

  for (int i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < n_checkpoints; ++c) {
      const std::int64_t live = report.checkpoint_live_trials[c];
      auto& cell = report.ensemble_avg_capital[static_cast<std::size_t>(i)][c];
      cell = live > 0 ? cell / static_cast<double>(live)
                      : std::numeric_limits<double>::quiet_NaN();
    }
  }

  // Mean and SEM of per-trial growth over completed trials, trial order.
  report.time_avg_growth_estimate.assign(static_cast<std::size_t>(n), 0.0);
  report.time_avg_growth_stderr.assign(static_cast<std::size_t>(n), 0.0);
  const std::int64_t completed = M - report.absorbed_trials;
  if (completed > 0) {
    for (int i = 0; i < n; ++i) {
      double mean = 0.0;
      for (std::int64_t m = 0; m < M; ++m) {
        if (report.trial_absorbed[static_cast<std::size_t>(m)]) continue;
        mean += report.trial_growth[static_cast<std::size_t>(i)]
                                   [static_cast<std::size_t>(m)];
      }
      mean /= static_cast<double>(completed);
      double ss = 0.0;
      for (std::int64_t m = 0; m < M; ++m) {
        if (report.trial_absorbed[static_cast<std::size_t>(m)]) continue;
        const double dev = report.trial_growth[static_cast<std::size_t>(i)]
                                              [static_cast<std::size_t>(m)] -
                           mean;
        ss += dev * dev;
      }
      report.time_avg_growth_estimate[static_cast<std::size_t>(i)] = mean;
      report.time_avg_growth_stderr[static_cast<std::size_t>(i)] =
          completed > 1 ? std::sqrt(ss / static_cast<double>(completed - 1) /
                                    static_cast<double>(completed))
                        : 0.0;
    }
  }
  return report;
}

std::vector<ErgodicityRow> ergodicity_check(const CapitalGame& G,
                                            const MixedStrategyProfile& s,
                                            const SimulationConfig& cfg) {
  const SimulationReport report = run(G, s, cfg);
  std::vector<ErgodicityRow> rows;
  for (int i = 0; i < G.num_players(); ++i) {
    ErgodicityRow row;
    row.estimate = report.time_avg_growth_estimate[static_cast<std::size_t>(i)];
    row.theoretical = report.theoretical_growth[static_cast<std::size_t>(i)];
    row.abs_error = std::fabs(row.estimate - row.theoretical);
    row.stderr_estimate =
        report.time_avg_growth_stderr[static_cast<std::size_t>(i)];
    rows.push_back(row);
  }
  return rows;
}

}  // namespace capgames
