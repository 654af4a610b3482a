#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "capgames/capital_game.hpp"
#include "capgames/errors.hpp"
#include "capgames/rng.hpp"
#include "capgames/simulate.hpp"
#include "test_support.hpp"

using namespace capgames;
namespace ts = testsupport;

namespace {

constexpr double kCoinFlipGrowth = -0.05268025782891315;  // (ln1.5+ln0.6)/2

CapitalGame coin_flip(DynamicsSpec d) {
  return CapitalGame({2}, {{150.0, 60.0}}, {100.0}, {std::move(d)});
}

const MixedStrategyProfile kHalf({{0.5, 0.5}});

}  // namespace

TEST_CASE("splitmix64 reference outputs") {
  // Golden vectors recomputed independently from the published SplitMix64
  // algorithm (Steele/Lea/Vigna); seed 0 reproduces the reference stream,
  // pinning the generator identity across platforms.
  SplitMix64 zero(0);
  CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
  CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(zero.next() == 0x06C45D188009454FULL);

  SplitMix64 other(1234567);
  CHECK(other.next() == 0x599ED017FB08FC85ULL);
  CHECK(other.next() == 0x2C73F08458540FA5ULL);

  // Doubles come from the high 53 bits, uniform on [0, 1).
  SplitMix64 d(0);
  CHECK(d.next_double() == doctest::Approx(0.8833108082136426).epsilon(1e-15));
  for (int k = 0; k < 1000; ++k) {
    const double u = d.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("sample_index walks the inverse cdf") {
  // With probabilities (0.2, 0.3, 0.5) the draw u selects by cumulative
  // bands [0,.2), [.2,.5), [.5,1).  Empirical frequencies must match.
  SplitMix64 rng(99);
  const std::vector<double> p = {0.2, 0.3, 0.5};
  std::vector<int> hits(3, 0);
  const int draws = 200000;
  for (int k = 0; k < draws; ++k) {
    const int idx = sample_index(rng, p);
    REQUIRE(idx >= 0);
    REQUIRE(idx < 3);
    ++hits[static_cast<std::size_t>(idx)];
  }
  for (int j = 0; j < 3; ++j) {
    const double freq =
        static_cast<double>(hits[static_cast<std::size_t>(j)]) / draws;
    CHECK(freq == doctest::Approx(p[static_cast<std::size_t>(j)]).epsilon(0.03));
  }

  // Zero-probability actions are never drawn.
  const std::vector<double> gap = {0.5, 0.0, 0.5};
  for (int k = 0; k < 10000; ++k) {
    CHECK(sample_index(rng, gap) != 1);
  }
}

TEST_CASE("derive_stream_seed gives distinct per-trial streams") {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t m = 0; m < 100; ++m) {
    seeds.push_back(derive_stream_seed(42, m));
  }
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
  // And it is a pure function of (master, index).
  CHECK(derive_stream_seed(42, 7) == derive_stream_seed(42, 7));
  CHECK(derive_stream_seed(42, 7) != derive_stream_seed(43, 7));
}

TEST_CASE("checkpoint_rounds: log-spaced, includes 0, 10, and T") {
  const auto grid = checkpoint_rounds(10000);
  CHECK(grid.front() == 0);
  CHECK(grid.back() == 10000);
  CHECK(std::find(grid.begin(), grid.end(), 1) != grid.end());
  CHECK(std::find(grid.begin(), grid.end(), 10) != grid.end());
  CHECK(std::find(grid.begin(), grid.end(), 100) != grid.end());
  CHECK(std::find(grid.begin(), grid.end(), 1000) != grid.end());
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
  // Bounded size: roughly 8 per decade.
  CHECK(grid.size() < 40);

  CHECK(checkpoint_rounds(1) == std::vector<std::int64_t>{0, 1});
  const auto tiny = checkpoint_rounds(5);
  CHECK(tiny.front() == 0);
  CHECK(tiny.back() == 5);
}

TEST_CASE("step: multiplicative growth factors are held fixed") {
  const CapitalGame g = coin_flip(DynamicsSpec::multiplicative());
  SplitMix64 rng(1);

  // Degenerate strategies make the draw deterministic.
  const auto up = MixedStrategyProfile::degenerate({2}, {0});
  const auto down = MixedStrategyProfile::degenerate({2}, {1});

  auto r = step(g, {100.0}, up, rng);
  CHECK(r.realized == ActionProfile{0});
  CHECK(r.endowments == std::vector<double>{150.0});
  CHECK_FALSE(r.domain_exit);

  // Second round from 150: the factor 1.5 applies to current wealth.
  r = step(g, {150.0}, up, rng);
  CHECK(r.endowments == std::vector<double>{225.0});

  r = step(g, {100.0}, down, rng);
  CHECK(r.endowments == std::vector<double>{60.0});
}

TEST_CASE("step: additive increments are held fixed") {
  const CapitalGame g = coin_flip(DynamicsSpec::additive());
  SplitMix64 rng(1);
  const auto down = MixedStrategyProfile::degenerate({2}, {1});

  auto r = step(g, {100.0}, down, rng);
  CHECK(r.endowments == std::vector<double>{60.0});
  r = step(g, {60.0}, down, rng);
  CHECK(r.endowments == std::vector<double>{20.0});
  // Additive wealth may go negative; that is not a domain exit.
  r = step(g, {20.0}, down, rng);
  CHECK(r.endowments == std::vector<double>{-20.0});
  CHECK_FALSE(r.domain_exit);
}

TEST_CASE("step: domain exit flags the offending player") {
  // sqrt dynamics: v = sqrt on (0, inf).  One bad round from w=0.25 with
  // payoff increment sqrt(0.04) - sqrt(1) = -0.8 drives v-wealth to
  // 0.5 - 0.8 < 0: out of the image.
  const CapitalGame g({1}, {{0.04}}, {1.0}, {dynamics_by_name("sqrt")});
  SplitMix64 rng(1);
  const auto only = MixedStrategyProfile::degenerate({1}, {0});
  const auto r = step(g, {0.25}, only, rng);
  CHECK(r.domain_exit);
  CHECK(r.exiting_player == 0);
  CHECK(std::isnan(r.endowments[0]));

  // Current endowments must be inside the domain up front.
  const CapitalGame mult = coin_flip(DynamicsSpec::multiplicative());
  SplitMix64 rng2(1);
  CHECK_THROWS_AS(step(mult, {-5.0}, kHalf, rng2), DomainError);
  CHECK_THROWS_AS(step(mult, {1.0, 2.0}, kHalf, rng2), ShapeError);
}

TEST_CASE("run: config validation and report shape") {
  const CapitalGame g = coin_flip(DynamicsSpec::multiplicative());
  SimulationConfig cfg;
  cfg.rounds = 0;
  CHECK_THROWS_AS(run(g, kHalf, cfg), ValidationError);
  cfg.rounds = 10;
  cfg.trials = 0;
  CHECK_THROWS_AS(run(g, kHalf, cfg), ValidationError);

  cfg.trials = 7;
  const auto report = run(g, kHalf, cfg);
  CHECK(report.rounds == 10);
  CHECK(report.trials == 7);
  CHECK(report.theoretical_growth.size() == 1);
  CHECK(report.time_avg_growth_estimate.size() == 1);
  CHECK(report.checkpoint_rounds.size() ==
        report.checkpoint_live_trials.size());
  CHECK(report.ensemble_avg_capital[0].size() ==
        report.checkpoint_rounds.size());
  CHECK(report.final_capital[0].size() == 7);
  CHECK(report.trial_growth[0].size() == 7);
  CHECK(report.trial_absorbed.size() == 7);
  CHECK(report.trajectories.empty());  // not requested

  // Round-0 ensemble average is exactly the endowment.
  CHECK(report.ensemble_avg_capital[0][0] == 100.0);
}

TEST_CASE("run: identical config gives bit-identical reports") {
  const CapitalGame g = coin_flip(DynamicsSpec::multiplicative());
  SimulationConfig cfg;
  cfg.rounds = 500;
  cfg.trials = 40;
  cfg.seed = 777;
  cfg.record_trajectories = true;

  const auto a = run(g, kHalf, cfg);
  const auto b = run(g, kHalf, cfg);
  CHECK(a.time_avg_growth_estimate == b.time_avg_growth_estimate);
  CHECK(a.time_avg_growth_stderr == b.time_avg_growth_stderr);
  CHECK(a.ensemble_avg_capital == b.ensemble_avg_capital);
  CHECK(a.final_capital == b.final_capital);
  CHECK(a.trial_growth == b.trial_growth);
  REQUIRE(a.trajectories.size() == b.trajectories.size());
  for (std::size_t k = 0; k < a.trajectories.size(); ++k) {
    CHECK(a.trajectories[k].capital == b.trajectories[k].capital);
  }

  // A different seed changes the realization.
  cfg.seed = 778;
  const auto c = run(g, kHalf, cfg);
  CHECK(a.time_avg_growth_estimate != c.time_avg_growth_estimate);
}

TEST_CASE("run: T=1 M=1 degenerate profile matches a single step") {
  for (const auto& d : {DynamicsSpec::additive(),
                        DynamicsSpec::multiplicative()}) {
    const CapitalGame g = coin_flip(d);
    const auto down = MixedStrategyProfile::degenerate({2}, {1});
    SimulationConfig cfg;
    cfg.rounds = 1;
    cfg.trials = 1;
    cfg.seed = 4242;

    const auto report = run(g, down, cfg);

    SplitMix64 rng(derive_stream_seed(cfg.seed, 0));
    const auto one = step(g, {100.0}, down, rng);
    CHECK(report.final_capital[0][0] ==
          doctest::Approx(one.endowments[0]).epsilon(1e-12));
    CHECK(one.endowments[0] == 60.0);
  }
}

TEST_CASE("run: deterministic game gives zero ergodicity error exactly") {
  // One action, additive increment +0.5 from w=100: every quantity is a
  // dyadic rational, so the estimate equals the theoretical rate with no
  // rounding at all.
  const CapitalGame g({1}, {{100.5}}, {100.0}, {DynamicsSpec::additive()});
  const auto s = MixedStrategyProfile::degenerate({1}, {0});
  SimulationConfig cfg;
  cfg.rounds = 100;
  cfg.trials = 9;
  const auto rows = ergodicity_check(g, s, cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].theoretical == 0.5);
  CHECK(rows[0].estimate == 0.5);
  CHECK(rows[0].abs_error == 0.0);
  CHECK(rows[0].stderr_estimate == 0.0);
}

TEST_CASE("run: multiplicative log-wealth equals the sum of log factors") {
  // Replays the documented RNG streams (SplitMix64, per-trial seed
  // derivation) and accumulates ln-capital independently; the report's
  // final capitals must match bit for bit.
  const CapitalGame g = coin_flip(DynamicsSpec::multiplicative());
  SimulationConfig cfg;
  cfg.rounds = 200;
  cfg.trials = 25;
  cfg.seed = 31337;
  const auto report = run(g, kHalf, cfg);

  const double inc[2] = {std::log(150.0 / 100.0), std::log(60.0 / 100.0)};
  for (std::int64_t m = 0; m < cfg.trials; ++m) {
    SplitMix64 rng(derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(m)));
    double y = std::log(100.0);
    for (std::int64_t t = 0; t < cfg.rounds; ++t) {
      y += inc[sample_index(rng, kHalf.strategy(0))];
    }
    CHECK(report.final_capital[0][m] == std::exp(y));
    CHECK(report.trial_growth[0][m] ==
          (y - std::log(100.0)) / static_cast<double>(cfg.rounds));
  }
}

TEST_CASE("run: absorption stops trials and excludes them from estimates") {
  // sqrt dynamics: v-wealth starts at 1 and takes +1.0/-0.5 steps, so two
  // opening down moves absorb the trial but the drift rescues most others.
  const CapitalGame g({2}, {{4.0, 0.25}}, {1.0}, {dynamics_by_name("sqrt")});
  SimulationConfig cfg;
  cfg.rounds = 50;
  cfg.trials = 200;
  cfg.seed = 5;
  const auto report = run(g, kHalf, cfg);

  CHECK(report.absorbed_trials > 0);
  CHECK(report.absorbed_trials < 200);  // up-drift: some trials survive
  std::int64_t flagged = 0;
  for (std::int64_t m = 0; m < 200; ++m) {
    if (report.trial_absorbed[static_cast<std::size_t>(m)]) {
      ++flagged;
      CHECK(std::isnan(report.final_capital[0][static_cast<std::size_t>(m)]));
    } else {
      CHECK(std::isfinite(
          report.final_capital[0][static_cast<std::size_t>(m)]));
    }
  }
  CHECK(flagged == report.absorbed_trials);
  CHECK(std::isfinite(report.time_avg_growth_estimate[0]));
  // Live-trial counts never increase along the checkpoint grid.
  for (std::size_t c = 1; c < report.checkpoint_live_trials.size(); ++c) {
    CHECK(report.checkpoint_live_trials[c] <=
          report.checkpoint_live_trials[c - 1]);
  }
  CHECK(report.checkpoint_live_trials.back() ==
        200 - report.absorbed_trials);
}

TEST_CASE("ergodicity: coin-flip estimates sit near the analytic value") {
  SimulationConfig cfg;
  cfg.rounds = 2000;
  cfg.trials = 300;
  cfg.seed = 2718;

  const auto mult = ergodicity_check(
      coin_flip(DynamicsSpec::multiplicative()), kHalf, cfg);
  CHECK(mult[0].theoretical ==
        doctest::Approx(kCoinFlipGrowth).epsilon(1e-12));
  CHECK(mult[0].abs_error < 3.0 * mult[0].stderr_estimate);

  const auto add = ergodicity_check(
      coin_flip(DynamicsSpec::additive()), kHalf, cfg);
  CHECK(add[0].theoretical == 5.0);
  CHECK(add[0].abs_error < 3.0 * add[0].stderr_estimate);
}

TEST_CASE("ergodicity error shrinks as rounds grow") {
  const CapitalGame g = coin_flip(DynamicsSpec::multiplicative());
  std::vector<double> errors;
  std::vector<double> stderrs;
  for (std::int64_t rounds : {100, 1000, 10000}) {
    SimulationConfig cfg;
    cfg.rounds = rounds;
    cfg.trials = 200;
    cfg.seed = 1618;
    const auto rows = ergodicity_check(g, kHalf, cfg);
    errors.push_back(rows[0].abs_error);
    stderrs.push_back(rows[0].stderr_estimate);
  }
  // Monotone decrease within two standard errors of each estimate.
  for (std::size_t k = 1; k < errors.size(); ++k) {
    CHECK(errors[k] <= errors[k - 1] + 2.0 * (stderrs[k] + stderrs[k - 1]));
  }
  // And the standard error itself shrinks roughly as 1/sqrt(T).
  CHECK(stderrs[2] < stderrs[0]);
}

TEST_CASE("coin flip: ensemble average grows while the median decays") {
  const CapitalGame g = coin_flip(DynamicsSpec::multiplicative());
  SimulationConfig cfg;
  cfg.rounds = 1000;
  cfg.trials = 4000;
  cfg.seed = 112358;
  const auto report = run(g, kHalf, cfg);

  // Early rounds: the ensemble mean tracks 100 * 1.05^t (t=10 here).
  const auto& grid = report.checkpoint_rounds;
  const auto it = std::find(grid.begin(), grid.end(), 10);
  REQUIRE(it != grid.end());
  const std::size_t c10 = static_cast<std::size_t>(it - grid.begin());
  const double expected10 = 100.0 * std::pow(1.05, 10);
  CHECK(report.ensemble_avg_capital[0][c10] ==
        doctest::Approx(expected10).epsilon(0.10));
  CHECK(report.ensemble_avg_capital[0][c10] > 100.0);

  // Long run: the median trial has decayed far below the endowment.
  std::vector<double> finals = report.final_capital[0];
  std::sort(finals.begin(), finals.end());
  const double median = finals[finals.size() / 2];
  CHECK(median < 100.0);
  CHECK(median < 1.0);  // decisive decay, not a borderline draw
}
