#include "capgames/capital_game.hpp"

#include <cmath>
#include <sstream>

namespace capgames {

namespace {

// One line per violation so hand-authored game files get usable diagnostics.
struct Violation {
  int player;
  std::int64_t profile;  // -1 for the endowment itself
  double value;
};

void append_violation_report(std::ostringstream& os,
                             const std::vector<Violation>& violations,
                             const std::vector<DynamicsSpec>& dynamics) {
  for (const auto& v : violations) {
    const auto& d = dynamics[static_cast<std::size_t>(v.player)];
    os << "\n  player " << v.player << ": ";
    if (v.profile < 0) {
      os << "endowment " << v.value;
    } else {
      os << "payoff " << v.value << " at profile " << v.profile;
    }
    os << " outside " << d.name() << " domain (" << d.domain_lo() << ", "
       << d.domain_hi() << ")";
  }
}

}  // namespace

CapitalGame::CapitalGame(std::vector<int> action_counts,
                         std::vector<std::vector<double>> payoffs,
                         std::vector<double> endowments,
                         std::vector<DynamicsSpec> dynamics,
                         std::vector<double> durations,
                         std::vector<std::string> player_names,
                         std::vector<std::vector<std::string>> action_names)
    : action_counts_(std::move(action_counts)),
      payoffs_(std::move(payoffs)),
      endowments_(std::move(endowments)),
      dynamics_(std::move(dynamics)),
      durations_(std::move(durations)),
      player_names_(std::move(player_names)),
      action_names_(std::move(action_names)) {
  num_profiles_ = checked_profile_count(action_counts_);
  const std::size_t n = action_counts_.size();
  if (payoffs_.size() != n) {
    throw ValidationError("need exactly one payoff tensor per player");
  }
  if (endowments_.size() != n) {
    throw ValidationError("need exactly one endowment per player");
  }
  if (dynamics_.size() != n) {
    throw ValidationError("need exactly one dynamics spec per player");
  }
  if (durations_.empty()) {
    durations_.assign(n, 1.0);
  } else if (durations_.size() != n) {
    throw ValidationError("need exactly one duration per player");
  }
  std::ostringstream errs;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (payoffs_[i].size() != static_cast<std::size_t>(num_profiles_)) {
      errs << "\n  payoffs[" << i << "] has " << payoffs_[i].size()
           << " entries, expected " << num_profiles_;
      any = true;
      continue;
    }
    for (std::size_t k = 0; k < payoffs_[i].size(); ++k) {
      if (!std::isfinite(payoffs_[i][k])) {
        errs << "\n  payoffs[" << i << "][" << k << "] is not finite";
        any = true;
      }
    }
    if (!std::isfinite(endowments_[i])) {
      errs << "\n  endowment for player " << i << " is not finite";
      any = true;
    }
    if (!(durations_[i] > 0.0) || !std::isfinite(durations_[i])) {
      errs << "\n  duration for player " << i << " must be positive, got "
           << durations_[i];
      any = true;
    }
  }
  if (any) {
    throw ValidationError("invalid capital game:" + errs.str());
  }
  normalize_labels(action_counts_, player_names_, action_names_);

  std::vector<Violation> violations;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = dynamics_[i];
    if (!d.in_domain(endowments_[i])) {
      violations.push_back({static_cast<int>(i), -1, endowments_[i]});
    }
    for (std::size_t k = 0; k < payoffs_[i].size(); ++k) {
      if (!d.in_domain(payoffs_[i][k])) {
        violations.push_back({static_cast<int>(i),
                              static_cast<std::int64_t>(k), payoffs_[i][k]});
      }
    }
  }
  if (!violations.empty()) {
    std::ostringstream os;
    os << "capital game violates dynamics domains:";
    append_violation_report(os, violations, dynamics_);
    throw ValidationError(os.str());
  }
}

std::int64_t CapitalGame::profile_index(const ActionProfile& a) const {
  return flat_profile_index(action_counts_, a);
}

ActionProfile CapitalGame::profile_at(std::int64_t index) const {
  return profile_from_index(action_counts_, index);
}

CapitalGame CapitalGame::with_dynamics(
    std::vector<DynamicsSpec> dynamics) const {
  return CapitalGame(action_counts_, payoffs_, endowments_,
                     std::move(dynamics), durations_, player_names_,
                     action_names_);
}

void CapitalGame::check_profile(const MixedStrategyProfile& s) const {
  if (s.num_players() != num_players()) {
    throw ShapeError("strategy profile player count does not match game");
  }
  for (int i = 0; i < num_players(); ++i) {
    if (s.strategy(i).size() != static_cast<std::size_t>(action_counts_[i])) {
      std::ostringstream os;
      os << "strategy for player " << i << " has " << s.strategy(i).size()
         << " entries, expected " << action_counts_[i];
      throw ShapeError(os.str());
    }
  }
}

void CapitalGame::check_player(int player) const {
  if (player < 0 || player >= num_players()) {
    std::ostringstream os;
    os << "player index " << player << " out of range [0, " << num_players()
       << ")";
    throw ShapeError(os.str());
  }
}

bool is_positive(const CapitalGame& G) {
  for (int i = 0; i < G.num_players(); ++i) {
    if (!(G.endowment(i) > 0.0)) return false;
    for (double x : G.payoffs(i)) {
      if (!(x > 0.0)) return false;
    }
  }
  return true;
}

double time_average_growth(const CapitalGame& G, const MixedStrategyProfile& s,
                           int player) {
  G.check_player(player);
  G.check_profile(s);
  const auto& counts = G.action_counts();
  const int n = G.num_players();
  const DynamicsSpec& d = G.dynamics(player);
  const double w = G.endowment(player);
  const double dt = G.duration(player);
  double total = 0.0;
  ActionProfile a(counts.size(), 0);
  for (std::int64_t idx = 0; idx < G.num_profiles(); ++idx) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) {
      prob *= s.strategy(i)[static_cast<std::size_t>(a[i])];
    }
    if (prob != 0.0) {
      total += growth_rate(d, G.payoff(player, idx), w, dt) * prob;
    }
    for (int i = n - 1; i >= 0; --i) {
      if (++a[i] < counts[i]) break;
      a[i] = 0;
    }
  }
  return total;
}

StandardGame to_standard_game(const CapitalGame& G) {
  const int n = G.num_players();
  std::vector<std::vector<double>> utilities(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const DynamicsSpec& d = G.dynamics(i);
    const double w = G.endowment(i);
    const double dt = G.duration(i);
    auto& u = utilities[static_cast<std::size_t>(i)];
    u.reserve(static_cast<std::size_t>(G.num_profiles()));
    for (double x : G.payoffs(i)) {
      u.push_back(d.rate(x, w) / dt);
    }
  }
  return StandardGame(G.action_counts(), std::move(utilities),
                      G.player_names(), G.action_names());
}

CapitalGame from_standard_game(const StandardGame& g,
                               std::vector<double> endowments,
                               std::vector<DynamicsSpec> dynamics,
                               std::vector<double> durations) {
  const int n = g.num_players();
  if (endowments.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("need exactly one endowment per player");
  }
  if (dynamics.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("need exactly one dynamics spec per player");
  }
  if (durations.empty()) {
    durations.assign(static_cast<std::size_t>(n), 1.0);
  } else if (durations.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("need exactly one duration per player");
  }
  for (int i = 0; i < n; ++i) {
    const auto& w = endowments[static_cast<std::size_t>(i)];
    if (!(w > 0.0) ||
        !dynamics[static_cast<std::size_t>(i)].in_domain(w)) {
      std::ostringstream os;
      os << "endowment for player " << i << " must be positive and inside the "
         << dynamics[static_cast<std::size_t>(i)].name() << " domain, got "
         << w;
      throw ValidationError(os.str());
    }
    if (!(durations[static_cast<std::size_t>(i)] > 0.0)) {
      std::ostringstream os;
      os << "duration for player " << i << " must be positive";
      throw ValidationError(os.str());
    }
  }

  std::vector<std::vector<double>> capital(static_cast<std::size_t>(n));
  std::vector<Violation> violations;
  for (int i = 0; i < n; ++i) {
    const DynamicsSpec& d = dynamics[static_cast<std::size_t>(i)];
    const double w = endowments[static_cast<std::size_t>(i)];
    const double dt = durations[static_cast<std::size_t>(i)];
    auto& x = capital[static_cast<std::size_t>(i)];
    x.reserve(static_cast<std::size_t>(g.num_profiles()));
    for (std::int64_t k = 0; k < g.num_profiles(); ++k) {
      const double z = g.payoff(i, k) * dt;
      if (d.kind() == DynamicsKind::kCustom &&
          !d.in_image(z + d.linearize(w))) {
        violations.push_back({i, k, g.payoff(i, k)});
        x.push_back(0.0);  // placeholder, never used
        continue;
      }
      const double xi = d.capital_for_rate(z, w);
      if (!std::isfinite(xi) || !d.in_domain(xi)) {
        violations.push_back({i, k, g.payoff(i, k)});
        x.push_back(0.0);  // placeholder, never used
        continue;
      }
      x.push_back(xi);
    }
  }
  if (!violations.empty()) {
    std::ostringstream os;
    os << "utilities cannot be mapped into the dynamics domain:";
    for (const auto& v : violations) {
      os << "\n  player " << v.player << ": utility " << v.value
         << " at profile " << v.profile << " has no preimage under "
         << dynamics[static_cast<std::size_t>(v.player)].name()
         << " linearization";
    }
    throw DomainError(os.str());
  }
  return CapitalGame(g.action_counts(), std::move(capital),
                     std::move(endowments), std::move(dynamics),
                     std::move(durations), g.player_names(), g.action_names());
}

Gamble gamble_from_response(const CapitalGame& G, int player,
                            const MixedStrategyProfile& s) {
  G.check_player(player);
  G.check_profile(s);
  const auto& counts = G.action_counts();
  const int n = G.num_players();
  Gamble gamble;
  gamble.duration = G.duration(player);
  ActionProfile a(counts.size(), 0);
  for (std::int64_t idx = 0; idx < G.num_profiles(); ++idx) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) {
      prob *= s.strategy(i)[static_cast<std::size_t>(a[i])];
    }
    if (prob > 0.0) {
      const double value = G.payoff(player, idx);
      bool merged = false;
      for (auto& o : gamble.outcomes) {
        if (o.value == value) {  // exact merge keeps the op deterministic
          o.probability += prob;
          merged = true;
          break;
        }
      }
      if (!merged) {
        gamble.outcomes.push_back({value, prob});
      }
    }
    for (int i = n - 1; i >= 0; --i) {
      if (++a[i] < counts[i]) break;
      a[i] = 0;
    }
  }
  return gamble;
}

}  // namespace capgames
