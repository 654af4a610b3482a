#include "capgames/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace capgames {

namespace {

void check_distribution(const std::vector<double>& p, int player) {
  if (p.empty()) {
    std::ostringstream os;
    os << "strategy for player " << player << " is empty";
    throw ValidationError(os.str());
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!std::isfinite(p[j]) || p[j] < -kProbTol || p[j] > 1.0 + kProbTol) {
      std::ostringstream os;
      os << "strategy entry [" << player << "][" << j << "] = " << p[j]
         << " is not a probability";
      throw ValidationError(os.str());
    }
    sum += p[j];
  }
  if (std::fabs(sum - 1.0) > kProbTol) {
    std::ostringstream os;
    os << "strategy for player " << player << " sums to " << sum
       << ", expected 1 within " << kProbTol;
    throw ValidationError(os.str());
  }
}

}  // namespace

MixedStrategyProfile::MixedStrategyProfile(
    std::vector<std::vector<double>> strategies)
    : strategies_(std::move(strategies)) {
  if (strategies_.empty()) {
    throw ValidationError("strategy profile has no players");
  }
  for (int i = 0; i < num_players(); ++i) {
    check_distribution(strategies_[i], i);
  }
}

MixedStrategyProfile MixedStrategyProfile::degenerate(
    const std::vector<int>& action_counts, const ActionProfile& a) {
  if (a.size() != action_counts.size()) {
    throw ShapeError("action profile length does not match player count");
  }
  std::vector<std::vector<double>> s(action_counts.size());
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    if (a[i] < 0 || a[i] >= action_counts[i]) {
      std::ostringstream os;
      os << "action " << a[i] << " out of range for player " << i;
      throw ShapeError(os.str());
    }
    s[i].assign(static_cast<std::size_t>(action_counts[i]), 0.0);
    s[i][static_cast<std::size_t>(a[i])] = 1.0;
  }
  return MixedStrategyProfile(std::move(s));
}

MixedStrategyProfile MixedStrategyProfile::uniform(
    const std::vector<int>& action_counts) {
  std::vector<std::vector<double>> s(action_counts.size());
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    s[i].assign(static_cast<std::size_t>(action_counts[i]),
                1.0 / action_counts[i]);
  }
  return MixedStrategyProfile(std::move(s));
}

bool MixedStrategyProfile::is_degenerate(double tol) const {
  for (const auto& p : strategies_) {
    if (std::none_of(p.begin(), p.end(),
                     [tol](double v) { return v >= 1.0 - tol; })) {
      return false;
    }
  }
  return true;
}

std::int64_t checked_profile_count(const std::vector<int>& action_counts) {
  if (action_counts.empty()) {
    throw ValidationError("game must have at least one player");
  }
  std::int64_t prod = 1;
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    if (action_counts[i] < 1) {
      std::ostringstream os;
      os << "player " << i << " has " << action_counts[i]
         << " actions, expected at least 1";
      throw ValidationError(os.str());
    }
    if (prod > std::numeric_limits<std::int64_t>::max() / action_counts[i]) {
      throw SizeError("profile count overflows 64-bit index space");
    }
    prod *= action_counts[i];
  }
  return prod;
}

std::int64_t flat_profile_index(const std::vector<int>& action_counts,
                                const ActionProfile& a) {
  if (a.size() != action_counts.size()) {
    throw ShapeError("action profile length does not match player count");
  }
  std::int64_t index = 0;
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    if (a[i] < 0 || a[i] >= action_counts[i]) {
      std::ostringstream os;
      os << "action " << a[i] << " out of range [0, " << action_counts[i]
         << ") for player " << i;
      throw ShapeError(os.str());
    }
    index = index * action_counts[i] + a[i];
  }
  return index;
}

ActionProfile profile_from_index(const std::vector<int>& action_counts,
                                 std::int64_t index) {
  if (index < 0 || index >= checked_profile_count(action_counts)) {
    throw ShapeError("profile index " + std::to_string(index) +
                     " out of range");
  }
  ActionProfile a(action_counts.size());
  for (std::size_t i = action_counts.size(); i-- > 0;) {
    a[i] = static_cast<int>(index % action_counts[i]);
    index /= action_counts[i];
  }
  return a;
}

void normalize_labels(const std::vector<int>& action_counts,
                      std::vector<std::string>& player_names,
                      std::vector<std::vector<std::string>>& action_names) {
  const std::size_t n = action_counts.size();
  if (player_names.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      player_names.push_back("p" + std::to_string(i));
    }
  } else if (player_names.size() != n) {
    throw ValidationError("player_names length does not match player count");
  }
  if (action_names.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> names;
      for (int j = 0; j < action_counts[i]; ++j) {
        names.push_back("a" + std::to_string(j));
      }
      action_names.push_back(std::move(names));
    }
  } else {
    if (action_names.size() != n) {
      throw ValidationError("action_names length does not match player count");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (action_names[i].size() != static_cast<std::size_t>(action_counts[i])) {
        std::ostringstream os;
        os << "action_names[" << i << "] has " << action_names[i].size()
           << " entries, expected " << action_counts[i];
        throw ValidationError(os.str());
      }
    }
  }
}

StandardGame::StandardGame(std::vector<int> action_counts,
                           std::vector<std::vector<double>> payoffs,
                           std::vector<std::string> player_names,
                           std::vector<std::vector<std::string>> action_names)
    : action_counts_(std::move(action_counts)),
      payoffs_(std::move(payoffs)),
      player_names_(std::move(player_names)),
      action_names_(std::move(action_names)) {
  num_profiles_ = checked_profile_count(action_counts_);
  if (payoffs_.size() != action_counts_.size()) {
    throw ValidationError("need exactly one payoff tensor per player");
  }
  for (std::size_t i = 0; i < payoffs_.size(); ++i) {
    if (payoffs_[i].size() != static_cast<std::size_t>(num_profiles_)) {
      std::ostringstream os;
      os << "payoffs[" << i << "] has " << payoffs_[i].size()
         << " entries, expected " << num_profiles_;
      throw ValidationError(os.str());
    }
    for (std::size_t k = 0; k < payoffs_[i].size(); ++k) {
      if (!std::isfinite(payoffs_[i][k])) {
        std::ostringstream os;
        os << "payoffs[" << i << "][" << k << "] is not finite";
        throw ValidationError(os.str());
      }
    }
  }
  normalize_labels(action_counts_, player_names_, action_names_);
}

std::int64_t StandardGame::profile_index(const ActionProfile& a) const {
  return flat_profile_index(action_counts_, a);
}

ActionProfile StandardGame::profile_at(std::int64_t index) const {
  return profile_from_index(action_counts_, index);
}

void StandardGame::check_profile(const MixedStrategyProfile& s) const {
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

void StandardGame::check_profile(const ActionProfile& a) const {
  flat_profile_index(action_counts_, a);  // throws on mismatch
}

void StandardGame::check_player(int player) const {
  if (player < 0 || player >= num_players()) {
    std::ostringstream os;
    os << "player index " << player << " out of range [0, " << num_players()
       << ")";
    throw ShapeError(os.str());
  }
}

double profile_probability(const MixedStrategyProfile& s,
                           const ActionProfile& a) {
  if (a.size() != static_cast<std::size_t>(s.num_players())) {
    throw ShapeError("action profile length does not match strategy profile");
  }
  double prob = 1.0;
  for (int i = 0; i < s.num_players(); ++i) {
    const auto& p = s.strategy(i);
    if (a[i] < 0 || static_cast<std::size_t>(a[i]) >= p.size()) {
      std::ostringstream os;
      os << "action " << a[i] << " out of range for player " << i;
      throw ShapeError(os.str());
    }
    prob *= p[static_cast<std::size_t>(a[i])];
  }
  return prob;
}

double expected_utility(const StandardGame& g, const MixedStrategyProfile& s,
                        int player) {
  g.check_player(player);
  g.check_profile(s);
  const auto& counts = g.action_counts();
  const int n = g.num_players();
  double total = 0.0;
  ActionProfile a(counts.size(), 0);
  for (std::int64_t idx = 0; idx < g.num_profiles(); ++idx) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) {
      prob *= s.strategy(i)[static_cast<std::size_t>(a[i])];
    }
    total += g.payoff(player, idx) * prob;
    // odometer increment, last player fastest
    for (int i = n - 1; i >= 0; --i) {
      if (++a[i] < counts[i]) break;
      a[i] = 0;
    }
  }
  return total;
}

BestResponse best_response_set(const StandardGame& g,
                               const MixedStrategyProfile& s, int player,
                               double tie_tol) {
  g.check_player(player);
  g.check_profile(s);
  const auto& counts = g.action_counts();
  const int n = g.num_players();
  // Expected utility of each own pure action against s_{-i}.
  std::vector<double> action_value(static_cast<std::size_t>(counts[player]),
                                   0.0);
  ActionProfile a(counts.size(), 0);
  for (std::int64_t idx = 0; idx < g.num_profiles(); ++idx) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) {
      if (i == player) continue;
      prob *= s.strategy(i)[static_cast<std::size_t>(a[i])];
    }
    action_value[static_cast<std::size_t>(a[player])] +=
        g.payoff(player, idx) * prob;
    for (int i = n - 1; i >= 0; --i) {
      if (++a[i] < counts[i]) break;
      a[i] = 0;
    }
  }
  BestResponse br;
  br.value = *std::max_element(action_value.begin(), action_value.end());
  for (int j = 0; j < counts[player]; ++j) {
    if (action_value[static_cast<std::size_t>(j)] >= br.value - tie_tol) {
      br.actions.push_back(j);
    }
  }
  return br;
}

double regret(const StandardGame& g, const MixedStrategyProfile& s,
              int player) {
  return best_response_set(g, s, player).value -
         expected_utility(g, s, player);
}

bool is_nash(const StandardGame& g, const MixedStrategyProfile& s,
             double eps) {
  if (eps < 0.0) {
    throw ValidationError("eps must be nonnegative");
  }
  for (int i = 0; i < g.num_players(); ++i) {
    if (regret(g, s, i) > eps) return false;
  }
  return true;
}

}  // namespace capgames
