#include "capgames/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace capgames {

namespace {

constexpr double kSingularPivot = 1e-12;

// Solves A x = b in place by Gaussian elimination with partial pivoting.
// Returns false when a pivot falls below kSingularPivot.
bool solve_linear(std::vector<std::vector<double>>& A, std::vector<double>& b,
                  std::vector<double>& x) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(A[r][col]) > std::fabs(A[pivot][col])) pivot = r;
    }
    if (std::fabs(A[pivot][col]) < kSingularPivot) return false;
    std::swap(A[col], A[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = A[r][col] / A[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) {
        A[r][c] -= factor * A[col][c];
      }
      b[r] -= factor * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double sum = b[r];
    for (std::size_t c = r + 1; c < n; ++c) {
      sum -= A[r][c] * x[c];
    }
    x[r] = sum / A[r][r];
  }
  return true;
}

// Lexicographically next size-k subset of {0..m-1}; false when exhausted.
bool next_combination(std::vector<int>& comb, int m) {
  const int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < m - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) {
        comb[j] = comb[j - 1] + 1;
      }
      return true;
    }
  }
  return false;
}

double max_norm_distance(const MixedStrategyProfile& a,
                         const MixedStrategyProfile& b) {
  double dist = 0.0;
  for (int i = 0; i < a.num_players(); ++i) {
    for (std::size_t j = 0; j < a.strategy(i).size(); ++j) {
      dist = std::max(dist, std::fabs(a.strategy(i)[j] - b.strategy(i)[j]));
    }
  }
  return dist;
}

std::vector<double> clamped(const std::vector<double>& regrets) {
  std::vector<double> out(regrets.size());
  for (std::size_t i = 0; i < regrets.size(); ++i) {
    out[i] = std::max(0.0, regrets[i]);
  }
  return out;
}

}  // namespace

std::vector<EquilibriumResult> enumerate_pure_nash(const StandardGame& g,
                                                   double tie_tol,
                                                   std::int64_t profile_cap) {
  if (g.num_profiles() > profile_cap) {
    std::ostringstream os;
    os << "game has " << g.num_profiles()
       << " action profiles, enumeration cap is " << profile_cap;
    throw SizeError(os.str());
  }
  const int n = g.num_players();
  const auto& counts = g.action_counts();
  // stride[i] = how far the flat index moves when player i's action moves.
  std::vector<std::int64_t> stride(static_cast<std::size_t>(n), 1);
  for (int i = n - 2; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] =
        stride[static_cast<std::size_t>(i + 1)] * counts[i + 1];
  }
  std::vector<EquilibriumResult> results;
  ActionProfile a(static_cast<std::size_t>(n), 0);
  for (std::int64_t idx = 0; idx < g.num_profiles(); ++idx) {
    bool equilibrium = true;
    std::vector<double> regrets(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n && equilibrium; ++i) {
      const double own = g.payoff(i, idx);
      const std::int64_t base =
          idx - a[i] * stride[static_cast<std::size_t>(i)];
      double best = own;
      for (int b = 0; b < counts[i]; ++b) {
        best = std::max(
            best, g.payoff(i, base + b * stride[static_cast<std::size_t>(i)]));
      }
      if (best - own > tie_tol) {
        equilibrium = false;
      } else {
        regrets[static_cast<std::size_t>(i)] = std::max(0.0, best - own);
      }
    }
    if (equilibrium) {
      EquilibriumResult r{MixedStrategyProfile::degenerate(counts, a), true,
                          std::move(regrets), EquilibriumSource::kDirect};
      results.push_back(std::move(r));
    }
    for (int i = n - 1; i >= 0; --i) {
      if (++a[i] < counts[i]) break;
      a[i] = 0;
    }
  }
  return results;
}

std::vector<EquilibriumResult> enumerate_pure_growth_equilibria(
    const CapitalGame& G, double tie_tol, std::int64_t profile_cap) {
  return enumerate_pure_nash(to_standard_game(G), tie_tol, profile_cap);
}

std::vector<EquilibriumResult> support_enumeration_2p(const StandardGame& g,
                                                      double eps,
                                                      int action_cap) {
  if (g.num_players() != 2) {
    std::ostringstream os;
    os << "support enumeration requires exactly 2 players, got "
       << g.num_players();
    throw ArityError(os.str());
  }
  const int m0 = g.action_counts()[0];
  const int m1 = g.action_counts()[1];
  if (m0 > action_cap || m1 > action_cap) {
    std::ostringstream os;
    os << "action counts " << m0 << "x" << m1
       << " exceed support enumeration cap " << action_cap;
    throw SizeError(os.str());
  }
  const auto u = [&](int player, int r, int c) {
    return g.payoff(player, static_cast<std::int64_t>(r) * m1 + c);
  };

  // Solves the k x k system making `other` indifferent across its support
  // rows; unknowns are `own`'s support probabilities.
  const auto solve_support =
      [&](const std::vector<int>& other_support,
          const std::vector<int>& own_support, bool own_is_column,
          std::vector<double>& probs) -> bool {
    const std::size_t k = own_support.size();
    std::vector<std::vector<double>> A(k, std::vector<double>(k, 0.0));
    std::vector<double> b(k, 0.0);
    for (std::size_t e = 0; e + 1 < other_support.size(); ++e) {
      for (std::size_t j = 0; j < k; ++j) {
        const int own_action = own_support[j];
        const double u_first =
            own_is_column ? u(0, other_support[0], own_action)
                          : u(1, own_action, other_support[0]);
        const double u_next =
            own_is_column ? u(0, other_support[e + 1], own_action)
                          : u(1, own_action, other_support[e + 1]);
        A[e][j] = u_first - u_next;
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      A[k - 1][j] = 1.0;
    }
    b[k - 1] = 1.0;
    return solve_linear(A, b, probs);
  };

  std::vector<EquilibriumResult> results;
  const int max_k = std::min(m0, m1);
  for (int k = 1; k <= max_k; ++k) {
    std::vector<int> s0(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) s0[static_cast<std::size_t>(i)] = i;
    do {
      std::vector<int> s1(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) s1[static_cast<std::size_t>(i)] = i;
      do {
        std::vector<double> p1;  // column player's support probabilities
        std::vector<double> p0;  // row player's support probabilities
        if (!solve_support(s0, s1, /*own_is_column=*/true, p1)) continue;
        if (!solve_support(s1, s0, /*own_is_column=*/false, p0)) continue;

        bool feasible = true;
        for (double p : p0) feasible = feasible && p >= -eps;
        for (double p : p1) feasible = feasible && p >= -eps;
        if (!feasible) continue;

        std::vector<std::vector<double>> strategies(2);
        strategies[0].assign(static_cast<std::size_t>(m0), 0.0);
        strategies[1].assign(static_cast<std::size_t>(m1), 0.0);
        double sum0 = 0.0, sum1 = 0.0;
        for (std::size_t j = 0; j < s0.size(); ++j) {
          const double p = std::clamp(p0[j], 0.0, 1.0);
          strategies[0][static_cast<std::size_t>(s0[j])] = p;
          sum0 += p;
        }
        for (std::size_t j = 0; j < s1.size(); ++j) {
          const double p = std::clamp(p1[j], 0.0, 1.0);
          strategies[1][static_cast<std::size_t>(s1[j])] = p;
          sum1 += p;
        }
        if (sum0 <= 0.0 || sum1 <= 0.0) continue;
        for (double& p : strategies[0]) p /= sum0;
        for (double& p : strategies[1]) p /= sum1;

        MixedStrategyProfile profile(std::move(strategies));
        const double r0 = regret(g, profile, 0);
        const double r1 = regret(g, profile, 1);
        if (r0 > eps || r1 > eps) continue;

        bool duplicate = false;
        for (const auto& prev : results) {
          if (max_norm_distance(prev.profile, profile) < kEquilibriumDedupTol) {
            duplicate = true;
            break;
          }
        }
        if (duplicate) continue;

        EquilibriumResult res{std::move(profile), k == 1,
                              clamped({r0, r1}), EquilibriumSource::kDirect};
        results.push_back(std::move(res));
      } while (next_combination(s1, m1));
    } while (next_combination(s0, m0));
  }
  return results;
}

GrowthVerification verify_growth_equilibrium(const CapitalGame& G,
                                             const MixedStrategyProfile& s,
                                             double eps) {
  if (eps < 0.0) {
    throw ValidationError("eps must be nonnegative");
  }
  G.check_profile(s);
  const int n = G.num_players();
  const auto& counts = G.action_counts();
  GrowthVerification out;
  out.is_equilibrium = true;
  for (int i = 0; i < n; ++i) {
    const DynamicsSpec& d = G.dynamics(i);
    const double w = G.endowment(i);
    const double dt = G.duration(i);
    // Growth of each own pure action against s_{-i}, one sweep.
    std::vector<double> action_growth(static_cast<std::size_t>(counts[i]),
                                      0.0);
    double current = 0.0;
    ActionProfile a(counts.size(), 0);
    for (std::int64_t idx = 0; idx < G.num_profiles(); ++idx) {
      double others = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        others *= s.strategy(j)[static_cast<std::size_t>(a[j])];
      }
      if (others != 0.0) {
        const double rate = growth_rate(d, G.payoff(i, idx), w, dt);
        action_growth[static_cast<std::size_t>(a[i])] += rate * others;
        current += rate * others * s.strategy(i)[static_cast<std::size_t>(a[i])];
      }
      for (int j = n - 1; j >= 0; --j) {
        if (++a[j] < counts[j]) break;
        a[j] = 0;
      }
    }
    const double best =
        *std::max_element(action_growth.begin(), action_growth.end());
    const double gap = best - current;
    if (gap > eps) out.is_equilibrium = false;
    out.per_player_regret.push_back(std::max(0.0, gap));
  }
  return out;
}

GrowthSolveReport growth_equilibria(const CapitalGame& G, double eps) {
  GrowthSolveReport report;
  const StandardGame standard = to_standard_game(G);
  std::vector<EquilibriumResult> candidates;
  if (G.num_players() == 2) {
    candidates = support_enumeration_2p(standard, eps);
    report.pure_only = false;
  } else {
    candidates = enumerate_pure_nash(standard);
    report.pure_only = true;
    report.note = G.num_players() == 1
                      ? "single-player game: listed equilibria are the pure "
                        "optima; any mixture over them is also an equilibrium"
                      : "mixed-equilibrium search covers 2-player games only; "
                        "pure equilibria listed";
  }
  for (auto& c : candidates) {
    GrowthVerification v = verify_growth_equilibrium(G, c.profile, eps);
    if (!v.is_equilibrium) continue;  // correspondence guard, not expected
    EquilibriumResult r{std::move(c.profile), c.pure,
                        std::move(v.per_player_regret),
                        EquilibriumSource::kViaCorrespondence};
    report.equilibria.push_back(std::move(r));
  }
  return report;
}

}  // namespace capgames
