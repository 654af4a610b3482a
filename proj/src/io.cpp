#include "capgames/io.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace capgames {

namespace {

using Json = nlohmann::ordered_json;

class IssueList {
 public:
  void add(const std::string& path, const std::string& what) {
    issues_.push_back(path + ": " + what);
  }
  bool empty() const { return issues_.empty(); }
  [[noreturn]] void raise(const std::string& header) const {
    std::ostringstream os;
    os << header;
    for (const auto& issue : issues_) {
      os << "\n  " << issue;
    }
    throw ValidationError(os.str());
  }

 private:
  std::vector<std::string> issues_;
};

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    // e.g. number overflow: the text is JSON but not representable.
    throw ParseError(std::string("unreadable JSON: ") + e.what());
  }
}

std::string read_stream(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_path(const std::string& path) {
  if (path == "-") {
    return read_stream(std::cin);
  }
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  return read_stream(in);
}

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed,
                         IssueList& issues) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      issues.add(item.key(), "unknown field");
    }
  }
}

bool require_number_array(const Json& j, const std::string& path,
                          IssueList& issues) {
  if (!j.is_array()) {
    issues.add(path, "expected an array of numbers");
    return false;
  }
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) {
      issues.add(path + "[" + std::to_string(k) + "]", "expected a number");
      return false;
    }
  }
  return true;
}

std::vector<double> as_doubles(const Json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    out.push_back(v.get<double>());
  }
  return out;
}

DynamicsSpec parse_dynamics_entry(const Json& j, const std::string& path,
                                  IssueList& issues) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "additive" || name == "multiplicative") {
      return dynamics_by_name(name);
    }
    issues.add(path, "expected \"additive\", \"multiplicative\", or "
                     "{\"custom\": name}, got \"" + name + "\"");
    return DynamicsSpec::additive();
  }
  if (j.is_object() && j.size() == 1 && j.contains("custom") &&
      j["custom"].is_string()) {
    const std::string name = j["custom"].get<std::string>();
    try {
      return dynamics_by_name(name);
    } catch (const ValidationError& e) {
      issues.add(path, e.what());
      return DynamicsSpec::additive();
    }
  }
  issues.add(path, "expected \"additive\", \"multiplicative\", or "
                   "{\"custom\": name}");
  return DynamicsSpec::additive();
}

Json dynamics_entry_to_json(const DynamicsSpec& d) {
  switch (d.kind()) {
    case DynamicsKind::kAdditive:
      return Json("additive");
    case DynamicsKind::kMultiplicative:
      return Json("multiplicative");
    case DynamicsKind::kCustom:
      break;
  }
  // Only registry-named custom specs are serializable.
  dynamics_by_name(d.name());
  return Json{{"custom", d.name()}};
}

struct ParsedShape {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> actions;
  std::vector<int> action_counts;
  std::vector<std::vector<double>> payoffs;
};

// Shared between the standard and capital readers: players, actions,
// payoffs, cross-checked lengths.
ParsedShape parse_shape(const Json& j, IssueList& issues) {
  ParsedShape shape;
  if (!j.contains("players") || !j["players"].is_array()) {
    issues.add("players", "required array of player names");
  } else {
    for (const auto& p : j["players"]) {
      if (!p.is_string()) {
        issues.add("players", "entries must be strings");
        break;
      }
      shape.players.push_back(p.get<std::string>());
    }
  }
  if (!j.contains("actions") || !j["actions"].is_array()) {
    issues.add("actions", "required array of per-player action name lists");
  } else {
    for (std::size_t i = 0; i < j["actions"].size(); ++i) {
      const auto& list = j["actions"][i];
      std::vector<std::string> names;
      if (!list.is_array() || list.empty()) {
        issues.add("actions[" + std::to_string(i) + "]",
                   "expected a nonempty array of action names");
      } else {
        for (const auto& nm : list) {
          if (!nm.is_string()) {
            issues.add("actions[" + std::to_string(i) + "]",
                       "entries must be strings");
            break;
          }
          names.push_back(nm.get<std::string>());
        }
      }
      shape.actions.push_back(names);
      shape.action_counts.push_back(static_cast<int>(names.size()));
    }
  }
  if (!shape.players.empty() && !shape.actions.empty() &&
      shape.players.size() != shape.actions.size()) {
    issues.add("actions", "length " + std::to_string(shape.actions.size()) +
                              " does not match players length " +
                              std::to_string(shape.players.size()));
  }
  if (!j.contains("payoffs") || !j["payoffs"].is_array()) {
    issues.add("payoffs", "required array of per-player payoff arrays");
  } else {
    for (std::size_t i = 0; i < j["payoffs"].size(); ++i) {
      const std::string path = "payoffs[" + std::to_string(i) + "]";
      if (require_number_array(j["payoffs"][i], path, issues)) {
        shape.payoffs.push_back(as_doubles(j["payoffs"][i]));
      }
    }
    if (j["payoffs"].size() != shape.players.size()) {
      issues.add("payoffs", "length " + std::to_string(j["payoffs"].size()) +
                                " does not match players length " +
                                std::to_string(shape.players.size()));
    }
  }
  return shape;
}

int parse_schema_version(const Json& j, IssueList& issues) {
  if (!j.contains("schema_version") ||
      !j["schema_version"].is_number_integer()) {
    issues.add("schema_version", "required integer");
    return 0;
  }
  const int version = j["schema_version"].get<int>();
  if (version != 1) {
    issues.add("schema_version",
               "unsupported version " + std::to_string(version));
  }
  return version;
}

}  // namespace

GameVariant parse_game_text(const std::string& text) {
  const Json j = parse_json_text(text);
  IssueList issues;
  if (!j.is_object()) {
    issues.add("$", "expected a JSON object");
    issues.raise("invalid game document:");
  }
  parse_schema_version(j, issues);
  std::string kind;
  if (!j.contains("kind") || !j["kind"].is_string()) {
    issues.add("kind", "required string, \"standard\" or \"capital\"");
  } else {
    kind = j["kind"].get<std::string>();
    if (kind != "standard" && kind != "capital") {
      issues.add("kind", "expected \"standard\" or \"capital\", got \"" +
                             kind + "\"");
    }
  }
  if (kind == "capital") {
    reject_unknown_keys(j,
                        {"schema_version", "kind", "players", "actions",
                         "payoffs", "endowments", "durations", "dynamics"},
                        issues);
  } else {
    reject_unknown_keys(
        j, {"schema_version", "kind", "players", "actions", "payoffs"},
        issues);
  }
  ParsedShape shape = parse_shape(j, issues);

  if (kind == "standard") {
    if (!issues.empty()) issues.raise("invalid game document:");
    return StandardGame(shape.action_counts, std::move(shape.payoffs),
                        std::move(shape.players), std::move(shape.actions));
  }

  // capital
  std::vector<double> endowments;
  if (!j.contains("endowments") ||
      !require_number_array(j["endowments"], "endowments", issues)) {
    if (!j.contains("endowments")) {
      issues.add("endowments", "required array of numbers");
    }
  } else {
    endowments = as_doubles(j["endowments"]);
  }
  std::vector<double> durations;
  if (j.contains("durations")) {
    if (require_number_array(j["durations"], "durations", issues)) {
      durations = as_doubles(j["durations"]);
    }
  }
  std::vector<DynamicsSpec> dynamics;
  if (!j.contains("dynamics") || !j["dynamics"].is_array()) {
    issues.add("dynamics", "required array of dynamics entries");
  } else {
    for (std::size_t i = 0; i < j["dynamics"].size(); ++i) {
      dynamics.push_back(parse_dynamics_entry(
          j["dynamics"][i], "dynamics[" + std::to_string(i) + "]", issues));
    }
  }
  if (!issues.empty()) issues.raise("invalid game document:");
  return CapitalGame(shape.action_counts, std::move(shape.payoffs),
                     std::move(endowments), std::move(dynamics),
                     std::move(durations), std::move(shape.players),
                     std::move(shape.actions));
}

GameVariant parse_game(std::istream& in) {
  return parse_game_text(read_stream(in));
}

GameVariant parse_game_file(const std::string& path) {
  return parse_game_text(read_path(path));
}

namespace {

Json shape_to_json(const std::vector<std::string>& players,
                   const std::vector<std::vector<std::string>>& actions,
                   const std::vector<std::vector<double>>& payoffs,
                   const std::string& kind) {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = kind;
  j["players"] = players;
  j["actions"] = actions;
  j["payoffs"] = payoffs;
  return j;
}

}  // namespace

std::string game_to_json(const StandardGame& g) {
  std::vector<std::vector<double>> payoffs;
  for (int i = 0; i < g.num_players(); ++i) {
    payoffs.push_back(g.payoffs(i));
  }
  return shape_to_json(g.player_names(), g.action_names(), payoffs, "standard")
      .dump(2);
}

std::string game_to_json(const CapitalGame& G) {
  std::vector<std::vector<double>> payoffs;
  for (int i = 0; i < G.num_players(); ++i) {
    payoffs.push_back(G.payoffs(i));
  }
  Json j = shape_to_json(G.player_names(), G.action_names(), payoffs,
                         "capital");
  j["endowments"] = G.endowments();
  j["durations"] = G.durations();
  Json dynamics = Json::array();
  for (int i = 0; i < G.num_players(); ++i) {
    dynamics.push_back(dynamics_entry_to_json(G.dynamics(i)));
  }
  j["dynamics"] = dynamics;
  return j.dump(2);
}

std::string game_to_json(const GameVariant& game) {
  return std::visit([](const auto& g) { return game_to_json(g); }, game);
}

MixedStrategyProfile parse_profile_text(const std::string& text) {
  const Json j = parse_json_text(text);
  IssueList issues;
  if (!j.is_object()) {
    issues.add("$", "expected a JSON object");
    issues.raise("invalid profile document:");
  }
  parse_schema_version(j, issues);
  reject_unknown_keys(j, {"schema_version", "strategies"}, issues);
  std::vector<std::vector<double>> strategies;
  if (!j.contains("strategies") || !j["strategies"].is_array()) {
    issues.add("strategies", "required array of per-player probability arrays");
  } else {
    for (std::size_t i = 0; i < j["strategies"].size(); ++i) {
      const std::string path = "strategies[" + std::to_string(i) + "]";
      if (require_number_array(j["strategies"][i], path, issues)) {
        strategies.push_back(as_doubles(j["strategies"][i]));
      }
    }
  }
  if (!issues.empty()) issues.raise("invalid profile document:");
  return MixedStrategyProfile(std::move(strategies));
}

MixedStrategyProfile parse_profile_file(const std::string& path) {
  return parse_profile_text(read_path(path));
}

std::string profile_to_json(const MixedStrategyProfile& s) {
  Json j;
  j["schema_version"] = 1;
  j["strategies"] = s.strategies();
  return j.dump(2);
}

std::vector<MixedStrategyProfile> parse_profiles_any(const std::string& text) {
  const Json j = parse_json_text(text);
  if (j.is_object() && j.contains("equilibria")) {
    std::vector<MixedStrategyProfile> out;
    if (!j["equilibria"].is_array()) {
      throw ValidationError("equilibria: expected an array");
    }
    for (const auto& e : j["equilibria"]) {
      if (!e.is_object() || !e.contains("profile") ||
          !e["profile"].is_array()) {
        throw ValidationError(
            "equilibria entries need a \"profile\" array of strategy vectors");
      }
      std::vector<std::vector<double>> strategies;
      IssueList issues;
      for (std::size_t i = 0; i < e["profile"].size(); ++i) {
        const std::string path = "profile[" + std::to_string(i) + "]";
        if (require_number_array(e["profile"][i], path, issues)) {
          strategies.push_back(as_doubles(e["profile"][i]));
        }
      }
      if (!issues.empty()) issues.raise("invalid equilibria document:");
      out.emplace_back(std::move(strategies));
    }
    return out;
  }
  return {parse_profile_text(text)};
}

std::vector<MixedStrategyProfile> parse_profiles_any_file(
    const std::string& path) {
  return parse_profiles_any(read_path(path));
}

std::string equilibria_to_json(const std::vector<EquilibriumResult>& results,
                               double eps, bool pure_only,
                               const std::string& note) {
  Json j;
  j["schema_version"] = 1;
  j["eps"] = eps;
  j["coverage"] = pure_only ? "pure_only" : "pure_and_mixed";
  if (!note.empty()) j["note"] = note;
  Json list = Json::array();
  for (const auto& r : results) {
    Json e;
    e["profile"] = r.profile.strategies();
    e["classification"] = r.pure ? "pure" : "mixed";
    e["per_player_regret"] = r.per_player_regret;
    e["source"] = r.source == EquilibriumSource::kDirect ? "direct"
                                                         : "via_correspondence";
    list.push_back(std::move(e));
  }
  j["equilibria"] = std::move(list);
  return j.dump(2);
}

std::string report_to_json(const SimulationReport& report,
                           const std::vector<std::string>& player_names) {
  Json j;
  j["schema_version"] = 1;
  j["seed"] = report.seed;
  j["rounds"] = report.rounds;
  j["trials"] = report.trials;
  j["absorbed_trials"] = report.absorbed_trials;
  j["players"] = player_names;
  j["theoretical_growth"] = report.theoretical_growth;
  j["time_avg_growth_estimate"] = report.time_avg_growth_estimate;
  j["time_avg_growth_stderr"] = report.time_avg_growth_stderr;
  j["checkpoint_rounds"] = report.checkpoint_rounds;
  j["checkpoint_live_trials"] = report.checkpoint_live_trials;
  j["ensemble_avg_capital"] = report.ensemble_avg_capital;
  j["final_capital"] = report.final_capital;
  j["trial_growth"] = report.trial_growth;
  j["trial_absorbed"] = report.trial_absorbed;
  return j.dump(2);
}

void write_trajectories_csv(std::ostream& out,
                            const SimulationReport& report) {
  out << "round,trial,player,capital\n";
  std::ostringstream os;
  os.precision(17);
  for (const auto& p : report.trajectories) {
    os.str("");
    os << p.round << ',' << p.trial << ',' << p.player << ',' << p.capital
       << '\n';
    out << os.str();
  }
}

}  // namespace capgames
