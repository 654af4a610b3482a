// Python bindings for the capgames core: games, dynamics, transforms,
// equilibrium solving/verification, and sequence simulation.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capgames/capital_game.hpp"
#include "capgames/dynamics.hpp"
#include "capgames/errors.hpp"
#include "capgames/game.hpp"
#include "capgames/io.hpp"
#include "capgames/simulate.hpp"
#include "capgames/solvers.hpp"

namespace py = pybind11;
using namespace capgames;

namespace {

std::string source_name(EquilibriumSource s) {
  return s == EquilibriumSource::kDirect ? "direct" : "via_correspondence";
}

}  // namespace

PYBIND11_MODULE(_capgames, m) {
  m.doc() = "capital games: growth equilibria and sequence simulation";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
  py::register_exception<ArityError>(m, "ArityError", PyExc_ValueError);

  py::class_<MixedStrategyProfile>(m, "MixedStrategyProfile")
      .def(py::init<std::vector<std::vector<double>>>())
      .def_static("degenerate", &MixedStrategyProfile::degenerate)
      .def_static("uniform", &MixedStrategyProfile::uniform)
      .def("is_degenerate", &MixedStrategyProfile::is_degenerate)
      .def_property_readonly(
          "strategies",
          [](const MixedStrategyProfile& s) { return s.strategies(); });

  py::class_<StandardGame>(m, "StandardGame")
      .def(py::init<std::vector<int>, std::vector<std::vector<double>>,
                    std::vector<std::string>,
                    std::vector<std::vector<std::string>>>(),
           py::arg("action_counts"), py::arg("payoffs"),
           py::arg("player_names") = std::vector<std::string>{},
           py::arg("action_names") =
               std::vector<std::vector<std::string>>{})
      .def_property_readonly("num_players", &StandardGame::num_players)
      .def_property_readonly("action_counts", &StandardGame::action_counts)
      .def_property_readonly("num_profiles", &StandardGame::num_profiles)
      .def("payoff", &StandardGame::payoff)
      .def("profile_index", &StandardGame::profile_index)
      .def("profile_at", &StandardGame::profile_at);

  py::class_<DynamicsSpec>(m, "DynamicsSpec")
      .def_static("additive", &DynamicsSpec::additive)
      .def_static("multiplicative", &DynamicsSpec::multiplicative)
      .def_static("by_name", &dynamics_by_name)
      .def_property_readonly("name", &DynamicsSpec::name)
      .def("linearize", &DynamicsSpec::linearize)
      .def("delinearize", &DynamicsSpec::delinearize)
      .def("in_domain", &DynamicsSpec::in_domain);

  py::class_<CapitalGame>(m, "CapitalGame")
      .def(py::init<std::vector<int>, std::vector<std::vector<double>>,
                    std::vector<double>, std::vector<DynamicsSpec>,
                    std::vector<double>, std::vector<std::string>,
                    std::vector<std::vector<std::string>>>(),
           py::arg("action_counts"), py::arg("payoffs"),
           py::arg("endowments"), py::arg("dynamics"),
           py::arg("durations") = std::vector<double>{},
           py::arg("player_names") = std::vector<std::string>{},
           py::arg("action_names") =
               std::vector<std::vector<std::string>>{})
      .def_property_readonly("num_players", &CapitalGame::num_players)
      .def_property_readonly("action_counts", &CapitalGame::action_counts)
      .def_property_readonly("endowments", &CapitalGame::endowments)
      .def_property_readonly("durations", &CapitalGame::durations)
      .def("payoff", &CapitalGame::payoff)
      .def("with_dynamics", &CapitalGame::with_dynamics);

  m.def("expected_utility", &expected_utility);
  m.def("regret",
        [](const StandardGame& g, const MixedStrategyProfile& s, int player) {
          return std::max(0.0, regret(g, s, player));
        });
  m.def("is_nash", &is_nash, py::arg("game"), py::arg("profile"),
        py::arg("eps") = kTieTol);
  m.def("is_positive", &is_positive);
  m.def("time_average_growth", &time_average_growth);
  m.def("growth_rate", &growth_rate);
  m.def("to_standard_game", &to_standard_game);
  m.def("from_standard_game", &from_standard_game, py::arg("game"),
        py::arg("endowments"), py::arg("dynamics"),
        py::arg("durations") = std::vector<double>{});

  auto result_dict = [](const EquilibriumResult& r) {
    py::dict d;
    d["profile"] = r.profile.strategies();
    d["pure"] = r.pure;
    d["per_player_regret"] = r.per_player_regret;
    d["source"] = source_name(r.source);
    return d;
  };

  m.def("pure_nash",
        [result_dict](const StandardGame& g) {
          py::list out;
          for (const auto& r : enumerate_pure_nash(g)) {
            out.append(result_dict(r));
          }
          return out;
        });
  m.def(
      "solve",
      [result_dict](const StandardGame& g, double eps) {
        py::list out;
        const auto results = g.num_players() == 2
                                 ? support_enumeration_2p(g, eps)
                                 : enumerate_pure_nash(g);
        for (const auto& r : results) {
          out.append(result_dict(r));
        }
        return out;
      },
      py::arg("game"), py::arg("eps") = 1e-8);
  m.def(
      "growth_equilibria",
      [result_dict](const CapitalGame& G, double eps) {
        const GrowthSolveReport report = growth_equilibria(G, eps);
        py::dict d;
        py::list eq;
        for (const auto& r : report.equilibria) {
          eq.append(result_dict(r));
        }
        d["equilibria"] = eq;
        d["pure_only"] = report.pure_only;
        d["note"] = report.note;
        return d;
      },
      py::arg("game"), py::arg("eps") = 1e-8);
  m.def(
      "verify_growth_equilibrium",
      [](const CapitalGame& G, const MixedStrategyProfile& s, double eps) {
        const GrowthVerification v = verify_growth_equilibrium(G, s, eps);
        py::dict d;
        d["is_equilibrium"] = v.is_equilibrium;
        d["per_player_regret"] = v.per_player_regret;
        return d;
      },
      py::arg("game"), py::arg("profile"), py::arg("eps") = 1e-9);

  m.def(
      "simulate",
      [](const CapitalGame& G, const MixedStrategyProfile& s,
         std::int64_t rounds, std::int64_t trials, std::uint64_t seed) {
        SimulationConfig cfg;
        cfg.rounds = rounds;
        cfg.trials = trials;
        cfg.seed = seed;
        const SimulationReport r = run(G, s, cfg);
        py::dict d;
        d["seed"] = r.seed;
        d["rounds"] = r.rounds;
        d["trials"] = r.trials;
        d["absorbed_trials"] = r.absorbed_trials;
        d["theoretical_growth"] = r.theoretical_growth;
        d["time_avg_growth_estimate"] = r.time_avg_growth_estimate;
        d["time_avg_growth_stderr"] = r.time_avg_growth_stderr;
        d["checkpoint_rounds"] = r.checkpoint_rounds;
        d["ensemble_avg_capital"] = r.ensemble_avg_capital;
        d["final_capital"] = r.final_capital;
        return d;
      },
      py::arg("game"), py::arg("profile"), py::arg("rounds") = 1000,
      py::arg("trials") = 100, py::arg("seed") = 0);

  m.def("parse_game_text", [](const std::string& text) -> py::object {
    GameVariant game = parse_game_text(text);
    if (std::holds_alternative<CapitalGame>(game)) {
      return py::cast(std::get<CapitalGame>(game));
    }
    return py::cast(std::get<StandardGame>(game));
  });
  m.def("game_to_json",
        [](const StandardGame& g) { return game_to_json(g); });
  m.def("game_to_json",
        [](const CapitalGame& G) { return game_to_json(G); });
}
