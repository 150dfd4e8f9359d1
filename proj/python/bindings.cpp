#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ringside/core_model.hpp"
#include "ringside/exact.hpp"
#include "ringside/monte_carlo.hpp"
#include "ringside/strategy.hpp"

namespace py = pybind11;
using namespace ringside;

namespace {

ScoringRule rule_arg(const std::string& name) { return parse_rule(name); }

BoutConfig make_config(int rounds, int judges, double alpha, double s, int partisans,
                       const std::string& rule) {
  return BoutConfig::make(rounds, judges, alpha, s, partisans, rule_arg(rule));
}

py::dict dist_dict(const OutcomeDist& d) {
  py::dict out;
  out["p_blue"] = d.p_blue;
  out["p_red"] = d.p_red;
  out["p_draw"] = d.p_draw;
  return out;
}

}  // namespace

PYBIND11_MODULE(ringside, m) {
  m.doc() = "Judged-bout scoring rules with a partisan judge";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<BoutConfig>(m, "BoutConfig")
      .def(py::init(&make_config), py::arg("rounds") = 12, py::arg("judges") = 3,
           py::arg("alpha") = 0.1, py::arg("s") = 0.8, py::arg("partisans") = 1,
           py::arg("rule") = "majority-judges")
      .def_readonly("rounds", &BoutConfig::rounds)
      .def_readonly("judges", &BoutConfig::judges)
      .def_readonly("alpha", &BoutConfig::alpha)
      .def_property_readonly("rule", [](const BoutConfig& c) { return std::string(to_string(c.rule)); });

  m.def("best_response_table",
        [](const BoutConfig& c) { return best_response_table(c); },
        "Best award k for every observed count of Blue signals.");
  m.def("expected_utility", [](const BoutConfig& c, int b, int k) {
    return expected_utility(b, k, c);
  });
  m.def(
      "outcome_given_true",
      [](const BoutConfig& c, int b_true, std::optional<std::vector<int>> response) {
        const ResponseTable r = response ? *response
                                : c.sole_partisan() ? best_response_table(c)
                                                    : fair_response(c.rounds);
        return dist_dict(exact::outcome_given_true(c, b_true, r));
      },
      py::arg("config"), py::arg("b_true"), py::arg("response") = py::none());
  m.def("win_curve", [](const BoutConfig& c, int b_true) { return win_curve(c, b_true); });
  m.def("robbery_ratio", [](const BoutConfig& c) {
    return exact::robbery_rates(c, best_response_table(c)).ratio();
  });
  m.def(
      "critical_s",
      [](double alpha, const std::string& rule, const std::string& info_set, bool closed_form) {
        const int b = parse_info_set(info_set);
        const CriticalS c = closed_form
                                ? critical_s_closed_form(alpha, rule_arg(rule), b)
                                : critical_s_numeric(alpha, rule_arg(rule), b,
                                                     static_cast<int>(info_set.size()));
        return c.s_hat;
      },
      py::arg("alpha"), py::arg("rule"), py::arg("info_set"), py::arg("closed_form") = true);
  m.def("flip_pairs", [](const std::string& tau, int judges, const std::string& rule) {
    return count_result_flipping_pairs(TrueSequence::parse(tau), judges, rule_arg(rule));
  });
  m.def(
      "simulate",
      [](const BoutConfig& c, std::int64_t trials, std::uint64_t seed, unsigned workers) {
        CampaignSpec spec{c, trials, seed, Conditioning::PerTrueCount, std::nullopt, workers};
        TallyTable t;
        {
          py::gil_scoped_release release;
          t = run_campaign(spec);
        }
        py::list rows;
        for (const auto& r : t.rows) {
          py::dict d;
          d["b_true"] = r.b_true;
          d["trials"] = r.trials;
          d["blue"] = r.blue;
          d["red"] = r.red;
          d["draw"] = r.draw;
          rows.append(d);
        }
        return rows;
      },
      py::arg("config"), py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("workers") = 1);
}
