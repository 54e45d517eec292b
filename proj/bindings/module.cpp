#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vetocore/harness.hpp"
#include "vetocore/profile.hpp"
#include "vetocore/pvc.hpp"
#include "vetocore/querysim.hpp"
#include "vetocore/rules.hpp"

namespace py = pybind11;
namespace vc = vetocore;

namespace {

py::object to_fraction(const vc::Rational& value) {
  static py::object fraction_type =
      py::module_::import("fractions").attr("Fraction");
  return fraction_type(vc::to_string(value));
}

vc::Rational from_py(const py::object& value) {
  // int, str, Fraction, or anything whose str() reads as p/q or a decimal.
  return vc::parse_rational(py::str(value).cast<std::string>());
}

vc::AlternativeDistribution dist_from_py(const py::object& weights, int m) {
  if (weights.is_none()) return vc::uniform_distribution(m);
  vc::AlternativeDistribution dist;
  for (const auto& w : weights.cast<py::sequence>())
    dist.weights.push_back(from_py(py::reinterpret_borrow<py::object>(w)));
  vc::validate_distribution(dist, m);
  return dist;
}

py::dict critical_dict(const vc::CriticalEpsilonResult& result) {
  py::dict out;
  out["value"] = to_fraction(result.value);
  out["method"] =
      result.method == vc::CriticalMethod::kFlow ? "flow" : "brute-force";
  if (result.witness) {
    py::dict w;
    w["coalition"] = result.witness->coalition;
    w["blocking_set"] = result.witness->blocking_set;
    w["slack"] = to_fraction(result.witness->slack);
    out["witness"] = w;
  } else {
    out["witness"] = py::none();
  }
  return out;
}

void bind_profile(py::module_& m) {
  py::class_<vc::Profile>(m, "Profile")
      .def(py::init<std::vector<std::vector<int>>, std::vector<std::string>>(),
           py::arg("rankings"), py::arg("names") = std::vector<std::string>{})
      .def_property_readonly("num_voters", &vc::Profile::num_voters)
      .def_property_readonly("num_alternatives", &vc::Profile::num_alternatives)
      .def_property_readonly("rankings", &vc::Profile::rankings)
      .def("position", &vc::Profile::position, py::arg("voter"), py::arg("alt"))
      .def("prefers", &vc::Profile::prefers, py::arg("voter"), py::arg("a"),
           py::arg("b"))
      .def("__repr__", [](const vc::Profile& p) {
        return "Profile(voters=" + std::to_string(p.num_voters()) +
               ", alternatives=" + std::to_string(p.num_alternatives()) + ")";
      });

  m.def("parse_profile", &vc::parse_profile, py::arg("text"));
  m.def("serialize_profile", &vc::serialize_profile, py::arg("profile"));
  m.def("uniform_distribution", [](int m_alts) {
    py::list out;
    for (const auto& w : vc::uniform_distribution(m_alts).weights)
      out.append(to_fraction(w));
    return out;
  });
  m.def(
      "btl_distribution",
      [](const std::vector<std::vector<py::object>>& rows) {
        vc::UtilityProfile utilities;
        for (const auto& row : rows) {
          std::vector<vc::Rational> converted;
          for (const auto& cell : row) converted.push_back(from_py(cell));
          utilities.utilities.push_back(std::move(converted));
        }
        py::list out;
        for (const auto& w : vc::btl_distribution(utilities).weights)
          out.append(to_fraction(w));
        return out;
      },
      py::arg("utilities"));
  m.def(
      "subsample",
      [](const vc::Profile& p, int k_voters, int k_alts, std::uint64_t seed) {
        auto [sub, map] = vc::subsample(p, k_voters, k_alts, seed);
        py::dict info;
        info["voter_indices"] = map.voter_indices;
        info["alt_indices"] = map.alt_indices;
        return py::make_tuple(sub, info);
      },
      py::arg("profile"), py::arg("k_voters"), py::arg("k_alts"),
      py::arg("seed"));
  m.def("impartial_culture", &vc::generate_impartial_culture, py::arg("n"),
        py::arg("m"), py::arg("seed"));
  m.def(
      "mallows",
      [](int n, int m_alts, double phi, std::uint64_t seed,
         const std::vector<int>& reference) {
        return vc::generate_mallows(n, m_alts, phi, reference, seed);
      },
      py::arg("n"), py::arg("m"), py::arg("phi"), py::arg("seed"),
      py::arg("reference") = std::vector<int>{});
  m.def(
      "two_bloc",
      [](int n, const py::object& fraction, const std::vector<int>& ranking_a,
         const std::vector<int>& ranking_b) {
        return vc::generate_two_bloc(n, from_py(fraction), ranking_a, ranking_b);
      },
      py::arg("n"), py::arg("fraction"), py::arg("ranking_a"),
      py::arg("ranking_b"));
  m.def(
      "two_bloc_center",
      [](int n, int m_alts, const py::object& bloc_a_fraction,
         const py::object& bloc_b_fraction, double phi, std::uint64_t seed) {
        return vc::generate_centrist_mixture(n, m_alts,
                                             from_py(bloc_a_fraction),
                                             from_py(bloc_b_fraction), phi, seed);
      },
      py::arg("n"), py::arg("m"), py::arg("bloc_a_fraction"),
      py::arg("bloc_b_fraction"), py::arg("phi"), py::arg("seed"));
  m.def("middle_out_ranking", &vc::middle_out_ranking, py::arg("m"));
}

void bind_analysis(py::module_& m) {
  m.def(
      "critical_epsilon",
      [](const vc::Profile& p, int alt, const py::object& dist) {
        return critical_dict(
            vc::critical_epsilon(p, dist_from_py(dist, p.num_alternatives()), alt));
      },
      py::arg("profile"), py::arg("alt"), py::arg("dist") = py::none());
  m.def(
      "max_blocking_slack",
      [](const vc::Profile& p, int alt, const py::object& dist, int cap) {
        return critical_dict(vc::max_blocking_slack(
            p, dist_from_py(dist, p.num_alternatives()), alt, cap));
      },
      py::arg("profile"), py::arg("alt"), py::arg("dist") = py::none(),
      py::arg("cap") = vc::kDefaultEnumerationCap);
  m.def(
      "epsilon_pvc",
      [](const vc::Profile& p, const py::object& eps, const py::object& dist) {
        return vc::epsilon_pvc(p, dist_from_py(dist, p.num_alternatives()),
                               from_py(eps));
      },
      py::arg("profile"), py::arg("eps"), py::arg("dist") = py::none());
  m.def("classic_pvc", &vc::classic_pvc, py::arg("profile"),
        py::arg("enumeration_cap") = vc::kDefaultEnumerationCap);
  m.def("veto_function", &vc::veto_function, py::arg("x"), py::arg("n"),
        py::arg("m"));
  m.def(
      "vote",
      [](const vc::Profile& p, const std::string& rule, std::uint64_t seed) {
        vc::RuleOutcome outcome = vc::run_rule(p, rule, seed);
        py::dict out;
        out["winner"] = outcome.winner;
        out["rule"] = outcome.rule;
        out["trace"] = outcome.trace;
        return out;
      },
      py::arg("profile"), py::arg("rule"), py::arg("seed") = 0);
  m.def(
      "gamma_veto",
      [](const vc::Profile& p, const py::object& eps,
         const std::vector<int>& order, const py::object& dist) {
        auto result = vc::vote_by_gamma_veto(
            p, dist_from_py(dist, p.num_alternatives()), from_py(eps), order);
        py::dict out;
        out["survivors"] = result.survivors;
        out["remaining_mass"] = to_fraction(result.remaining_mass);
        return out;
      },
      py::arg("profile"), py::arg("eps"), py::arg("order"),
      py::arg("dist") = py::none());
  m.def(
      "compute_tau",
      [](const py::object& eps, const py::object& delta) {
        return vc::compute_tau(from_py(eps), from_py(delta));
      },
      py::arg("eps"), py::arg("delta"));
  m.def(
      "simulate_run",
      [](const vc::Profile& p, const py::object& eps, const py::object& delta,
         const py::object& dist, const std::string& mode, std::uint64_t seed) {
        vc::OracleEnvironment env(p, dist_from_py(dist, p.num_alternatives()),
                                  vc::derive_seed(seed, 0, 0x0e11));
        auto run = vc::find_epsilon_pvc_element(
            env, from_py(eps), from_py(delta),
            mode == "pairwise" ? vc::QueryMode::kPairwise
                               : vc::QueryMode::kMinQueries,
            vc::derive_seed(seed, 0, 0xa160));
        py::dict out;
        out["survivor"] = run.survivor;
        out["generative"] = run.trace.generative;
        out["min_queries"] = run.trace.min_queries;
        out["pairwise"] = run.trace.pairwise;
        return out;
      },
      py::arg("profile"), py::arg("eps"), py::arg("delta"),
      py::arg("dist") = py::none(), py::arg("mode") = "min",
      py::arg("seed") = 0);
  m.def(
      "evaluate_insertion",
      [](const vc::Profile& p, const std::vector<int>& positions,
         const std::string& label, const py::object& dist) {
        vc::InsertedStatement statement{label, positions};
        return critical_dict(vc::evaluate_insertion(
            p, dist_from_py(dist, p.num_alternatives()), statement));
      },
      py::arg("profile"), py::arg("positions"), py::arg("label") = "statement",
      py::arg("dist") = py::none());
}

}  // namespace

PYBIND11_MODULE(_vetocore, m) {
  m.doc() = "Veto-core computations: critical epsilon via exact max-flow, "
            "veto-based voting rules, and query-limited core search";
  bind_profile(m);
  bind_analysis(m);
  py::register_exception<vc::Error>(m, "VetocoreError");
}
