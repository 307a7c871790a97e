#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "essdist/fixpoint.hpp"
#include "essdist/generator.hpp"
#include "essdist/gauge.hpp"
#include "essdist/hyperspace.hpp"
#include "essdist/instance.hpp"
#include "essdist/space.hpp"

namespace py = pybind11;
using namespace essdist;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
      return out;
    }
    default:
      return py::none();
  }
}

FiniteSubset subset(const std::vector<int>& members, int n) {
  return FiniteSubset::of(members, n);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite-space toolkit for essential distances, e0-metrics and "
            "multivalued fixed-point verification";
  m.attr("__version__") = "0.1.0";

  py::class_<FiniteMetricSpace>(m, "Space")
      .def(py::init([](std::vector<std::string> labels, std::vector<std::vector<double>> d) {
             return make_space(std::move(labels), SquareMatrix::from_rows(d));
           }),
           py::arg("labels"), py::arg("d"))
      .def_property_readonly("n", &FiniteMetricSpace::size)
      .def_readonly("labels", &FiniteMetricSpace::labels)
      .def("metric", [](const FiniteMetricSpace& s) { return s.d.rows(); })
      .def("index_of", &FiniteMetricSpace::index_of);

  py::class_<DistanceFunction>(m, "Kappa")
      .def(py::init([](std::vector<std::vector<double>> rows) {
             return make_distance(SquareMatrix::from_rows(rows));
           }),
           py::arg("matrix"))
      .def_property_readonly("n", &DistanceFunction::size)
      .def("matrix", [](const DistanceFunction& k) { return k.kappa.rows(); })
      .def("__call__", [](const DistanceFunction& k, int i, int j) { return k(i, j); });

  py::class_<PiecewiseLinearGauge>(m, "Gauge")
      .def(py::init([](double lam, std::vector<double> breakpoints,
                       std::vector<double> point_values, std::vector<double> right_intercepts,
                       std::vector<double> slopes) {
             PiecewiseLinearGauge g{lam, std::move(breakpoints), std::move(point_values),
                                    std::move(right_intercepts), std::move(slopes)};
             g.require_valid();
             return g;
           }),
           py::arg("lam"), py::arg("breakpoints"), py::arg("point_values"),
           py::arg("right_intercepts"), py::arg("slopes"))
      .def_static("constant", &PiecewiseLinearGauge::constant, py::arg("value"),
                  py::arg("lam") = 1.0)
      .def_readonly("lam", &PiecewiseLinearGauge::lambda)
      .def("value_at", &PiecewiseLinearGauge::value_at)
      .def("is_constant", &PiecewiseLinearGauge::is_constant)
      .def("to_dict", [](const PiecewiseLinearGauge& g) { return json_to_py(g.to_json()); });

  py::class_<MultivaluedMap>(m, "MultiMap")
      .def(py::init(&MultivaluedMap::of), py::arg("images"))
      .def_readonly("images", &MultivaluedMap::image)
      .def("contains", &MultivaluedMap::contains)
      .def("single_valued", &MultivaluedMap::single_valued);

  py::class_<SelfMap>(m, "SelfMap")
      .def(py::init(&SelfMap::of), py::arg("table"))
      .def_static("identity", &SelfMap::identity, py::arg("n"))
      .def_readonly("table", &SelfMap::image)
      .def("__call__", [](const SelfMap& f, int x) { return f(x); });

  py::class_<Instance>(m, "Instance")
      .def_readonly("space", &Instance::space)
      .def_readonly("kappa", &Instance::kappa)
      .def_readonly("map", &Instance::map)
      .def_property_readonly("phi",
                             [](const Instance& i) {
                               return i.phi ? py::cast(*i.phi) : py::none().cast<py::object>();
                             })
      .def_property_readonly("mu",
                             [](const Instance& i) {
                               return i.mu ? py::cast(*i.mu) : py::none().cast<py::object>();
                             })
      .def_property_readonly(
          "L", [](const Instance& i) { return i.L ? py::cast(*i.L) : py::none().cast<py::object>(); })
      .def_property_readonly("n", &Instance::size)
      .def("to_json", &serialize_instance)
      .def("hash", &instance_hash);

  // core-spaces
  m.def("line_space", &canonical_line_space);
  m.def("validate_metric",
        [](const FiniteMetricSpace& s) { return json_to_py(validate_metric(s).to_json()); });
  m.def("check_tau1",
        [](const DistanceFunction& k) { return json_to_py(check_tau1(k).to_json()); });
  m.def("check_zero_structure", [](const DistanceFunction& k) {
    return json_to_py(check_zero_structure(k).to_json());
  });
  m.def("classify",
        [](const DistanceFunction& k) { return json_to_py(classify(k).to_json()); });
  m.def("sequence_oracle_tau3", [](const DistanceFunction& k, int depth) {
    const Tau3OracleResult r = sequence_oracle_tau3(k, depth);
    py::dict out;
    out["pass"] = r.pass;
    out["depth"] = r.depth;
    if (r.x_template) out["x_cycle"] = r.x_template->cycle;
    if (r.y_template) out["y_cycle"] = r.y_template->cycle;
    return out;
  });
  m.def("point_to_set", [](const DistanceFunction& k, int x, std::vector<int> c) {
    return point_to_set(k, x, c);
  });

  // mt-toolkit
  m.def("right_limsup", &right_limsup);
  m.def("check_statement", [](const PiecewiseLinearGauge& g, int k) {
    return json_to_py(check_statement(g, k).to_json());
  });
  m.def("is_mt", &is_mt);
  m.def("scale_to_unit", &scale_to_unit);
  m.def("check_all_statements", [](const PiecewiseLinearGauge& g) {
    return json_to_py(check_all_statements(g).to_json());
  });
  m.def("sequence_sampler",
        [](const PiecewiseLinearGauge& g, const std::string& kind, std::uint64_t seed, int n) {
          const SamplerResult r = sequence_sampler(g, sequence_kind_from_string(kind), seed, n);
          return py::make_tuple(r.sup, r.sequence);
        });

  // hyperspace-metrics
  m.def("xi", [](const DistanceFunction& k, std::vector<int> a, std::vector<int> b) {
    return xi(k, subset(a, k.size()), subset(b, k.size()));
  });
  m.def("dkappa", [](const DistanceFunction& k, std::vector<int> a, std::vector<int> b) {
    return dkappa(k, subset(a, k.size()), subset(b, k.size()));
  });
  m.def("hausdorff", [](const FiniteMetricSpace& s, std::vector<int> a, std::vector<int> b) {
    return hausdorff(s, subset(a, s.size()), subset(b, s.size()));
  });
  m.def(
      "check_theorem13",
      [](const DistanceFunction& k, std::vector<std::vector<int>> sets) {
        std::vector<FiniteSubset> subs;
        for (auto& s : sets) subs.push_back(subset(s, k.size()));
        return json_to_py(check_theorem13(k, subs).to_json());
      },
      py::arg("kappa"), py::arg("sets") = std::vector<std::vector<int>>{});

  // fixpoint-solver
  m.def("fixed_points", &fixed_points);
  m.def("coincidence_points", &coincidence_points);
  m.def("check_s1", [](const DistanceFunction& k, const MultivaluedMap& t,
                       const PiecewiseLinearGauge& mu) {
    return json_to_py(check_S1(k, t, mu).to_json());
  });
  m.def("check_s3", [](const DistanceFunction& k, const MultivaluedMap& t,
                       const PiecewiseLinearGauge& mu) {
    return json_to_py(check_S3(k, t, mu).to_json());
  });
  m.def("check_s4", [](const SelfMap& phi, const MultivaluedMap& t) {
    return json_to_py(check_S4(phi, t).to_json());
  });
  m.def("check_s5", [](const DistanceFunction& k, const MultivaluedMap& t, const SelfMap& phi,
                       const PiecewiseLinearGauge& mu, double L) {
    return json_to_py(check_S5(k, t, phi, mu, L).to_json());
  });
  m.def("check_s6", [](const DistanceFunction& k, const MultivaluedMap& t, const SelfMap& phi,
                       const PiecewiseLinearGauge& mu, double L) {
    return json_to_py(check_S6(k, t, phi, mu, L).to_json());
  });
  m.def("check_s2", [](const DistanceFunction& k, const MultivaluedMap& t) {
    return json_to_py(check_S2_all(k, t).to_json());
  });
  m.def("iterate", [](const DistanceFunction& k, const MultivaluedMap& t, int x0, int cap) {
    return json_to_py(iterate(k, t, x0, cap).to_json());
  });
  m.def("verify", [](const Instance& inst, const std::string& theorem) {
    return json_to_py(
        verify_theorem(inst, theorem_from_string(theorem)).to_json(inst.space.labels));
  });

  // instance-gen and the JSON format
  m.def("generate", [](const std::string& profile) {
    return gen_instance(GenProfile::parse(profile));
  });
  m.def("parse", &parse_instance);
  m.def("load", &load_instance);
  m.def("save", &save_instance);
  m.def("mutate", [](const Instance& inst, const std::string& kind, std::uint64_t seed) {
    MutationKind mk;
    if (kind == "drop-z") {
      mk = MutationKind::kDropZ;
    } else if (kind == "raise-gap") {
      mk = MutationKind::kRaiseGap;
    } else if (kind == "break-invariance") {
      mk = MutationKind::kBreakInvariance;
    } else if (kind == "zero-offdiagonal") {
      mk = MutationKind::kZeroOffdiagonal;
    } else {
      throw std::invalid_argument("unknown mutation: " + kind);
    }
    const MutationResult r = mutate(inst, mk, seed);
    return py::make_tuple(r.applied, r.instance,
                          r.delta ? py::str(r.delta->description) : py::str(""));
  });
}
