#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <gmpxx.h>

#include "momentlab/bounds.hpp"
#include "momentlab/characteristic.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/oracle.hpp"
#include "momentlab/relation.hpp"
#include "momentlab/solver.hpp"
#include "momentlab/sweep.hpp"
#include "momentlab/verify.hpp"

namespace py = pybind11;
using namespace momentlab;

namespace {

// Rationals cross the boundary as (numerator, denominator) strings; the
// Python side turns them into fractions.Fraction.
py::tuple rational(const mpq_class& q) {
  return py::make_tuple(q.get_num().get_str(), q.get_den().get_str());
}

MomentMethod parse_method(const std::string& name) {
  if (name == "formula") return MomentMethod::ProductFormula;
  if (name == "enumeration") return MomentMethod::Enumeration;
  throw py::value_error("method must be 'formula' or 'enumeration'");
}

py::object diagnostic(const Diagnostic& d) {
  return std::visit([](const auto& v) -> py::object { return py::cast(v); }, d);
}

py::dict report_dict(const CheckReport& rep) {
  py::list items;
  for (const auto& it : rep.items) {
    py::dict d;
    d["name"] = it.name;
    d["status"] = to_string(it.status);
    d["value"] = it.value;
    d["detail"] = it.detail;
    items.append(d);
  }
  py::dict out;
  out["name"] = rep.name;
  out["passed"] = rep.passed();
  out["items"] = items;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Moment-method threshold bounds for random permutation-invariant boolean CSPs";

  py::class_<RelationIndexSet>(m, "Relation")
      .def(py::init<int, std::vector<int>>(), py::arg("k"), py::arg("allowed"))
      .def_static("one_in_k", &RelationIndexSet::one_in_k, py::arg("k"))
      .def_static("not_all_equal", &RelationIndexSet::not_all_equal, py::arg("k"))
      .def_property_readonly("k", &RelationIndexSet::k)
      .def_property_readonly("allowed", &RelationIndexSet::allowed)
      .def("accepts", &RelationIndexSet::accepts, py::arg("ones"))
      .def("__eq__", [](const RelationIndexSet& a, const RelationIndexSet& b) { return a == b; })
      .def("__repr__", [](const RelationIndexSet& r) { return "Relation(" + r.to_string() + ")"; });

  m.def("g", &g, py::arg("rel"), py::arg("delta"));
  m.def("h", &h, py::arg("rel"), py::arg("delta"));
  m.def("g_prime", &g_prime, py::arg("rel"), py::arg("delta"));
  m.def("gamma", &momentlab::gamma, py::arg("rel"), py::arg("r"), py::arg("delta"));
  m.def("rhat", &rhat, py::arg("rel"), py::arg("delta"));
  m.def("big_G", &bigG, py::arg("rel"), py::arg("delta"), py::arg("mu"));
  m.def("big_gamma", &bigGamma, py::arg("rel"), py::arg("delta"), py::arg("r"), py::arg("mu"));
  m.def("t", &t, py::arg("delta"), py::arg("mu"));

  m.def(
      "characteristic_set",
      [](const RelationIndexSet& rel) {
        py::list out;
        for (const auto& p : find_characteristic_set(rel).points) {
          py::dict d;
          d["delta"] = p.delta;
          d["g"] = p.g_value;
          d["g_second"] = p.g_second;
          d["plateau"] = p.plateau;
          out.append(d);
        }
        return out;
      },
      py::arg("rel"));
  m.def("best_delta", py::overload_cast<const RelationIndexSet&, double>(&best_delta), py::arg("rel"),
        py::arg("r"));

  m.def(
      "bounds",
      [](const RelationIndexSet& rel, std::optional<double> delta) {
        BoundsOptions opts;
        opts.delta = delta;
        const BoundsReport rep = [&] {
          py::gil_scoped_release release;
          return compute_bounds(rel, opts);
        }();
        py::dict diag;
        for (const auto& [key, value] : rep.diagnostics) diag[py::str(key)] = diagnostic(value);
        py::dict d;
        d["delta_used"] = rep.delta_used;
        d["rho"] = rep.rho;
        d["nu"] = rep.nu;
        d["r_star"] = rep.r_star;
        d["r_refined"] = rep.r_refined;
        d["r_hat"] = rep.r_hat;
        d["r_upper"] = rep.r_upper;
        d["diagnostics"] = diag;
        return d;
      },
      py::arg("rel"), py::arg("delta") = py::none());
  m.def("bounds_json", [](const RelationIndexSet& rel) { return to_json(compute_bounds(rel)); }, py::arg("rel"));

  m.def(
      "exact_first_moment",
      [](int n, int p, int mm, const RelationIndexSet& rel, const std::string& method) {
        return rational(exact_first_moment(n, p, mm, rel, parse_method(method)).value);
      },
      py::arg("n"), py::arg("p"), py::arg("m"), py::arg("rel"), py::arg("method") = "formula");
  m.def(
      "exact_second_moment",
      [](int n, int p, int mm, const RelationIndexSet& rel, const std::string& method) {
        return rational(exact_second_moment(n, p, mm, rel, parse_method(method)).value);
      },
      py::arg("n"), py::arg("p"), py::arg("m"), py::arg("rel"), py::arg("method") = "formula");
  m.def(
      "moment_ratio",
      [](int n, int p, int mm, const RelationIndexSet& rel) { return rational(moment_ratio(n, p, mm, rel)); },
      py::arg("n"), py::arg("p"), py::arg("m"), py::arg("rel"));

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("n", &Instance::n)
      .def_property_readonly("m", &Instance::m)
      .def_property_readonly("relation", &Instance::relation)
      .def_property_readonly("constraints",
                             [](const Instance& inst) {
                               std::vector<std::vector<std::uint32_t>> out;
                               for (const auto& c : inst.constraints()) out.push_back(c.vars);
                               return out;
                             })
      .def("serialize", &serialize_instance)
      .def_static("parse", &parse_instance, py::arg("text"))
      .def("satisfied_by", [](const Instance& inst, const std::vector<std::uint8_t>& bits) {
        return satisfies(Valuation(bits), inst);
      });
  m.def(
      "make_instance",
      [](std::size_t n, const RelationIndexSet& rel, const std::vector<std::vector<std::uint32_t>>& cs) {
        std::vector<Constraint> out;
        for (const auto& c : cs) out.push_back({c});
        return Instance(n, rel, std::move(out));
      },
      py::arg("n"), py::arg("rel"), py::arg("constraints"));
  m.def("generate_instance", &generate_instance, py::arg("n"), py::arg("m"), py::arg("rel"), py::arg("seed"));

  m.def(
      "solve",
      [](const Instance& inst, std::uint64_t node_budget) {
        SolveOptions opts;
        opts.node_budget = node_budget;
        SolveResult res;
        {
          py::gil_scoped_release release;
          res = solve(inst, opts);
        }
        py::dict d;
        d["status"] = to_string(res.status);
        d["witness"] = res.witness ? py::cast(res.witness->bits()) : py::none();
        d["nodes"] = res.stats.nodes;
        d["propagations"] = res.stats.propagations;
        return d;
      },
      py::arg("inst"), py::arg("node_budget") = SolveOptions{}.node_budget);

  m.def(
      "sweep_csv",
      [](const RelationIndexSet& rel, std::size_t n, double r_min, double r_max, double r_step, std::size_t trials,
         std::uint64_t seed, unsigned threads) {
        SweepOptions opts;
        opts.threads = threads;
        py::gil_scoped_release release;
        return to_csv(sweep(rel, n, r_min, r_max, r_step, trials, seed, opts));
      },
      py::arg("rel"), py::arg("n"), py::arg("r_min"), py::arg("r_max"), py::arg("r_step"), py::arg("trials"),
      py::arg("seed"), py::arg("threads") = 0);
  m.def(
      "empirical_threshold",
      [](const std::string& csv) {
        const auto est = empirical_threshold(parse_sweep_csv(csv));
        return py::make_tuple(est.r, est.lo, est.hi);
      },
      py::arg("csv"));
  m.def(
      "wilson_interval",
      [](std::size_t successes, std::size_t trials) {
        const auto w = wilson_interval(successes, trials);
        return py::make_tuple(w.lo, w.hi);
      },
      py::arg("successes"), py::arg("trials"));

  m.def("verify_groups", &verify_group_names);
  m.def(
      "verify",
      [](std::vector<std::string> only, std::optional<int> k, int max_n) {
        VerifyOptions opts;
        opts.only = std::move(only);
        opts.k = k;
        opts.max_n = max_n;
        std::vector<TimedReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_verification(opts);
        }
        py::list out;
        for (const auto& r : reports) {
          auto d = report_dict(r.report);
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("only") = std::vector<std::string>{}, py::arg("k") = py::none(), py::arg("max_n") = 4);
}
