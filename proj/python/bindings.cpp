#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "swipt/audit.hpp"
#include "swipt/channel.hpp"
#include "swipt/channel_io.hpp"
#include "swipt/config_io.hpp"
#include "swipt/csv.hpp"
#include "swipt/errors.hpp"
#include "swipt/optimizer.hpp"
#include "swipt/selection.hpp"
#include "swipt/sweep.hpp"

namespace py = pybind11;
using namespace swipt;

namespace {

py::dict point_dict(const CurvePoint& p) {
  py::dict d;
  d["ebar_normalized"] = p.ebar_normalized;
  d["ebar_watts"] = p.ebar_watts;
  d["rate_bits"] = p.rate_bits;
  d["energy_watts"] = p.energy_watts;
  d["powers"] = p.powers;
  d["trials"] = p.trials;
  return d;
}

py::dict re_point_dict(const REPoint& p) {
  py::dict d;
  d["ebar"] = p.ebar;
  d["rate_bits"] = nats_to_bits(p.rate);
  d["energy"] = p.energy;
  d["powers"] = p.powers;
  d["outer_iterations"] = p.outer_iterations;
  d["converged"] = p.converged;
  d["power_monotone"] = p.power_monotone;
  d["surplus_branch"] = p.surplus_branch;
  d["tilt_exponent"] = p.tilt_exponent;
  d["kkt_residual"] = p.kkt_residual;
  d["beams"] = p.strategy.beams.directions;
  d["info_covariances"] = p.strategy.info_covariances;
  d["power_trace"] = p.power_trace;
  return d;
}

}  // namespace

PYBIND11_MODULE(_swipt, m) {
  m.doc() = "Rate-energy frontier of the K-user MIMO interference channel with SWIPT";

  static PyObject* config_error =
      py::exception<ConfigError>(m, "ConfigError", PyExc_ValueError).release().ptr();
  static PyObject* infeasible =
      py::exception<InfeasibleTarget>(m, "InfeasibleTarget", PyExc_RuntimeError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(config_error, e.what());
    } catch (const InfeasibleTarget& e) {
      PyErr_SetString(infeasible, e.what());
    } catch (const InvalidPartition& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    }
  });

  py::class_<SystemConfig>(m, "Config")
      .def_static("from_json", [](const std::string& text) { return parse_config(text); })
      .def_static("load", [](const std::filesystem::path& p) { return load_config(p); })
      .def_static("reference", &reference_config, py::arg("k"), py::arg("k1"))
      .def("to_json", [](const SystemConfig& c) { return dump_config(c); })
      .def("fingerprint", [](const SystemConfig& c) { return config_fingerprint(c); })
      .def_readwrite("k", &SystemConfig::k)
      .def_readwrite("k1", &SystemConfig::k1)
      .def_readwrite("m", &SystemConfig::m)
      .def_readwrite("p_max", &SystemConfig::p_max)
      .def_readwrite("noise_power", &SystemConfig::noise_power)
      .def_readwrite("trials", &SystemConfig::trials)
      .def_readwrite("seed", &SystemConfig::seed)
      .def_readwrite("ebar_grid_size", &SystemConfig::ebar_grid_size)
      .def_readwrite("parallelism", &SystemConfig::parallelism)
      .def_readwrite("select_eh", &SystemConfig::select_eh)
      .def_property(
          "schemes",
          [](const SystemConfig& c) {
            std::vector<std::string> out;
            for (Scheme s : c.schemes) out.emplace_back(to_string(s));
            return out;
          },
          [](SystemConfig& c, const std::vector<std::string>& names) {
            c.schemes.clear();
            for (const auto& n : names) c.schemes.push_back(parse_scheme(n));
          })
      .def_property(
          "variant", [](const SystemConfig& c) { return std::string(to_string(c.variant)); },
          [](SystemConfig& c, const std::string& v) { c.variant = parse_variant(v); })
      .def("validate", &SystemConfig::validate);

  py::class_<ChannelSet>(m, "Channels")
      .def(py::init<int, int>(), py::arg("k"), py::arg("m"))
      .def_property_readonly("k", &ChannelSet::k)
      .def_property_readonly("m", &ChannelSet::m)
      .def_readwrite("seed", &ChannelSet::seed)
      .def_readwrite("trial", &ChannelSet::trial)
      .def("link", [](const ChannelSet& c, int rx, int tx) { return CMatrix(c.link(rx, tx)); },
           py::arg("rx"), py::arg("tx"))
      .def("set_link",
           [](ChannelSet& c, int rx, int tx, const CMatrix& h) {
             if (h.rows() != c.m() || h.cols() != c.m())
               throw InvalidArgument("set_link: block must be M x M");
             c.link(rx, tx) = h;
           },
           py::arg("rx"), py::arg("tx"), py::arg("h"));

  m.def("generate_channels", &generate_channels, py::arg("config"), py::arg("trial"));
  m.def("save_channels", &save_channels, py::arg("path"), py::arg("channels"), py::arg("k1"));
  m.def(
      "load_channels",
      [](const std::filesystem::path& p) {
        ChannelFile f = load_channels(p);
        return py::make_tuple(f.channels, f.k1);
      },
      py::arg("path"));

  m.def(
      "select_eh_set",
      [](const ChannelSet& ch, const SystemConfig& c, std::optional<double> ebar) {
        const SelectionResult r =
            select_eh_set(ch, c, ebar ? *ebar : default_selection_target(ch, c));
        py::dict d;
        d["eh"] = r.eh_set;
        d["id"] = r.id_set;
        d["sler_sum"] = r.sler_sum;
        d["scores"] = r.per_candidate_scores;
        return d;
      },
      py::arg("channels"), py::arg("config"), py::arg("ebar") = py::none());

  m.def(
      "scheme_e_max",
      [](const SystemConfig& c, const ChannelSet& ch, std::vector<int> eh, std::vector<int> id,
         const std::string& scheme) {
        const FrontierProblem p = FrontierProblem::from_config(c, ch, eh, id);
        return scheme_e_max(p, parse_scheme(scheme));
      },
      py::arg("config"), py::arg("channels"), py::arg("eh"), py::arg("id"), py::arg("scheme"));

  m.def(
      "boundary_point",
      [](const SystemConfig& c, const ChannelSet& ch, std::vector<int> eh, std::vector<int> id,
         const std::string& scheme, double ebar) {
        const FrontierProblem p = FrontierProblem::from_config(c, ch, eh, id);
        return re_point_dict(boundary_point(p, parse_scheme(scheme), ebar));
      },
      py::arg("config"), py::arg("channels"), py::arg("eh"), py::arg("id"), py::arg("scheme"),
      py::arg("ebar"));

  m.def(
      "run_sweep",
      [](const SystemConfig& c, std::optional<std::string> grid_reference,
         std::optional<double> grid_watts, bool time_sharing, bool envelope) {
        SweepOptions o;
        if (grid_reference) o.grid_reference = parse_scheme(*grid_reference);
        o.grid_watts = grid_watts;
        o.time_sharing = time_sharing;
        o.envelope = envelope;
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = run_sweep(c, o);
        }
        py::list curves;
        for (const RECurve& rc : r.curves) {
          py::dict d;
          d["scheme"] = rc.scheme;
          py::list pts;
          for (const CurvePoint& p : rc.points) pts.append(point_dict(p));
          d["points"] = pts;
          d["trials"] = rc.trials;
          d["seed"] = rc.seed;
          d["fingerprint"] = rc.fingerprint;
          curves.append(d);
        }
        py::dict diag;
        diag["points"] = r.diagnostics.points;
        diag["infeasible_points"] = r.diagnostics.infeasible_points;
        diag["unconverged_points"] = r.diagnostics.unconverged_points;
        diag["monotone_violations"] = r.diagnostics.monotone_violations;
        diag["feasibility_violations"] = r.diagnostics.feasibility_violations;
        diag["max_kkt_residual"] = r.diagnostics.max_kkt_residual;
        py::dict out;
        out["curves"] = curves;
        out["diagnostics"] = diag;
        out["csv"] = csv_text(r.curves);
        return out;
      },
      py::arg("config"), py::arg("grid_reference") = py::none(),
      py::arg("grid_watts") = py::none(), py::arg("time_sharing") = true,
      py::arg("envelope") = true);

  m.def(
      "run_audits",
      [](const SystemConfig& c, int rank_draws, int rank_candidates, int ordering_draws,
         int gradient_instances, int waterfill_instances, int monotone_trials) {
        AuditOptions o{rank_draws,         rank_candidates,     ordering_draws,
                       gradient_instances, waterfill_instances, monotone_trials};
        std::vector<AuditReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_audits(c, o);
        }
        py::list out;
        for (const AuditReport& r : reports) {
          py::dict d;
          d["name"] = r.name;
          d["instances"] = r.instances;
          d["max_violation"] = r.max_violation;
          d["tolerance"] = r.tolerance;
          d["pass"] = r.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("config"), py::arg("rank_draws") = 50, py::arg("rank_candidates") = 10000,
      py::arg("ordering_draws") = 1000, py::arg("gradient_instances") = 100,
      py::arg("waterfill_instances") = 100, py::arg("monotone_trials") = 100);
}
