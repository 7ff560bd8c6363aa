#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <set>

#include "lpt/oracle.hpp"
#include "lpt/reward_machine.hpp"
#include "lpt/signature.hpp"
#include "lpt/tracking.hpp"

namespace py = pybind11;

namespace {

lpt::Vocabulary make_vocabulary(const std::vector<std::string>& labels) {
  return lpt::Vocabulary(labels);
}

std::vector<std::vector<std::string>> trace_steps(const lpt::Trace& trace) {
  std::vector<std::vector<std::string>> steps;
  steps.reserve(trace.size());
  for (const lpt::LabelSet& step : trace.steps()) steps.push_back(step.members());
  return steps;
}

}  // namespace

PYBIND11_MODULE(_lpt, m) {
  m.doc() = "Incremental three-valued progress tracking for finite-trace LTL";

  static py::exception<lpt::Error> base_error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const lpt::IndexError& err) {
      PyErr_SetString(PyExc_IndexError, err.what());
    } catch (const lpt::Error& err) {
#if defined(PYBIND11_VERSION_HEX) && PYBIND11_VERSION_HEX >= 0x020C0000
      py::set_error(base_error, err.what());
#else
      PyErr_SetString(base_error.ptr(), err.what());
#endif
    }
  });

  py::class_<lpt::Formula>(m, "Formula")
      .def_static("atom", &lpt::Formula::atom, py::arg("name"))
      .def_static("true_lit", &lpt::Formula::true_lit)
      .def_property_readonly("kind",
                             [](const lpt::Formula& f) { return lpt::kind_name(f.kind()); })
      .def_property_readonly("atom_name", &lpt::Formula::atom_name)
      .def_property_readonly("height", &lpt::Formula::height)
      .def_property_readonly("node_count", &lpt::Formula::node_count)
      .def("children", [](const lpt::Formula& f) { return f.children(); })
      .def("__str__", [](const lpt::Formula& f) { return lpt::format(f); })
      .def("__repr__",
           [](const lpt::Formula& f) { return "Formula(\"" + lpt::format(f) + "\")"; })
      .def("__eq__", [](const lpt::Formula& a, const lpt::Formula& b) { return a == b; })
      .def("__hash__",
           [](const lpt::Formula& f) { return lpt::fnv1a64(lpt::format(f)); });

  m.def(
      "parse",
      [](const std::string& text, const std::optional<std::vector<std::string>>& vocabulary) {
        if (vocabulary.has_value()) return lpt::parse(text, make_vocabulary(*vocabulary));
        return lpt::parse(text);
      },
      py::arg("text"), py::arg("vocabulary") = py::none());
  m.def("format_formula", &lpt::format, py::arg("formula"));
  m.def("arguments", &lpt::arguments, py::arg("formula"));
  m.def("atom_names", &lpt::atom_names, py::arg("formula"));

  py::class_<lpt::Trace>(m, "Trace")
      .def(py::init([](const std::vector<std::vector<std::string>>& steps, int origin) {
             std::vector<lpt::LabelSet> sets;
             sets.reserve(steps.size());
             for (const auto& step : steps) sets.emplace_back(step);
             return lpt::Trace(std::move(sets), origin);
           }),
           py::arg("steps"), py::arg("origin") = 0)
      .def_property_readonly("origin", &lpt::Trace::origin)
      .def_property_readonly("steps", &trace_steps)
      .def("append",
           [](lpt::Trace& trace, const std::vector<std::string>& labels) {
             trace.append(lpt::LabelSet(labels));
           })
      .def("suffix",
           [](const lpt::Trace& trace, int t) { return trace.suffix(t).to_trace(); })
      .def("__len__", &lpt::Trace::size)
      .def("__eq__", [](const lpt::Trace& a, const lpt::Trace& b) { return a == b; });

  m.def(
      "load_trace_file",
      [](const std::string& path) {
        const lpt::TraceFile file = lpt::load_trace_file(path);
        std::optional<std::vector<std::string>> vocabulary;
        if (file.vocabulary.has_value()) vocabulary = file.vocabulary->labels();
        return py::make_tuple(file.trace, vocabulary);
      },
      py::arg("path"), "Returns (trace, vocabulary-or-None).");
  m.def("load_formula_file",
        [](const std::string& path) { return lpt::load_formula_file(path); });

  py::class_<lpt::Engine>(m, "Engine")
      .def(py::init<const lpt::Formula&, int>(), py::arg("formula"), py::arg("origin") = 0)
      .def("step",
           [](lpt::Engine& engine, const std::vector<std::string>& labels) {
             engine.step(lpt::LabelSet(labels));
           },
           py::arg("labels"))
      .def("finalize", &lpt::Engine::finalize)
      .def_property_readonly("started", &lpt::Engine::started)
      .def_property_readonly("finalized", &lpt::Engine::finalized)
      .def_property_readonly("time", [](const lpt::Engine& engine) -> std::optional<int> {
        if (!engine.started()) return std::nullopt;
        return engine.current_time();
      })
      .def_property_readonly("eval_count", &lpt::Engine::evaluation_count)
      .def_property_readonly("eval_bound", &lpt::Engine::evaluation_bound)
      .def_property_readonly("vectors", &lpt::Engine::vectors)
      .def("value", &lpt::Engine::value, py::arg("node"), py::arg("t"))
      .def("node_formulas",
           [](const lpt::Engine& engine) {
             std::vector<std::string> texts;
             for (const lpt::TreeNode& node : engine.tree().nodes()) {
               texts.push_back(lpt::format(node.formula));
             }
             return texts;
           })
      .def("dump_json", [](const lpt::Engine& engine) { return engine.dump().dump(); })
      .def("signature",
           [](const lpt::Engine& engine) { return lpt::make_signature(engine).per_node; })
      .def("signature_text",
           [](const lpt::Engine& engine) {
             return lpt::signature_text(lpt::make_signature(engine));
           });

  m.def(
      "holds",
      [](const lpt::Formula& f, const lpt::Trace& trace, int t0) {
        return lpt::holds(f, trace, t0);
      },
      py::arg("formula"), py::arg("trace"), py::arg("t0"));
  m.def("oracle_tracking_vector", &lpt::oracle_tracking_vector, py::arg("formula"),
        py::arg("trace"));
  m.def(
      "status_under_continuations",
      [](const lpt::Formula& f, const lpt::Trace& prefix, int t,
         const std::vector<std::string>& vocabulary, int horizon, std::uint64_t budget) {
        return std::string(lpt::verdict_name(
            lpt::status_under_continuations(f, prefix, t, make_vocabulary(vocabulary), horizon,
                                            budget)));
      },
      py::arg("formula"), py::arg("prefix"), py::arg("t"), py::arg("vocabulary"),
      py::arg("horizon"), py::arg("budget") = lpt::kDefaultEnumerationBudget);

  m.def("merge_runs", &lpt::merge_runs, py::arg("values"));
  m.def(
      "signature_distance",
      [](const std::vector<std::vector<lpt::TrackingValue>>& a,
         const std::vector<std::vector<lpt::TrackingValue>>& b) {
        return lpt::signature_distance(lpt::Signature{a}, lpt::Signature{b});
      },
      py::arg("a"), py::arg("b"));

  py::class_<lpt::RMState>(m, "RMState")
      .def_static("init", &lpt::RMState::init, py::arg("formula"))
      .def("step",
           [](const lpt::RMState& state, const std::vector<std::string>& labels) {
             return state.step(lpt::LabelSet(labels));
           },
           py::arg("labels"))
      .def("finalize", &lpt::RMState::finalize)
      .def_property_readonly("is_terminal", &lpt::RMState::is_terminal)
      .def_property_readonly("vectors",
                             [](const lpt::RMState& state) { return state.engine().vectors(); })
      .def("signature", [](const lpt::RMState& state) { return state.signature().per_node; })
      .def("digest",
           [](const lpt::RMState& state, const std::string& kind) {
             if (kind == "state") return state.digest(lpt::DigestKind::State);
             if (kind != "signature") throw lpt::Error("digest kind must be signature|state");
             return state.digest(lpt::DigestKind::Signature);
           },
           py::arg("kind") = "signature")
      .def("__eq__", [](const lpt::RMState& a, const lpt::RMState& b) { return a == b; });

  m.def(
      "reward_goal",
      [](const lpt::RMState& next, const std::string& target, double base) {
        return lpt::reward(next, lpt::RewardPolicy::goal_state(target, base));
      },
      py::arg("state"), py::arg("target_digest"), py::arg("base") = 1.0);
  m.def(
      "reward_novelty",
      [](const lpt::RMState& next, const std::set<std::string>& seen, double base) {
        // the caller-owned set lives on the python side; copy semantics here
        const std::string digest = next.digest();
        if (base < 0.0) throw lpt::Error("reward base must be non-negative");
        return seen.count(digest) == 0 ? base : 0.0;
      },
      py::arg("state"), py::arg("seen"), py::arg("base") = 1.0);
}
