// Python face of the workbench. All entry points take machine/spec file
// *text* and return plain Python structures, so scripts can drive the
// whole pipeline without touching the C++ types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qaw/algebra.hpp"
#include "qaw/bisim.hpp"
#include "qaw/compute.hpp"
#include "qaw/core.hpp"
#include "qaw/harness.hpp"
#include "qaw/lts.hpp"
#include "qaw/parse.hpp"
#include "qaw/rtm.hpp"
#include "qaw/transform.hpp"

namespace py = pybind11;
using namespace qaw;

namespace {

std::string sniff_kind(const std::string& text) {
  std::string line;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                               line.back() == '\r'))
        line.pop_back();
      std::size_t at = 0;
      while (at < line.size() && (line[at] == ' ' || line[at] == '\t')) ++at;
      if (at < line.size()) return line.substr(at);
      line.clear();
    } else {
      line += text[i];
    }
  }
  return "";
}

FiniteLts explore_text(const std::string& text, const ExplorationBound& b) {
  std::string kind = sniff_kind(text);
  if (kind == "qa") return explore_qa(parse_qa(text), b);
  if (kind == "qa2") return explore_qa2(parse_qa2(text), b);
  if (kind == "rtm") return explore_rtm(parse_rtm(text), b);
  throw ValidationError("unknown machine kind '" + kind + "'");
}

py::dict lts_dict(const FiniteLts& lts) {
  py::list states, edges;
  for (const auto& s : lts.states)
    states.append(py::dict(py::arg("desc") = s.desc, py::arg("final") = s.final,
                           py::arg("frontier") = s.frontier,
                           py::arg("level") = s.level));
  for (const auto& e : lts.edges)
    edges.append(py::dict(py::arg("src") = e.src, py::arg("label") = e.act.str(),
                          py::arg("dst") = e.dst, py::arg("tag") = e.tag));
  return py::dict(py::arg("states") = states, py::arg("edges") = edges,
                  py::arg("root") = lts.root);
}

py::dict bisim_dict(const BisimResult& res) {
  return py::dict(
      py::arg("verdict") = verdict_str(res.verdict),
      py::arg("blocks") = res.blocks, py::arg("reason") = res.reason,
      py::arg("witness") = res.witness,
      py::arg("witness_touches_frontier") = res.witness_touches_frontier);
}

template <class M>
py::dict pass_dict(const PassResult<M>& p, const std::string& machine_text) {
  return py::dict(
      py::arg("machine") = machine_text,
      py::arg("certificate") = p.certificate,
      py::arg("certificate_ok") = p.certificate_ok,
      py::arg("fresh_symbols") =
          std::vector<std::string>(p.fresh_symbols.begin(), p.fresh_symbols.end()),
      py::arg("fresh_states") =
          std::vector<std::string>(p.fresh_states.begin(), p.fresh_states.end()));
}

}  // namespace

PYBIND11_MODULE(_qaw, m) {
  m.doc() =
      "Queue-automaton workbench: bounded exploration, strong/branching "
      "equivalence, machine passes, transducer runs, the recursive queue "
      "specification, and the acceptance harness.";

  py::register_exception<ValidationError>(m, "MachineError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "FormatError", PyExc_ValueError);

  m.def(
      "validate",
      [](const std::string& text) -> std::vector<std::string> {
        std::string kind = sniff_kind(text);
        if (kind == "qa") return validate(parse_qa(text));
        if (kind == "qa2") return validate(parse_qa2(text));
        if (kind == "rtm") return validate(parse_rtm(text));
        throw ValidationError("unknown machine kind '" + kind + "'");
      },
      py::arg("text"),
      "Parse a machine file and return its well-formedness problems "
      "(empty list = ok).");

  m.def(
      "explore",
      [](const std::string& text, int depth, std::size_t max_states,
         std::size_t max_queue) {
        return lts_dict(explore_text(text, {depth, max_states, max_queue}));
      },
      py::arg("text"), py::arg("depth") = 8, py::arg("max_states") = 200000,
      py::arg("max_queue") = 64,
      "Bounded exploration of a machine file (.qa/.qa2/.rtm text) to a "
      "transition graph.");

  m.def(
      "accepts",
      [](const std::string& text, const std::vector<std::string>& word,
         int depth, std::size_t max_states, std::size_t max_queue) {
        AcceptVerdict v =
            accepts(parse_qa(text), word, {depth, max_states, max_queue});
        return py::dict(py::arg("accepted") = v.accepted,
                        py::arg("witness") = v.witness);
      },
      py::arg("text"), py::arg("word"), py::arg("depth") = 20,
      py::arg("max_states") = 200000, py::arg("max_queue") = 64,
      "Direct run search for a word; 'accepted' is definitive, a miss only "
      "says no run exists within the bound.");

  m.def(
      "bisim",
      [](const std::string& left, const std::string& right,
         const std::string& kind, int depth, std::size_t max_states,
         std::size_t max_queue) {
        ExplorationBound b{depth, max_states, max_queue};
        FiniteLts l = explore_text(left, b), r = explore_text(right, b);
        if (kind != "strong" && kind != "branching")
          throw ValidationError("kind must be 'strong' or 'branching'");
        return bisim_dict(kind == "strong" ? strong_bisim(l, r)
                                           : branching_bisim(l, r));
      },
      py::arg("left"), py::arg("right"), py::arg("kind") = "branching",
      py::arg("depth") = 8, py::arg("max_states") = 200000,
      py::arg("max_queue") = 64,
      "Compare two machines' bounded behaviours.");

  m.def(
      "transform",
      [](const std::string& text, const std::string& pass_name, int check_depth,
         std::size_t max_states, std::size_t max_queue) {
        ExplorationBound cb{check_depth, max_states, max_queue};
        py::dict out;
        std::optional<std::pair<FiniteLts, FiniteLts>> chk;
        if (pass_name == "star-elim" || pass_name == "normalize") {
          Qa in = parse_qa(text);
          PassResult<Qa> p = pass_name == "star-elim"
                                 ? eliminate_any_triggers(in)
                                 : normalize(in);
          if (check_depth > 0) chk = {explore_qa(in, cb), explore_qa(p.machine, cb)};
          out = pass_dict(p, write_qa(p.machine));
        } else if (pass_name == "merge-queues") {
          Qa2 in = parse_qa2(text);
          PassResult<Qa> p = merge_two_queues(in);
          if (check_depth > 0)
            chk = {explore_qa2(in, cb), explore_qa(p.machine, cb)};
          out = pass_dict(p, write_qa(p.machine));
        } else if (pass_name == "to-rtm") {
          Qa in = parse_qa(text);
          PassResult<Rtm> p = qa_to_rtm(in);
          if (check_depth > 0)
            chk = {explore_qa(in, cb), explore_rtm(p.machine, cb)};
          out = pass_dict(p, write_rtm(p.machine));
        } else if (pass_name == "from-rtm") {
          Rtm in = parse_rtm(text);
          PassResult<Qa> p = rtm_to_qa(in);
          if (check_depth > 0)
            chk = {explore_rtm(in, cb), explore_qa(p.machine, cb)};
          out = pass_dict(p, write_qa(p.machine));
        } else {
          throw ValidationError("unknown pass '" + pass_name + "'");
        }
        if (chk) out["check"] = bisim_dict(branching_bisim(chk->first, chk->second));
        return out;
      },
      py::arg("text"), py::arg("pass_name"), py::arg("check_depth") = 0,
      py::arg("max_states") = 200000, py::arg("max_queue") = 64,
      "Run a machine pass (star-elim | normalize | merge-queues | to-rtm | "
      "from-rtm); check_depth > 0 also compares input and output behaviour.");

  m.def(
      "run",
      [](const std::string& text, const std::vector<std::string>& input,
         long long budget) {
        RunResult r = run_function(parse_qa(text), input, budget);
        return py::dict(py::arg("output") = r.output,
                        py::arg("status") = status_str(r.status),
                        py::arg("trace") = r.trace,
                        py::arg("consumed") = r.consumed,
                        py::arg("halted_at") = r.halted_at);
      },
      py::arg("text"), py::arg("input"), py::arg("budget") = 100000,
      "Run a machine as an input/output function transducer.");

  m.def(
      "check_computation",
      [](const std::string& text, int depth, std::size_t max_states,
         std::size_t max_queue) {
        ComputationCheck c =
            check_computation(parse_qa(text), {depth, max_states, max_queue});
        return py::dict(py::arg("ok") = c.ok, py::arg("note") = c.note);
      },
      py::arg("text"), py::arg("depth") = 6, py::arg("max_states") = 30000,
      py::arg("max_queue") = 16,
      "Check the bounded behaviour is deterministic and i/o-shaped.");

  m.def(
      "queue_spec",
      [](const std::vector<std::string>& data) {
        return write_spec(queue_spec(data));
      },
      py::arg("data"),
      "The six-equation recursive queue specification over the given data, "
      "as specification-file text.");

  m.def(
      "control",
      [](const std::string& text) {
        return lts_dict(control_of(parse_qa(text)));
      },
      py::arg("text"),
      "Finite control of a primitive-shape machine; queue conversations are "
      "tagged 'port'.");

  m.def(
      "compose",
      [](const std::string& text, int depth, std::size_t max_states,
         std::size_t max_queue) {
        Qa machine = parse_qa(text);
        return lts_dict(compose_with_queue(control_of(machine), machine.data,
                                           {depth, max_states, max_queue}));
      },
      py::arg("text"), py::arg("depth") = 8, py::arg("max_states") = 200000,
      py::arg("max_queue") = 64,
      "Re-couple a machine's finite control with the external queue; the "
      "queue conversations come back as silent steps tagged 'comm'.");

  m.def(
      "criteria",
      [](const std::string& corpus_dir, const std::string& only) {
        py::list out;
        for (const auto& r : run_criteria(corpus_dir, only))
          out.append(py::dict(py::arg("id") = r.id, py::arg("name") = r.name,
                              py::arg("passed") = r.pass,
                              py::arg("detail") = r.detail));
        return out;
      },
      py::arg("corpus_dir"), py::arg("only") = "",
      "Re-run the acceptance criteria against a corpus directory.");
}
