// Command-line front end for the workbench: run searches, bounded
// exploration, equivalence checks, machine passes, transducer runs, the
// process-algebra operations, and the acceptance harness.
//
// Exit codes: 0 success / related verdict, 1 negative verdict (rejected
// word, distinguished pair, failed run, failed criterion), 2 usage or
// parse/validation errors.

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qaw/algebra.hpp"
#include "qaw/bisim.hpp"
#include "qaw/compute.hpp"
#include "qaw/core.hpp"
#include "qaw/harness.hpp"
#include "qaw/lts.hpp"
#include "qaw/parse.hpp"
#include "qaw/rtm.hpp"
#include "qaw/transform.hpp"

using namespace qaw;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Bounds {
  int depth = 8;
  std::size_t states = 200000;
  std::size_t weight = 64;
  ExplorationBound b() const { return {depth, states, weight}; }
};

void add_bounds(CLI::App* cmd, Bounds& b) {
  cmd->add_option("--depth", b.depth, "visible exploration depth")
      ->capture_default_str();
  cmd->add_option("--max-states", b.states, "state budget")
      ->capture_default_str();
  cmd->add_option("--max-queue", b.weight,
                  "per-configuration size cap (queue/tape length, term size)")
      ->capture_default_str();
}

// First significant line of a machine file names its kind.
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

FiniteLts explore_any(const std::string& path, const ExplorationBound& b) {
  std::string text = read_file(path);
  std::string kind = sniff_kind(text);
  if (kind == "qa") return explore_qa(parse_qa(text), b);
  if (kind == "qa2") return explore_qa2(parse_qa2(text), b);
  if (kind == "rtm") return explore_rtm(parse_rtm(text), b);
  throw ValidationError(path + ": unknown machine kind '" + kind + "'");
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_file(out_path, content);
}

void lts_summary(const FiniteLts& lts) {
  std::size_t frontier = 0;
  for (const auto& s : lts.states) frontier += s.frontier;
  std::fprintf(stderr, "states: %zu (%zu deferred at the bound), edges: %zu\n",
               lts.states.size(), frontier, lts.edges.size());
}

int report_verdict(const BisimResult& res) {
  std::printf("verdict: %s\n", verdict_str(res.verdict).c_str());
  std::printf("blocks: %zu\n", res.blocks);
  if (!res.reason.empty()) std::printf("reason: %s\n", res.reason.c_str());
  if (res.verdict == Verdict::Distinguished) {
    std::printf("definitive: %s\n",
                res.witness_touches_frontier
                    ? "no (the witness leans on the truncation frontier)"
                    : "yes (the witness is clear of the frontier)");
    for (const auto& w : res.witness) std::printf("  %s\n", w.c_str());
  }
  return res.verdict == Verdict::Distinguished ? 1 : 0;
}

// Shared tail of every transform: print the certificate and fresh names,
// optionally equivalence-check input against output, write the result.
template <class M>
int finish_pass(const PassResult<M>& p, const std::string& out_text,
                const std::string& out_path,
                const std::optional<std::pair<FiniteLts, FiniteLts>>& check,
                int check_depth) {
  for (const auto& line : p.certificate)
    std::fprintf(stderr, "%s\n", line.c_str());
  if (!p.fresh_symbols.empty() || !p.fresh_states.empty())
    std::fprintf(stderr, "fresh: %zu symbols, %zu states\n",
                 p.fresh_symbols.size(), p.fresh_states.size());
  int rc = p.certificate_ok ? 0 : 1;
  if (check) {
    BisimResult res = branching_bisim(check->first, check->second);
    std::fprintf(stderr, "check at depth %d: %s\n", check_depth,
                 verdict_str(res.verdict).c_str());
    if (res.verdict == Verdict::Distinguished) {
      std::fprintf(stderr, "  %s\n", res.reason.c_str());
      // a distinction that leans on the truncation frontier is not held
      // against the pass; a definitive one is
      if (!res.witness_touches_frontier) rc = 1;
    }
  }
  emit(out_path, out_text);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"queue-automaton and process-semantics workbench"};
  app.require_subcommand(1);

  // accept
  auto* accept_cmd =
      app.add_subcommand("accept", "decide word membership by direct run search");
  std::string accept_in, accept_word;
  Bounds accept_b{20, 200000, 64};
  accept_cmd->add_option("--in", accept_in, "machine file (.qa)")->required();
  accept_cmd->add_option("--word", accept_word,
                         "dot-separated action word, empty for the empty word");
  add_bounds(accept_cmd, accept_b);

  // explore / dot
  auto* explore_cmd =
      app.add_subcommand("explore", "bounded exploration to a transition graph");
  auto* dot_cmd = app.add_subcommand("dot", "bounded exploration to Graphviz");
  std::string explore_in, explore_out, dot_in, dot_out;
  Bounds explore_b, dot_b;
  explore_cmd->add_option("--in", explore_in, "machine file (.qa/.qa2/.rtm)")
      ->required();
  explore_cmd->add_option("--out", explore_out, "output file (default stdout)");
  add_bounds(explore_cmd, explore_b);
  dot_cmd->add_option("--in", dot_in, "machine file (.qa/.qa2/.rtm)")->required();
  dot_cmd->add_option("--out", dot_out, "output file (default stdout)");
  add_bounds(dot_cmd, dot_b);

  // bisim
  auto* bisim_cmd =
      app.add_subcommand("bisim", "compare two machines' bounded behaviours");
  std::string bisim_left, bisim_right, bisim_kind = "branching";
  Bounds bisim_b;
  bisim_cmd->add_option("--left", bisim_left, "machine file")->required();
  bisim_cmd->add_option("--right", bisim_right, "machine file")->required();
  bisim_cmd->add_option("--kind", bisim_kind, "strong | branching")
      ->check(CLI::IsMember({"strong", "branching"}))
      ->capture_default_str();
  add_bounds(bisim_cmd, bisim_b);

  // transform
  auto* transform_cmd =
      app.add_subcommand("transform", "rewrite a machine and certify the result");
  std::string tf_pass, tf_in, tf_out;
  int tf_check_depth = 0;
  Bounds tf_b;
  transform_cmd
      ->add_option("--pass", tf_pass,
                   "star-elim | normalize | merge-queues | to-rtm | from-rtm")
      ->check(CLI::IsMember(
          {"star-elim", "normalize", "merge-queues", "to-rtm", "from-rtm"}))
      ->required();
  transform_cmd->add_option("--in", tf_in, "input machine file")->required();
  transform_cmd->add_option("--out", tf_out, "output file (default stdout)");
  transform_cmd->add_option(
      "--check-depth", tf_check_depth,
      "also compare input and output behaviour at this depth (0 = skip)");
  transform_cmd->add_option("--max-states", tf_b.states, "check state budget")
      ->capture_default_str();
  transform_cmd
      ->add_option("--max-queue", tf_b.weight, "check per-configuration cap")
      ->capture_default_str();

  // compute
  auto* compute_cmd =
      app.add_subcommand("compute", "run a machine as an input/output function");
  std::string compute_in, compute_input;
  long long compute_budget = 100000;
  compute_cmd->add_option("--in", compute_in, "machine file (.qa)")->required();
  compute_cmd->add_option("--input", compute_input,
                          "dot-separated input word, empty for the empty word");
  compute_cmd->add_option("--budget", compute_budget, "step budget")
      ->capture_default_str();

  // algebra
  auto* algebra_cmd =
      app.add_subcommand("algebra", "recursive queue specification and controls");
  algebra_cmd->require_subcommand(1);
  auto* alg_spec = algebra_cmd->add_subcommand(
      "spec", "emit the queue specification, or echo a specification file");
  std::string spec_data, spec_in, spec_out;
  alg_spec->add_option("--data", spec_data, "comma-separated data symbols");
  alg_spec->add_option("--in", spec_in, "specification file (.bcp) to echo");
  alg_spec->add_option("--out", spec_out, "output file (default stdout)");
  auto* alg_control = algebra_cmd->add_subcommand(
      "control", "extract the finite control of a primitive-shape machine");
  std::string control_in, control_out;
  alg_control->add_option("--in", control_in, "machine file (.qa)")->required();
  alg_control->add_option("--out", control_out, "output file (default stdout)");
  auto* alg_compose = algebra_cmd->add_subcommand(
      "compose", "re-couple a machine's control with the external queue");
  std::string compose_in, compose_out;
  Bounds compose_b;
  alg_compose->add_option("--in", compose_in, "machine file (.qa)")->required();
  alg_compose->add_option("--out", compose_out, "output file (default stdout)");
  add_bounds(alg_compose, compose_b);

  // harness
  auto* harness_cmd =
      app.add_subcommand("harness", "re-run the acceptance criteria");
  std::string harness_corpus = "corpus", harness_only;
  harness_cmd->add_option("--corpus", harness_corpus, "corpus directory")
      ->capture_default_str();
  harness_cmd->add_option("--only", harness_only,
                          "run only criteria whose number or name matches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (accept_cmd->parsed()) {
      Qa m = parse_qa(read_file(accept_in));
      AcceptVerdict v = accepts(m, split(accept_word, '.'), accept_b.b());
      if (v.accepted) {
        std::printf("accepted\n");
        for (const auto& w : v.witness) std::printf("  %s\n", w.c_str());
        return 0;
      }
      std::printf("no accepting run within the bound (depth %d, size cap %zu)\n",
                  accept_b.depth, accept_b.weight);
      return 1;
    }

    if (explore_cmd->parsed()) {
      FiniteLts lts = explore_any(explore_in, explore_b.b());
      lts_summary(lts);
      emit(explore_out, write_lts(lts));
      return 0;
    }

    if (dot_cmd->parsed()) {
      FiniteLts lts = explore_any(dot_in, dot_b.b());
      lts_summary(lts);
      emit(dot_out, to_dot(lts));
      return 0;
    }

    if (bisim_cmd->parsed()) {
      FiniteLts l = explore_any(bisim_left, bisim_b.b());
      FiniteLts r = explore_any(bisim_right, bisim_b.b());
      BisimResult res =
          bisim_kind == "strong" ? strong_bisim(l, r) : branching_bisim(l, r);
      return report_verdict(res);
    }

    if (transform_cmd->parsed()) {
      ExplorationBound cb{tf_check_depth, tf_b.states, tf_b.weight};
      std::optional<std::pair<FiniteLts, FiniteLts>> chk;
      std::string text = read_file(tf_in);
      if (tf_pass == "star-elim" || tf_pass == "normalize") {
        Qa in = parse_qa(text);
        PassResult<Qa> p =
            tf_pass == "star-elim" ? eliminate_any_triggers(in) : normalize(in);
        if (tf_check_depth > 0)
          chk = {explore_qa(in, cb), explore_qa(p.machine, cb)};
        return finish_pass(p, write_qa(p.machine), tf_out, chk, tf_check_depth);
      }
      if (tf_pass == "merge-queues") {
        Qa2 in = parse_qa2(text);
        PassResult<Qa> p = merge_two_queues(in);
        if (tf_check_depth > 0)
          chk = {explore_qa2(in, cb), explore_qa(p.machine, cb)};
        return finish_pass(p, write_qa(p.machine), tf_out, chk, tf_check_depth);
      }
      if (tf_pass == "to-rtm") {
        Qa in = parse_qa(text);
        PassResult<Rtm> p = qa_to_rtm(in);
        if (tf_check_depth > 0)
          chk = {explore_qa(in, cb), explore_rtm(p.machine, cb)};
        return finish_pass(p, write_rtm(p.machine), tf_out, chk, tf_check_depth);
      }
      Rtm in = parse_rtm(text);
      PassResult<Qa> p = rtm_to_qa(in);
      if (tf_check_depth > 0)
        chk = {explore_rtm(in, cb), explore_qa(p.machine, cb)};
      return finish_pass(p, write_qa(p.machine), tf_out, chk, tf_check_depth);
    }

    if (compute_cmd->parsed()) {
      Qa m = parse_qa(read_file(compute_in));
      std::vector<std::string> input = split(compute_input, '.');
      RunResult r = run_function(m, input, compute_budget);
      std::printf("output: %s\n", word_str(r.output).c_str());
      std::printf("status: %s\n", status_str(r.status).c_str());
      std::printf("consumed: %zu of %zu\n", r.consumed, input.size());
      if (r.status != RunStatus::Completed)
        std::printf("halted at: %s\n", r.halted_at.c_str());
      std::string trace;
      for (std::size_t i = 0; i < r.trace.size(); ++i)
        trace += (i ? " " : "") + r.trace[i];
      std::printf("trace: %s\n", trace.empty() ? "-" : trace.c_str());
      return r.status == RunStatus::Completed ? 0 : 1;
    }

    if (alg_spec->parsed()) {
      if (spec_data.empty() == spec_in.empty())
        throw ValidationError("algebra spec needs exactly one of --data, --in");
      RecursiveSpec s = spec_in.empty() ? queue_spec(split(spec_data, ','))
                                        : parse_spec(read_file(spec_in));
      std::fprintf(stderr, "%zu equations\n", s.equations.size());
      emit(spec_out, write_spec(s));
      return 0;
    }

    if (alg_control->parsed()) {
      FiniteLts c = control_of(parse_qa(read_file(control_in)));
      lts_summary(c);
      emit(control_out, write_lts(c));
      return 0;
    }

    if (alg_compose->parsed()) {
      Qa m = parse_qa(read_file(compose_in));
      FiniteLts composed =
          compose_with_queue(control_of(m), m.data, compose_b.b());
      lts_summary(composed);
      emit(compose_out, write_lts(composed));
      return 0;
    }

    if (harness_cmd->parsed()) {
      auto results = run_criteria(harness_corpus, harness_only);
      int failed = 0;
      for (const auto& r : results) {
        std::printf("%s %2d %-25s %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        failed += !r.pass;
      }
      std::printf("%zu criteria, %d failed\n", results.size(), failed);
      return failed == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
