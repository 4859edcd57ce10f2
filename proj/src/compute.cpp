#include "qaw/compute.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qaw {

std::optional<IoAction> classify_io(const ActionLabel& a) {
  if (a.tau) return std::nullopt;
  const std::string& t = a.token;
  if (t.rfind("i?", 0) == 0 && t.size() > 2)
    return IoAction{IoKind::Input, t.substr(2)};
  if (t.rfind("o!", 0) == 0 && t.size() > 2) {
    Symbol d = t.substr(2);
    if (d == "eps") return IoAction{IoKind::EmptySignal, ""};
    return IoAction{IoKind::Output, std::move(d)};
  }
  return std::nullopt;
}

std::string status_str(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::Stuck: return "stuck";
    case RunStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

RunResult run_function(const Qa& m, const std::vector<Symbol>& input,
                       long long budget) {
  RunResult res;
  QaConfig cfg = initial_config(m);

  while (budget-- > 0) {
    auto succs = step(m, cfg);

    // Tier 1: moves that read the next unread datum.
    std::vector<std::pair<ActionLabel, QaConfig>> pick;
    for (auto& [a, n] : succs) {
      auto io = classify_io(a);
      if (io && io->kind == IoKind::Input && res.consumed < input.size() &&
          io->payload == input[res.consumed])
        pick.emplace_back(a, n);
    }

    // Tier 2: silent moves.
    if (pick.empty())
      for (auto& [a, n] : succs)
        if (a.tau) pick.emplace_back(a, n);

    // Tier 3: writes (the empty-signal counts as a write step).
    if (pick.empty())
      for (auto& [a, n] : succs) {
        auto io = classify_io(a);
        if (io && io->kind != IoKind::Input) pick.emplace_back(a, n);
      }

    if (pick.empty()) {
      res.halted_at = cfg.str();
      res.status = is_final(m, cfg) ? RunStatus::Completed : RunStatus::Stuck;
      return res;
    }
    if (pick.size() > 1)
      throw ValidationError("nondeterminism at " + cfg.str() + ": '" +
                            pick[0].first.str() + "' and '" +
                            pick[1].first.str() + "' are both eligible");

    const ActionLabel& act = pick[0].first;
    res.trace.push_back(act.str());
    if (auto io = classify_io(act)) {
      if (io->kind == IoKind::Input) ++res.consumed;
      if (io->kind == IoKind::Output) res.output.push_back(io->payload);
    }
    cfg = std::move(pick[0].second);
  }

  res.halted_at = cfg.str();
  res.status = RunStatus::BudgetExhausted;
  return res;
}

ComputationCheck check_computation(const Qa& m, const ExplorationBound& bound) {
  for (const auto& tok : m.actions)
    if (!classify_io(ActionLabel::visible(tok)))
      return {false, "action '" + tok + "' is not an i/o action"};

  FiniteLts lts = explore_qa(m, bound);

  if (auto v = determinism_violation(lts))
    return {false, "behaviour is not deterministic: " + *v};

  // Every completed trace must be built from reads and writes only; such a
  // trace is by construction an interleaving of the read word and the
  // written word.
  std::size_t max_len = static_cast<std::size_t>(std::max(bound.max_depth, 0));
  for (const auto& trace : completed_traces(lts, max_len))
    for (const auto& tok : trace)
      if (!classify_io(ActionLabel::visible(tok)))
        return {false, "completed trace uses non-i/o action '" + tok + "'"};

  ComputationCheck ok;
  if (lts.has_frontier())
    ok.note = "holds on the explored part; the graph was truncated";
  return ok;
}

}  // namespace qaw
