#pragma once
// Input/output runs of queue machines seen as transducers: the machine
// reads a word on the `i` port, may work silently in between, and writes
// its answer on the `o` port.

#include <optional>
#include <string>
#include <vector>

#include "qaw/core.hpp"
#include "qaw/lts.hpp"

namespace qaw {

// Classification of an action token on the designated ports: `i?d` reads a
// datum, `o!d` writes one, and `o!eps` announces an empty answer. Any other
// token is not an i/o action and yields nullopt.
enum class IoKind { Input, Output, EmptySignal };

struct IoAction {
  IoKind kind = IoKind::Input;
  Symbol payload;  // empty for the empty-signal
};

std::optional<IoAction> classify_io(const ActionLabel& a);

enum class RunStatus { Completed, Stuck, BudgetExhausted };
std::string status_str(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::Completed;
  std::vector<Symbol> output;      // data written on `o`, empty-signal excluded
  std::vector<std::string> trace;  // every step taken, tau included
  std::string halted_at;           // configuration where the run ended
  std::size_t consumed = 0;        // how many input data were read
};

// Feeds `input` to the machine one datum at a time and collects what it
// writes. Scheduling at each configuration: a move reading the next unread
// datum wins, else a silent move, else the unique enabled write. Two
// eligible moves in the winning tier is a hard error (the machine is not
// functioning as a transducer). The run Completes when no tier fires and
// the configuration is final; unread input is tolerated there because a
// machine may commit to its answer early. A non-final halt is Stuck, and
// `budget` caps the number of steps.
RunResult run_function(const Qa& m, const std::vector<Symbol>& input,
                       long long budget = 100000);

// Checks that the machine's bounded behaviour is shaped like a computation:
// the explored graph is deterministic (per configuration: at most one
// successor per label, never a visible move alongside a silent one) and
// every completed trace consists of i/o labels only — so each accepted word
// is an interleaving of a read word and a written word. `note` carries the
// failure reason, or a truncation caveat when the graph has a frontier.
struct ComputationCheck {
  bool ok = true;
  std::string note;
};

ComputationCheck check_computation(const Qa& m, const ExplorationBound& bound);

}  // namespace qaw
