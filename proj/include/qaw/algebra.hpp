#pragma once
// A small process algebra with communicating ports: terms, their structural
// operational semantics, a recursive specification of the unbounded queue
// built from one-place cells, and the converse decomposition of a queue
// machine into a finite control talking to one queue over ports i and o.
//
// Action tokens carry their port discipline in their spelling: `c!d` sends
// datum d at port c, `c?d` receives it, and a matched send/receive pair
// steps jointly as the communication `c(d)`. The payload spelling `eps` is
// reserved for the empty-queue probe: it travels like a datum but is never
// a member of the declared data set. Tokens of any other shape are plain
// actions without port structure.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qaw/core.hpp"
#include "qaw/lts.hpp"

namespace qaw {

// ---------------------------------------------------------------------------
// Terms

enum class TermKind : std::uint8_t {
  Deadlock,  // no step, no termination
  Accept,    // no step, terminates
  Prefix,    // act . sub
  Choice,    // left + right
  Merge,     // left || right
  Encap,     // blocks unmatched sends/receives at one port
  Hide,      // turns communications at the listed ports into tau
  Var,       // reference into the ambient recursive specification
};

struct ProcessTerm;
using Term = std::shared_ptr<const ProcessTerm>;

struct ProcessTerm {
  TermKind kind = TermKind::Deadlock;
  ActionLabel act;              // Prefix
  Term left, right;             // children; unary nodes use `left`
  std::string port;             // Encap
  std::set<std::string> ports;  // Hide
  std::string var;              // Var
};

Term t_deadlock();
Term t_accept();
Term t_prefix(ActionLabel act, Term sub);
Term t_choice(Term l, Term r);
Term t_merge(Term l, Term r);
Term t_encap(std::string port, Term sub);
Term t_hide(std::set<std::string> ports, Term sub);
Term t_var(std::string name);

// Canonical fully-parenthesised rendering; doubles as state identity.
std::string term_str(const Term& t);

struct RecursiveSpec {
  std::map<std::string, Term> equations;
};

// ---------------------------------------------------------------------------
// Actions

enum class CommKind : std::uint8_t { Send, Receive, Comm, Plain, Tau };

struct CommAction {
  CommKind kind = CommKind::Tau;
  std::string port;     // Send / Receive / Comm
  Symbol payload;       // "eps" is the empty probe
  std::string token;    // Plain
  std::string str() const;
  ActionLabel label() const;
  auto operator<=>(const CommAction&) const = default;
};

// Reads the port discipline off a label: `c!d` → Send, `c?d` → Receive,
// `c(d)` → Comm; anything else visible is Plain.
CommAction classify_comm(const ActionLabel& a);

// ---------------------------------------------------------------------------
// Semantics

// All derivable steps of a closed term: prefixes fire, choice offers both
// sides, merge interleaves and lets matching send/receive pairs step as a
// communication, encapsulation drops unmatched sends/receives at its port,
// hiding relabels communications at its ports to tau, and variables unfold.
// Throws on unbound variables and on unguarded recursion.
std::vector<std::pair<CommAction, Term>> sos_step(const Term& t,
                                                  const RecursiveSpec& spec);

// The termination predicate: acceptance terminates, choice if either side
// does, merge if both do, wrappers and variables delegate.
bool terminates(const Term& t, const RecursiveSpec& spec);

// Bounded exploration of a term's behaviour; states are canonical term
// strings, finality is `terminates`, and a state's weight is its node count.
FiniteLts term_lts(const Term& t, const RecursiveSpec& spec,
                   const ExplorationBound& bound);

// ---------------------------------------------------------------------------
// The queue as a recursive specification

// Six equations Q_xy for the ordered port pairs from {i,o,l}: a queue that
// inputs at x and outputs at y may terminate, may report emptiness at y,
// and on receiving a datum becomes a one-place cell holding it, chained
// before a fresh queue that hands data down over the third port.
RecursiveSpec queue_spec(const std::vector<Symbol>& data);

// ---------------------------------------------------------------------------
// Finite control for a queue machine

// Rewrites a machine with primitive transition shapes only — enqueue one
// datum on any contents, dequeue exactly the head, or fire on the empty
// queue — into a finite control that keeps the queue contents in an
// external queue over ports i (enqueue) and o (dequeue). Control states
// cache the current head (`s@d`) or emptiness (`s@eps`); each machine
// transition becomes a gadget that performs the visible action and then
// realigns the cache, rotating the external queue through a `$` marker
// when a dequeue uncovers an unknown next head. Gadget steps that talk to
// the queue are tagged "port".
FiniteLts control_of(const Qa& m);

// Synchronous product of a control with the queue it expects: the control's
// `i!x` enqueues, `o?x` dequeues the matching head, `o?eps` probes
// emptiness — each joining the queue's move as one hidden step, tagged
// "comm" — while plain actions interleave. Unmatched port actions are
// blocked. The queue holds words over data ∪ {$}, is always willing to
// terminate, and never moves alone.
FiniteLts compose_with_queue(const FiniteLts& control,
                             const std::vector<Symbol>& data,
                             const ExplorationBound& bound);

// ---------------------------------------------------------------------------
// Text format
//
//   0                      deadlock        1   acceptance
//   a . p                  prefix (also `c!d . p`, `c?d . p`, `tau . p`)
//   p + q                  choice          p || q   merge
//   encap(c, p)            encapsulation at port c
//   hide({c, d}, p)        hiding at the listed ports
//   X                      variable
//
// Precedence: prefix binds tightest, then `||`, then `+`; parentheses as
// usual. A specification file is one `X = term` line per equation, with
// `#` comments. parse_term reads a single term.

Term parse_term(const std::string& text);
RecursiveSpec parse_spec(const std::string& text);
std::string write_spec(const RecursiveSpec& spec);

}  // namespace qaw
