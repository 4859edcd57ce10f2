#pragma once
// Core model: symbols, action labels, queue words, single- and two-queue
// machines, and their small-step semantics.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qaw {

// A queue symbol, kept as a short token. Single non-ASCII glyphs such as
// the divider are valid symbols on their own.
using Symbol = std::string;

// Reserved symbols minted by the transformation passes. Passes fail fast if
// an input machine already uses one of these as data.
inline const Symbol kMark = "$";    // in-flight position marker
inline const Symbol kSplit = "≬";   // queue divider / tape split
inline const Symbol kBlank = "_";   // tape blank
// Label of the self-loop attached to frontier states when an explored
// graph is sealed for comparison.
inline const std::string kCutLabel = "‹cut›";

struct ActionLabel {
  bool tau = false;
  std::string token;  // empty iff tau

  static ActionLabel silent() { return {true, ""}; }
  static ActionLabel visible(std::string t) { return {false, std::move(t)}; }
  std::string str() const { return tau ? "tau" : token; }
  auto operator<=>(const ActionLabel&) const = default;
};

enum class TriggerKind : std::uint8_t { Any, Empty, Head };

// What a transition requires of (and removes from) its queue:
//   Any   - fires on any contents, dequeues nothing
//   Empty - fires only on the empty queue
//   Head  - fires when the head equals `head`, which is dequeued
struct Trigger {
  TriggerKind kind = TriggerKind::Any;
  Symbol head;  // meaningful only for Head

  static Trigger any() { return {TriggerKind::Any, ""}; }
  static Trigger empty() { return {TriggerKind::Empty, ""}; }
  static Trigger on(Symbol d) { return {TriggerKind::Head, std::move(d)}; }
  std::string str() const;
  auto operator<=>(const Trigger&) const = default;
};

// Queue contents. Index 0 is the write end (most recently enqueued); the
// back is the read end, i.e. the next symbol to be dequeued. An enqueue
// block d1...dn is prepended in order, so within one block dn is dequeued
// first.
using QueueWord = std::vector<Symbol>;

bool trigger_enabled(const Trigger& t, const QueueWord& w);
// Applies trigger + enqueue block to w. Precondition: trigger_enabled.
QueueWord apply_transition(const Trigger& t, const std::vector<Symbol>& enqueue,
                           const QueueWord& w);
// "d1.d2" with the head last; "-" for the empty word.
std::string word_str(const QueueWord& w);

struct QaTransition {
  std::string src;
  ActionLabel act;
  Trigger trig;
  std::vector<Symbol> enq;
  std::string dst;
  auto operator<=>(const QaTransition&) const = default;
};

struct Qa {
  std::vector<Symbol> data;
  std::vector<std::string> actions;  // visible action tokens; tau is implicit
  std::vector<std::string> states;
  std::string initial;
  std::set<std::string> finals;
  std::vector<QaTransition> transitions;

  bool has_state(const std::string& s) const;
  bool has_data(const Symbol& d) const;
};

struct QaConfig {
  std::string state;
  QueueWord queue;
  std::string str() const;
};

std::vector<std::pair<ActionLabel, QaConfig>> step(const Qa& m, const QaConfig& c);
QaConfig initial_config(const Qa& m);
bool is_final(const Qa& m, const QaConfig& c);

// Two-queue machine: a transition carries one trigger and one enqueue block
// per queue; both components must fire together.
struct Qa2Transition {
  std::string src;
  ActionLabel act;
  Trigger trig1, trig2;
  std::vector<Symbol> enq1, enq2;
  std::string dst;
  auto operator<=>(const Qa2Transition&) const = default;
};

struct Qa2 {
  std::vector<Symbol> data;
  std::vector<std::string> actions;
  std::vector<std::string> states;
  std::string initial;
  std::set<std::string> finals;
  std::vector<Qa2Transition> transitions;

  bool has_state(const std::string& s) const;
  bool has_data(const Symbol& d) const;
};

struct Qa2Config {
  std::string state;
  QueueWord q1, q2;
  std::string str() const;
};

std::vector<std::pair<ActionLabel, Qa2Config>> step(const Qa2& m, const Qa2Config& c);
Qa2Config initial_config(const Qa2& m);
bool is_final(const Qa2& m, const Qa2Config& c);

// Structural well-formedness. Returns one message per problem; empty = ok.
std::vector<std::string> validate(const Qa& m);
std::vector<std::string> validate(const Qa2& m);

// True iff `s` is a well-formed symbol: ASCII alphanumerics, '_', '$', or
// the reserved glyphs for divider/blank.
bool valid_symbol(const Symbol& s);
// True iff `s` is usable as a *declared* data symbol (valid and not one of
// the format's keywords).
bool valid_data_symbol(const Symbol& s);
// True iff `t` is usable as a visible action token.
bool valid_action_token(const std::string& t);

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qaw
