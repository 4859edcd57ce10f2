#pragma once
// Tape machines with explicit termination states and an interaction-first
// reading: transitions carry an action label, a read/write pair and a head
// move. The tape is kept in a canonical form with outer blanks stripped.

#include <string>
#include <utility>
#include <vector>

#include "qaw/core.hpp"

namespace qaw {

struct RtmTransition {
  std::string src;
  ActionLabel act;
  Symbol read;   // symbol under the head (kBlank for the blank)
  Symbol write;  // symbol written before the move
  bool move_right = false;
  std::string dst;
  auto operator<=>(const RtmTransition&) const = default;
};

struct Rtm {
  std::vector<Symbol> data;  // tape alphabet, excluding the blank
  std::vector<std::string> actions;
  std::vector<std::string> states;
  std::string initial;
  std::set<std::string> finals;
  std::vector<RtmTransition> transitions;

  bool has_state(const std::string& s) const;
  bool has_data(const Symbol& d) const;  // blank counts as available
};

// Tape instance around the head. `left` is stored leftmost-first; `right`
// is stored head-adjacent-first. Canonical form strips blanks at the outer
// ends, so the all-blank tape is ({}, blank, {}).
struct TapeConfig {
  std::string state;
  std::vector<Symbol> left;
  Symbol head = kBlank;
  std::vector<Symbol> right;
  std::string str() const;
};

void canonicalize(TapeConfig& c);
TapeConfig initial_config(const Rtm& m);
bool is_final(const Rtm& m, const TapeConfig& c);
std::vector<std::pair<ActionLabel, TapeConfig>> step(const Rtm& m, const TapeConfig& c);

std::vector<std::string> validate(const Rtm& m);

}  // namespace qaw
