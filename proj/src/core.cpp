#include "qaw/core.hpp"

#include <algorithm>
#include <sstream>

namespace qaw {

std::string Trigger::str() const {
  switch (kind) {
    case TriggerKind::Any: return "any";
    case TriggerKind::Empty: return "eps";
    case TriggerKind::Head: return head;
  }
  return "?";
}

bool trigger_enabled(const Trigger& t, const QueueWord& w) {
  switch (t.kind) {
    case TriggerKind::Any: return true;
    case TriggerKind::Empty: return w.empty();
    case TriggerKind::Head: return !w.empty() && w.back() == t.head;
  }
  return false;
}

QueueWord apply_transition(const Trigger& t, const std::vector<Symbol>& enqueue,
                           const QueueWord& w) {
  QueueWord out = w;
  if (t.kind == TriggerKind::Head) out.pop_back();
  out.insert(out.begin(), enqueue.begin(), enqueue.end());
  return out;
}

std::string word_str(const QueueWord& w) {
  if (w.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << '.';
    os << w[i];
  }
  return os.str();
}

bool Qa::has_state(const std::string& s) const {
  return std::find(states.begin(), states.end(), s) != states.end();
}
bool Qa::has_data(const Symbol& d) const {
  return std::find(data.begin(), data.end(), d) != data.end();
}
bool Qa2::has_state(const std::string& s) const {
  return std::find(states.begin(), states.end(), s) != states.end();
}
bool Qa2::has_data(const Symbol& d) const {
  return std::find(data.begin(), data.end(), d) != data.end();
}

std::string QaConfig::str() const { return "(" + state + "," + word_str(queue) + ")"; }
std::string Qa2Config::str() const {
  return "(" + state + "," + word_str(q1) + "," + word_str(q2) + ")";
}

std::vector<std::pair<ActionLabel, QaConfig>> step(const Qa& m, const QaConfig& c) {
  std::vector<std::pair<ActionLabel, QaConfig>> out;
  for (const auto& t : m.transitions) {
    if (t.src != c.state || !trigger_enabled(t.trig, c.queue)) continue;
    out.push_back({t.act, {t.dst, apply_transition(t.trig, t.enq, c.queue)}});
  }
  return out;
}

QaConfig initial_config(const Qa& m) { return {m.initial, {}}; }
bool is_final(const Qa& m, const QaConfig& c) { return m.finals.count(c.state) != 0; }

std::vector<std::pair<ActionLabel, Qa2Config>> step(const Qa2& m, const Qa2Config& c) {
  std::vector<std::pair<ActionLabel, Qa2Config>> out;
  for (const auto& t : m.transitions) {
    if (t.src != c.state) continue;
    if (!trigger_enabled(t.trig1, c.q1) || !trigger_enabled(t.trig2, c.q2)) continue;
    out.push_back({t.act,
                   {t.dst, apply_transition(t.trig1, t.enq1, c.q1),
                    apply_transition(t.trig2, t.enq2, c.q2)}});
  }
  return out;
}

Qa2Config initial_config(const Qa2& m) { return {m.initial, {}, {}}; }
bool is_final(const Qa2& m, const Qa2Config& c) { return m.finals.count(c.state) != 0; }

namespace {

// Multi-byte glyphs admitted inside symbols.
const std::vector<std::string> kGlyphs = {kSplit, "□"};

bool ascii_symbol_char(char ch) {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
         (ch >= '0' && ch <= '9') || ch == '_' || ch == '$';
}

}  // namespace

bool valid_symbol(const Symbol& s) {
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size();) {
    unsigned char ch = static_cast<unsigned char>(s[i]);
    if (ch < 0x80) {
      if (!ascii_symbol_char(s[i])) return false;
      ++i;
      continue;
    }
    bool matched = false;
    for (const auto& g : kGlyphs) {
      if (s.compare(i, g.size(), g) == 0) {
        i += g.size();
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool valid_data_symbol(const Symbol& s) {
  return valid_symbol(s) && s != "eps" && s != "any" && s != "tau" && s != "-";
}

bool valid_action_token(const std::string& t) {
  if (t.empty() || t == "tau" || t == "-") return false;
  for (char ch : t) {
    unsigned char u = static_cast<unsigned char>(ch);
    if (u <= ' ' || u >= 0x7f || ch == '#' || ch == '"') return false;
  }
  return true;
}

namespace {

template <class Machine>
void validate_common(const Machine& m, std::vector<std::string>& out) {
  if (m.states.empty()) out.push_back("machine has no states");
  std::set<std::string> seen;
  for (const auto& s : m.states) {
    if (!valid_data_symbol(s)) out.push_back("bad state name: " + s);
    if (!seen.insert(s).second) out.push_back("duplicate state: " + s);
  }
  std::set<Symbol> dseen;
  for (const auto& d : m.data) {
    if (!valid_data_symbol(d)) out.push_back("bad data symbol: " + d);
    if (!dseen.insert(d).second) out.push_back("duplicate data symbol: " + d);
  }
  std::set<std::string> aseen;
  for (const auto& a : m.actions) {
    if (!valid_action_token(a)) out.push_back("bad action token: " + a);
    if (!aseen.insert(a).second) out.push_back("duplicate action: " + a);
  }
  if (!m.has_state(m.initial)) out.push_back("initial state undeclared: " + m.initial);
  for (const auto& f : m.finals)
    if (!m.has_state(f)) out.push_back("final state undeclared: " + f);
}

template <class Machine>
void check_trigger(const Machine& m, const Trigger& t, const std::string& where,
                   std::vector<std::string>& out) {
  if (t.kind == TriggerKind::Head && !m.has_data(t.head))
    out.push_back(where + ": trigger symbol not in data: " + t.head);
}

template <class Machine>
void check_block(const Machine& m, const std::vector<Symbol>& blk, const std::string& where,
                 std::vector<std::string>& out) {
  for (const auto& d : blk)
    if (!m.has_data(d)) out.push_back(where + ": enqueued symbol not in data: " + d);
}

template <class Machine, class Transition>
void check_endpoints(const Machine& m, const Transition& t, const std::string& where,
                     std::vector<std::string>& out) {
  if (!m.has_state(t.src)) out.push_back(where + ": source undeclared: " + t.src);
  if (!m.has_state(t.dst)) out.push_back(where + ": target undeclared: " + t.dst);
  if (!t.act.tau &&
      std::find(m.actions.begin(), m.actions.end(), t.act.token) == m.actions.end())
    out.push_back(where + ": action undeclared: " + t.act.token);
}

}  // namespace

std::vector<std::string> validate(const Qa& m) {
  std::vector<std::string> out;
  validate_common(m, out);
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    std::string where = "transition " + std::to_string(i);
    check_endpoints(m, t, where, out);
    check_trigger(m, t.trig, where, out);
    check_block(m, t.enq, where, out);
  }
  return out;
}

std::vector<std::string> validate(const Qa2& m) {
  std::vector<std::string> out;
  validate_common(m, out);
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    std::string where = "transition " + std::to_string(i);
    check_endpoints(m, t, where, out);
    check_trigger(m, t.trig1, where, out);
    check_trigger(m, t.trig2, where, out);
    check_block(m, t.enq1, where, out);
    check_block(m, t.enq2, where, out);
  }
  return out;
}

}  // namespace qaw
