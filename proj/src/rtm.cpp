#include "qaw/rtm.hpp"

#include <algorithm>
#include <sstream>

namespace qaw {

bool Rtm::has_state(const std::string& s) const {
  return std::find(states.begin(), states.end(), s) != states.end();
}
bool Rtm::has_data(const Symbol& d) const {
  return d == kBlank || std::find(data.begin(), data.end(), d) != data.end();
}

namespace {
std::string side_str(const std::vector<Symbol>& v) {
  if (v.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << '.';
    os << v[i];
  }
  return os.str();
}
}  // namespace

std::string TapeConfig::str() const {
  return "(" + state + "," + side_str(left) + "|" + head + "|" + side_str(right) + ")";
}

void canonicalize(TapeConfig& c) {
  std::size_t drop = 0;
  while (drop < c.left.size() && c.left[drop] == kBlank) ++drop;
  if (drop) c.left.erase(c.left.begin(), c.left.begin() + drop);
  while (!c.right.empty() && c.right.back() == kBlank) c.right.pop_back();
}

TapeConfig initial_config(const Rtm& m) { return {m.initial, {}, kBlank, {}}; }

bool is_final(const Rtm& m, const TapeConfig& c) { return m.finals.count(c.state) != 0; }

std::vector<std::pair<ActionLabel, TapeConfig>> step(const Rtm& m, const TapeConfig& c) {
  std::vector<std::pair<ActionLabel, TapeConfig>> out;
  for (const auto& t : m.transitions) {
    if (t.src != c.state || t.read != c.head) continue;
    TapeConfig n;
    n.state = t.dst;
    if (t.move_right) {
      n.left = c.left;
      n.left.push_back(t.write);
      if (c.right.empty()) {
        n.head = kBlank;
      } else {
        n.head = c.right.front();
        n.right.assign(c.right.begin() + 1, c.right.end());
      }
    } else {
      n.right = c.right;
      n.right.insert(n.right.begin(), t.write);
      if (c.left.empty()) {
        n.head = kBlank;
      } else {
        n.head = c.left.back();
        n.left.assign(c.left.begin(), c.left.end() - 1);
      }
    }
    canonicalize(n);
    out.push_back({t.act, std::move(n)});
  }
  return out;
}

std::vector<std::string> validate(const Rtm& m) {
  std::vector<std::string> out;
  if (m.states.empty()) out.push_back("machine has no states");
  std::set<std::string> seen;
  for (const auto& s : m.states) {
    if (!valid_data_symbol(s)) out.push_back("bad state name: " + s);
    if (!seen.insert(s).second) out.push_back("duplicate state: " + s);
  }
  std::set<Symbol> dseen;
  for (const auto& d : m.data) {
    if (!valid_data_symbol(d)) out.push_back("bad data symbol: " + d);
    if (d == kBlank) out.push_back("blank must not be declared as data");
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
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    std::string where = "transition " + std::to_string(i);
    if (!m.has_state(t.src)) out.push_back(where + ": source undeclared: " + t.src);
    if (!m.has_state(t.dst)) out.push_back(where + ": target undeclared: " + t.dst);
    if (!t.act.tau &&
        std::find(m.actions.begin(), m.actions.end(), t.act.token) == m.actions.end())
      out.push_back(where + ": action undeclared: " + t.act.token);
    if (!m.has_data(t.read)) out.push_back(where + ": read symbol not in alphabet: " + t.read);
    if (!m.has_data(t.write))
      out.push_back(where + ": write symbol not in alphabet: " + t.write);
  }
  return out;
}

}  // namespace qaw
