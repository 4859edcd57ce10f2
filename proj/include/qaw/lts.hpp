#pragma once
// Finite transition graphs carved out of (possibly infinite) machine
// behaviours, plus the bounded exploration that produces them.
//
// Exploration depth counts visible transitions only: silent steps stay on
// the same level, so a silently-dilated behaviour truncates at the same cut
// as the original. In particular a state sitting exactly on the depth bound
// is still expanded when all of its successors are silent — they live on the
// same level and are therefore within budget.
//
// Expansion is all-or-none: a state whose expansion would overrun a bound
// (a visible successor beyond the depth bound, a successor above the weight
// cap, or more fresh states than the state budget allows) is deferred
// entirely and flagged `frontier`. Frontier states have no outgoing edges.

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qaw/core.hpp"
#include "qaw/rtm.hpp"

namespace qaw {

struct ExplorationBound {
  int max_depth = 8;            // visible transitions from the root
  std::size_t max_states = 4096;
  std::size_t max_weight = 64;  // per-configuration size cap (queue/tape length)
};

struct LtsState {
  std::string desc;
  bool final = false;
  bool frontier = false;
  int level = 0;  // visible distance from the root
};

struct LtsEdge {
  std::size_t src;
  ActionLabel act;
  std::size_t dst;
  std::string tag;  // optional generator-supplied marker
};

struct FiniteLts {
  std::vector<LtsState> states;
  std::vector<LtsEdge> edges;
  std::size_t root = 0;

  bool has_frontier() const {
    return std::any_of(states.begin(), states.end(),
                       [](const LtsState& s) { return s.frontier; });
  }
  std::vector<std::vector<std::size_t>> out_index() const;  // edge ids per source
};

// One successor offered by a generator.
template <class C>
struct Successor {
  ActionLabel act;
  C cfg;
  std::string tag;
};

// Generators drive exploration. Required interface:
//   using Config = ...;
//   Config root() const;
//   std::vector<Successor<Config>> step(const Config&) const;
//   bool is_final(const Config&) const;
//   std::string print(const Config&) const;
//   std::size_t weight(const Config&) const;
template <class Gen>
FiniteLts explore(const Gen& g, const ExplorationBound& bound) {
  FiniteLts lts;
  std::vector<typename Gen::Config> cfgs;
  std::map<std::string, std::size_t> index;
  std::vector<int> processed;  // level at which a state was last expanded
  std::deque<std::size_t> work;

  auto add_state = [&](const typename Gen::Config& c, const std::string& desc,
                       int level) -> std::size_t {
    std::size_t id = lts.states.size();
    lts.states.push_back({desc, g.is_final(c), false, level});
    cfgs.push_back(c);
    processed.push_back(std::numeric_limits<int>::max());
    index.emplace(desc, id);
    return id;
  };

  std::set<std::tuple<std::size_t, bool, std::string, std::size_t, std::string>> seen_edges;
  auto add_edge = [&](std::size_t src, const ActionLabel& a, std::size_t dst,
                      const std::string& tag) {
    if (seen_edges.insert({src, a.tau, a.token, dst, tag}).second)
      lts.edges.push_back({src, a, dst, tag});
  };

  {
    auto r = g.root();
    add_state(r, g.print(r), 0);
  }
  work.push_back(0);

  while (!work.empty()) {
    std::size_t id = work.front();
    work.pop_front();
    int level = lts.states[id].level;
    if (processed[id] <= level) continue;  // already expanded at this level or better

    auto succs = g.step(cfgs[id]);
    std::stable_sort(succs.begin(), succs.end(), [&](const auto& x, const auto& y) {
      auto kx = std::tuple(x.act.tau ? 0 : 1, x.act.token, g.print(x.cfg));
      auto ky = std::tuple(y.act.tau ? 0 : 1, y.act.token, g.print(y.cfg));
      return kx < ky;
    });

    // All-or-none: defer the whole state if any successor would overrun a
    // bound.  A silent successor of a depth-bound state is within budget, so
    // only pending visible successors force a depth deferral.
    bool defer = false;
    if (level >= bound.max_depth) {
      for (const auto& s : succs)
        if (!s.act.tau) { defer = true; break; }
    }
    if (!defer) {
      for (const auto& s : succs)
        if (g.weight(s.cfg) > bound.max_weight) { defer = true; break; }
    }
    if (!defer) {
      std::set<std::string> fresh;
      for (const auto& s : succs) {
        std::string desc = g.print(s.cfg);
        if (!index.count(desc)) fresh.insert(std::move(desc));
      }
      if (lts.states.size() + fresh.size() > bound.max_states) {
        if (id == lts.root)
          throw ValidationError("state budget too small to expand the root");
        defer = true;
      }
    }
    if (defer) {
      lts.states[id].frontier = true;
      processed[id] = level;
      continue;
    }

    lts.states[id].frontier = false;
    for (const auto& s : succs) {
      std::string desc = g.print(s.cfg);
      int cand = level + (s.act.tau ? 0 : 1);
      auto it = index.find(desc);
      std::size_t dst;
      if (it == index.end()) {
        dst = add_state(s.cfg, desc, cand);
        if (s.act.tau) work.push_front(dst);
        else work.push_back(dst);
      } else {
        dst = it->second;
        if (cand < lts.states[dst].level) {
          lts.states[dst].level = cand;  // found a shorter visible path; revisit
          if (s.act.tau) work.push_front(dst);
          else work.push_back(dst);
        }
      }
      add_edge(id, s.act, dst, s.tag);
    }
    processed[id] = level;
  }
  return lts;
}

// Generators for the concrete machine kinds.
struct QaGen {
  const Qa& m;
  using Config = QaConfig;
  Config root() const { return initial_config(m); }
  std::vector<Successor<Config>> step(const Config& c) const {
    std::vector<Successor<Config>> out;
    for (auto& [a, n] : qaw::step(m, c)) out.push_back({a, std::move(n), ""});
    return out;
  }
  bool is_final(const Config& c) const { return qaw::is_final(m, c); }
  std::string print(const Config& c) const { return c.str(); }
  std::size_t weight(const Config& c) const { return c.queue.size(); }
};

struct Qa2Gen {
  const Qa2& m;
  using Config = Qa2Config;
  Config root() const { return initial_config(m); }
  std::vector<Successor<Config>> step(const Config& c) const {
    std::vector<Successor<Config>> out;
    for (auto& [a, n] : qaw::step(m, c)) out.push_back({a, std::move(n), ""});
    return out;
  }
  bool is_final(const Config& c) const { return qaw::is_final(m, c); }
  std::string print(const Config& c) const { return c.str(); }
  std::size_t weight(const Config& c) const { return std::max(c.q1.size(), c.q2.size()); }
};

struct RtmGen {
  const Rtm& m;
  using Config = TapeConfig;
  Config root() const { return initial_config(m); }
  std::vector<Successor<Config>> step(const Config& c) const {
    std::vector<Successor<Config>> out;
    for (auto& [a, n] : qaw::step(m, c)) out.push_back({a, std::move(n), ""});
    return out;
  }
  bool is_final(const Config& c) const { return qaw::is_final(m, c); }
  std::string print(const Config& c) const { return c.str(); }
  std::size_t weight(const Config& c) const { return c.left.size() + 1 + c.right.size(); }
};

FiniteLts explore_qa(const Qa& m, const ExplorationBound& b);
FiniteLts explore_qa2(const Qa2& m, const ExplorationBound& b);
FiniteLts explore_rtm(const Rtm& m, const ExplorationBound& b);

// Word membership on the explored graph: silent steps are free, visible
// edges must spell the word, and the run must end in a final state.
bool accepts(const FiniteLts& lts, const std::vector<std::string>& word);

// Word membership searched directly on the automaton's configuration space.
// Unlike the explored-graph variant this never defers a configuration: a run
// merely has to keep every configuration within the weight cap and use at
// most max_depth visible steps.  Accepted comes with an alternating
// configuration/label witness; anything else is "exhausted under the bound",
// which is not a proof of non-membership.
struct AcceptVerdict {
  bool accepted = false;
  std::vector<std::string> witness;
};
AcceptVerdict accepts(const Qa& m, const std::vector<std::string>& word,
                      const ExplorationBound& b);

// All visible traces of length <= max_len that can end in a final state.
std::set<std::vector<std::string>> completed_traces(const FiniteLts& lts, std::size_t max_len);

// Determinism in the behavioural sense: at most one successor per label and
// no visible move alongside a silent one. Returns a violation description,
// or nullopt when deterministic.
std::optional<std::string> determinism_violation(const FiniteLts& lts);

std::string to_dot(const FiniteLts& lts);
std::string write_lts(const FiniteLts& lts);

}  // namespace qaw
