#include "qaw/lts.hpp"

#include <queue>
#include <sstream>

namespace qaw {

std::vector<std::vector<std::size_t>> FiniteLts::out_index() const {
  std::vector<std::vector<std::size_t>> out(states.size());
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].src].push_back(e);
  return out;
}

FiniteLts explore_qa(const Qa& m, const ExplorationBound& b) {
  return explore(QaGen{m}, b);
}
FiniteLts explore_qa2(const Qa2& m, const ExplorationBound& b) {
  return explore(Qa2Gen{m}, b);
}
FiniteLts explore_rtm(const Rtm& m, const ExplorationBound& b) {
  return explore(RtmGen{m}, b);
}

bool accepts(const FiniteLts& lts, const std::vector<std::string>& word) {
  auto out = lts.out_index();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::queue<std::pair<std::size_t, std::size_t>> work;
  work.push({lts.root, 0});
  seen.insert({lts.root, 0});
  while (!work.empty()) {
    auto [s, pos] = work.front();
    work.pop();
    if (pos == word.size() && lts.states[s].final) return true;
    for (std::size_t e : out[s]) {
      const auto& edge = lts.edges[e];
      std::size_t npos;
      if (edge.act.tau) npos = pos;
      else if (pos < word.size() && edge.act.token == word[pos]) npos = pos + 1;
      else continue;
      if (seen.insert({edge.dst, npos}).second) work.push({edge.dst, npos});
    }
  }
  return false;
}

AcceptVerdict accepts(const Qa& m, const std::vector<std::string>& word,
                      const ExplorationBound& b) {
  for (const auto& w : word)
    if (std::find(m.actions.begin(), m.actions.end(), w) == m.actions.end())
      throw ValidationError("word uses unknown action '" + w + "'");
  if (static_cast<int>(word.size()) > b.max_depth) return {};

  struct Node {
    QaConfig cfg;
    std::size_t pos;
    std::size_t parent;  // index into nodes; self for the root
    ActionLabel via;
  };
  std::vector<Node> nodes;
  std::set<std::pair<std::string, std::size_t>> seen;
  std::queue<std::size_t> work;

  auto push = [&](QaConfig c, std::size_t pos, std::size_t parent,
                  const ActionLabel& via) {
    if (c.queue.size() > b.max_weight) return;
    if (!seen.insert({c.str(), pos}).second) return;
    if (nodes.size() >= b.max_states) return;
    nodes.push_back({std::move(c), pos, parent, via});
    work.push(nodes.size() - 1);
  };
  push(initial_config(m), 0, 0, ActionLabel::silent());

  while (!work.empty()) {
    std::size_t id = work.front();
    work.pop();
    if (nodes[id].pos == word.size() && is_final(m, nodes[id].cfg)) {
      std::vector<std::string> path;
      for (std::size_t n = id; n != nodes[n].parent; n = nodes[n].parent) {
        path.push_back(nodes[n].cfg.str());
        path.push_back(nodes[n].via.str());
      }
      path.push_back(nodes[0].cfg.str());
      std::reverse(path.begin(), path.end());
      return {true, std::move(path)};
    }
    for (auto& [a, next] : step(m, nodes[id].cfg)) {
      std::size_t pos = nodes[id].pos;
      if (a.tau)
        push(std::move(next), pos, id, a);
      else if (pos < word.size() && a.token == word[pos])
        push(std::move(next), pos + 1, id, a);
    }
  }
  return {};
}

std::set<std::vector<std::string>> completed_traces(const FiniteLts& lts,
                                                    std::size_t max_len) {
  auto out = lts.out_index();
  std::set<std::vector<std::string>> result;
  std::set<std::pair<std::size_t, std::vector<std::string>>> seen;
  std::queue<std::pair<std::size_t, std::vector<std::string>>> work;
  work.push({lts.root, {}});
  seen.insert({lts.root, {}});
  while (!work.empty()) {
    auto [s, trace] = work.front();
    work.pop();
    if (lts.states[s].final) result.insert(trace);
    for (std::size_t e : out[s]) {
      const auto& edge = lts.edges[e];
      auto next = trace;
      if (!edge.act.tau) {
        if (trace.size() == max_len) continue;
        next.push_back(edge.act.token);
      }
      if (seen.insert({edge.dst, next}).second) work.push({edge.dst, std::move(next)});
    }
  }
  return result;
}

std::optional<std::string> determinism_violation(const FiniteLts& lts) {
  auto out = lts.out_index();
  for (std::size_t s = 0; s < lts.states.size(); ++s) {
    std::map<std::string, std::size_t> per_label;
    bool has_tau = false, has_visible = false;
    for (std::size_t e : out[s]) {
      const auto& edge = lts.edges[e];
      (edge.act.tau ? has_tau : has_visible) = true;
      if (++per_label[edge.act.str()] > 1)
        return lts.states[s].desc + " has two '" + edge.act.str() + "' successors";
    }
    if (has_tau && has_visible)
      return lts.states[s].desc + " mixes silent and visible successors";
  }
  return std::nullopt;
}

namespace {
std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace

std::string to_dot(const FiniteLts& lts) {
  std::ostringstream os;
  os << "digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  init [shape=point];\n";
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    const auto& st = lts.states[i];
    os << "  n" << i << " [label=\"" << dot_escape(st.desc) << '"';
    if (st.final) os << ", shape=doublecircle";
    if (st.frontier) os << ", style=dashed";
    os << "];\n";
  }
  os << "  init -> n" << lts.root << ";\n";
  auto order = lts.edges;
  std::stable_sort(order.begin(), order.end(), [](const LtsEdge& a, const LtsEdge& b) {
    return std::tuple(a.src, a.act.str(), a.dst) < std::tuple(b.src, b.act.str(), b.dst);
  });
  for (const auto& e : order)
    os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << dot_escape(e.act.str())
       << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string write_lts(const FiniteLts& lts) {
  std::ostringstream os;
  os << "lts\n";
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    const auto& st = lts.states[i];
    os << "state: " << i << ' ' << st.desc;
    if (st.final) os << " final";
    if (st.frontier) os << " frontier";
    os << '\n';
  }
  os << "root: " << lts.root << '\n';
  auto order = lts.edges;
  std::stable_sort(order.begin(), order.end(), [](const LtsEdge& a, const LtsEdge& b) {
    return std::tuple(a.src, a.act.str(), a.dst) < std::tuple(b.src, b.act.str(), b.dst);
  });
  for (const auto& e : order) {
    os << "edge: " << e.src << " \"" << e.act.str() << "\" " << e.dst;
    if (!e.tag.empty()) os << ' ' << e.tag;
    os << '\n';
  }
  return os.str();
}

}  // namespace qaw
