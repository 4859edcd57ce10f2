#include "qaw/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qaw/parse.hpp"

namespace qaw {

namespace {
constexpr int kUnfoldLimit = 1000;
}

// ---------------------------------------------------------------------------
// Builders

Term t_deadlock() {
  static const Term t = std::make_shared<ProcessTerm>(ProcessTerm{TermKind::Deadlock, {}, {}, {}, "", {}, ""});
  return t;
}
Term t_accept() {
  static const Term t = std::make_shared<ProcessTerm>(ProcessTerm{TermKind::Accept, {}, {}, {}, "", {}, ""});
  return t;
}
Term t_prefix(ActionLabel act, Term sub) {
  return std::make_shared<ProcessTerm>(ProcessTerm{TermKind::Prefix, std::move(act), std::move(sub), {}, "", {}, ""});
}
Term t_choice(Term l, Term r) {
  return std::make_shared<ProcessTerm>(ProcessTerm{TermKind::Choice, {}, std::move(l), std::move(r), "", {}, ""});
}
Term t_merge(Term l, Term r) {
  return std::make_shared<ProcessTerm>(ProcessTerm{TermKind::Merge, {}, std::move(l), std::move(r), "", {}, ""});
}
Term t_encap(std::string port, Term sub) {
  return std::make_shared<ProcessTerm>(ProcessTerm{TermKind::Encap, {}, std::move(sub), {}, std::move(port), {}, ""});
}
Term t_hide(std::set<std::string> ports, Term sub) {
  return std::make_shared<ProcessTerm>(ProcessTerm{TermKind::Hide, {}, std::move(sub), {}, "", std::move(ports), ""});
}
Term t_var(std::string name) {
  return std::make_shared<ProcessTerm>(ProcessTerm{TermKind::Var, {}, {}, {}, "", {}, std::move(name)});
}

std::string term_str(const Term& t) {
  switch (t->kind) {
    case TermKind::Deadlock: return "0";
    case TermKind::Accept: return "1";
    case TermKind::Prefix: return t->act.str() + " . " + term_str(t->left);
    case TermKind::Choice: return "(" + term_str(t->left) + " + " + term_str(t->right) + ")";
    case TermKind::Merge: return "(" + term_str(t->left) + " || " + term_str(t->right) + ")";
    case TermKind::Encap: return "encap(" + t->port + ", " + term_str(t->left) + ")";
    case TermKind::Hide: {
      std::string s = "hide({";
      bool first = true;
      for (const auto& p : t->ports) {
        if (!first) s += ", ";
        s += p;
        first = false;
      }
      return s + "}, " + term_str(t->left) + ")";
    }
    case TermKind::Var: return t->var;
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Actions

CommAction classify_comm(const ActionLabel& a) {
  if (a.tau) return {CommKind::Tau, "", "", ""};
  const std::string& t = a.token;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] == '!') return {CommKind::Send, t.substr(0, i), t.substr(i + 1), ""};
    if (t[i] == '?') return {CommKind::Receive, t.substr(0, i), t.substr(i + 1), ""};
    if (t[i] == '(' && t.back() == ')' && i + 2 < t.size())
      return {CommKind::Comm, t.substr(0, i), t.substr(i + 1, t.size() - i - 2), ""};
  }
  return {CommKind::Plain, "", "", t};
}

std::string CommAction::str() const {
  switch (kind) {
    case CommKind::Send: return port + "!" + payload;
    case CommKind::Receive: return port + "?" + payload;
    case CommKind::Comm: return port + "(" + payload + ")";
    case CommKind::Plain: return token;
    case CommKind::Tau: return "tau";
  }
  return "?";
}

ActionLabel CommAction::label() const {
  return kind == CommKind::Tau ? ActionLabel::silent() : ActionLabel::visible(str());
}

// ---------------------------------------------------------------------------
// Semantics

namespace {

const Term& resolve(const std::string& name, const RecursiveSpec& spec) {
  auto it = spec.equations.find(name);
  if (it == spec.equations.end())
    throw ValidationError("unbound variable '" + name + "'");
  return it->second;
}

bool terminates_impl(const Term& t, const RecursiveSpec& spec, int depth) {
  switch (t->kind) {
    case TermKind::Deadlock: return false;
    case TermKind::Accept: return true;
    case TermKind::Prefix: return false;
    case TermKind::Choice:
      return terminates_impl(t->left, spec, depth) ||
             terminates_impl(t->right, spec, depth);
    case TermKind::Merge:
      return terminates_impl(t->left, spec, depth) &&
             terminates_impl(t->right, spec, depth);
    case TermKind::Encap:
    case TermKind::Hide:
      return terminates_impl(t->left, spec, depth);
    case TermKind::Var:
      if (depth >= kUnfoldLimit)
        throw ValidationError("unguarded recursion through variable '" + t->var + "'");
      return terminates_impl(resolve(t->var, spec), spec, depth + 1);
  }
  return false;
}

using Steps = std::vector<std::pair<CommAction, Term>>;

Steps sos_impl(const Term& t, const RecursiveSpec& spec, int depth) {
  Steps out;
  switch (t->kind) {
    case TermKind::Deadlock:
    case TermKind::Accept:
      break;
    case TermKind::Prefix:
      out.emplace_back(classify_comm(t->act), t->left);
      break;
    case TermKind::Choice: {
      out = sos_impl(t->left, spec, depth);
      Steps r = sos_impl(t->right, spec, depth);
      out.insert(out.end(), r.begin(), r.end());
      break;
    }
    case TermKind::Merge: {
      Steps l = sos_impl(t->left, spec, depth);
      Steps r = sos_impl(t->right, spec, depth);
      for (const auto& [a, nl] : l) out.emplace_back(a, t_merge(nl, t->right));
      for (const auto& [a, nr] : r) out.emplace_back(a, t_merge(t->left, nr));
      for (const auto& [a, nl] : l)
        for (const auto& [b, nr] : r) {
          bool match = a.port == b.port && a.payload == b.payload &&
                       ((a.kind == CommKind::Send && b.kind == CommKind::Receive) ||
                        (a.kind == CommKind::Receive && b.kind == CommKind::Send));
          if (match)
            out.emplace_back(CommAction{CommKind::Comm, a.port, a.payload, ""},
                             t_merge(nl, nr));
        }
      break;
    }
    case TermKind::Encap: {
      for (auto& [a, n] : sos_impl(t->left, spec, depth)) {
        if ((a.kind == CommKind::Send || a.kind == CommKind::Receive) &&
            a.port == t->port)
          continue;
        out.emplace_back(a, t_encap(t->port, n));
      }
      break;
    }
    case TermKind::Hide: {
      for (auto& [a, n] : sos_impl(t->left, spec, depth)) {
        CommAction b = a;
        if (a.kind == CommKind::Comm && t->ports.count(a.port))
          b = CommAction{CommKind::Tau, "", "", ""};
        out.emplace_back(b, t_hide(t->ports, n));
      }
      break;
    }
    case TermKind::Var:
      if (depth >= kUnfoldLimit)
        throw ValidationError("unguarded recursion through variable '" + t->var + "'");
      out = sos_impl(resolve(t->var, spec), spec, depth + 1);
      break;
  }
  return out;
}

}  // namespace

bool terminates(const Term& t, const RecursiveSpec& spec) {
  return terminates_impl(t, spec, 0);
}

std::vector<std::pair<CommAction, Term>> sos_step(const Term& t,
                                                  const RecursiveSpec& spec) {
  Steps raw = sos_impl(t, spec, 0);
  // the result is a set of transitions: drop derivations that coincide
  Steps out;
  std::set<std::pair<std::string, std::string>> seen;
  for (auto& [a, n] : raw)
    if (seen.insert({a.str(), term_str(n)}).second) out.emplace_back(a, n);
  return out;
}

namespace {

std::size_t node_count(const Term& t) {
  switch (t->kind) {
    case TermKind::Prefix:
    case TermKind::Encap:
    case TermKind::Hide:
      return 1 + node_count(t->left);
    case TermKind::Choice:
    case TermKind::Merge:
      return 1 + node_count(t->left) + node_count(t->right);
    default:
      return 1;
  }
}

struct TermGen {
  const RecursiveSpec& spec;
  Term start;
  using Config = Term;
  Config root() const { return start; }
  std::vector<Successor<Config>> step(const Config& c) const {
    std::vector<Successor<Config>> out;
    for (auto& [a, n] : sos_step(c, spec)) out.push_back({a.label(), n, ""});
    return out;
  }
  bool is_final(const Config& c) const { return terminates(c, spec); }
  std::string print(const Config& c) const { return term_str(c); }
  std::size_t weight(const Config& c) const { return node_count(c); }
};

}  // namespace

FiniteLts term_lts(const Term& t, const RecursiveSpec& spec,
                   const ExplorationBound& bound) {
  return explore(TermGen{spec, t}, bound);
}

// ---------------------------------------------------------------------------
// Queue specification

RecursiveSpec queue_spec(const std::vector<Symbol>& data) {
  if (data.empty()) throw ValidationError("the queue specification needs at least one datum");
  for (const auto& d : data)
    if (!valid_data_symbol(d))
      throw ValidationError("'" + d + "' cannot be used as a datum");

  const std::string ports[3] = {"i", "o", "l"};
  const std::set<std::string> all_ports = {"i", "o", "l"};
  RecursiveSpec spec;
  for (const auto& x : ports)
    for (const auto& y : ports) {
      if (x == y) continue;
      std::string z;
      for (const auto& p : ports)
        if (p != x && p != y) z = p;

      // sum over the data, one receive branch per datum, folded to the right
      Term sum;
      for (auto it = data.rbegin(); it != data.rend(); ++it) {
        Term cell = t_choice(t_accept(),
                             t_prefix(ActionLabel::visible(y + "!" + *it),
                                      t_var("Q_" + z + y)));
        Term inner = t_merge(t_var("Q_" + x + z), cell);
        Term branch = t_prefix(ActionLabel::visible(x + "?" + *it),
                               t_hide(all_ports, t_encap(z, inner)));
        sum = sum ? t_choice(branch, sum) : branch;
      }

      Term probe = t_prefix(ActionLabel::visible(y + "!eps"), t_var("Q_" + x + y));
      spec.equations["Q_" + x + y] = t_choice(t_accept(), t_choice(probe, sum));
    }
  return spec;
}

// ---------------------------------------------------------------------------
// Finite control

namespace {

bool primitive_shape(const QaTransition& t) {
  switch (t.trig.kind) {
    case TriggerKind::Any: return t.enq.size() == 1;
    case TriggerKind::Head: return t.enq.empty();
    case TriggerKind::Empty: return t.enq.empty();
  }
  return false;
}

struct LtsSink {
  FiniteLts lts;
  std::map<std::string, std::size_t> ids;

  std::size_t state(const std::string& desc, bool final) {
    auto it = ids.find(desc);
    if (it != ids.end()) return it->second;
    std::size_t id = lts.states.size();
    lts.states.push_back({desc, final, false, 0});
    ids.emplace(desc, id);
    return id;
  }
  void edge(std::size_t src, const ActionLabel& a, std::size_t dst,
            const std::string& tag) {
    lts.edges.push_back({src, a, dst, tag});
  }
};

}  // namespace

FiniteLts control_of(const Qa& m) {
  for (const auto& msg : validate(m)) throw ValidationError(msg);
  if (m.has_data(kMark))
    throw ValidationError("the control construction reserves '" + kMark +
                          "' as its rotation marker");
  for (const auto& tok : m.actions) {
    CommAction c = classify_comm(ActionLabel::visible(tok));
    if ((c.kind == CommKind::Send && c.port == "i") ||
        (c.kind == CommKind::Receive && c.port == "o"))
      throw ValidationError("action '" + tok +
                            "' collides with the control's own port steps");
  }
  for (std::size_t k = 0; k < m.transitions.size(); ++k)
    if (!primitive_shape(m.transitions[k]))
      throw ValidationError(
          "transition #" + std::to_string(k) +
          " is not primitive (enqueue one on any, dequeue the head, or fire "
          "on empty); normalize the machine first");

  LtsSink s;
  // head caches first, in a stable order
  std::vector<std::string> heads = {"eps"};
  heads.insert(heads.end(), m.data.begin(), m.data.end());
  for (const auto& st : m.states)
    for (const auto& h : heads) s.state(st + "@" + h, m.finals.count(st) > 0);
  s.lts.root = s.ids.at(m.initial + "@eps");

  auto send = [](const Symbol& d) { return ActionLabel::visible("i!" + d); };
  auto recv = [](const Symbol& d) { return ActionLabel::visible("o?" + d); };

  for (std::size_t k = 0; k < m.transitions.size(); ++k) {
    const QaTransition& tr = m.transitions[k];
    const std::string kk = "#" + std::to_string(k);
    switch (tr.trig.kind) {
      case TriggerKind::Empty:
        // fire on the empty queue; the cache stays empty
        s.edge(s.ids.at(tr.src + "@eps"), tr.act, s.ids.at(tr.dst + "@eps"), "");
        break;
      case TriggerKind::Any: {
        // enqueue one datum behind the current contents; the cache is
        // unchanged unless the queue was empty, in which case the new datum
        // is the head. The empty entry shares the matching helper.
        const Symbol& d = tr.enq[0];
        for (const auto& e : m.data) {
          std::size_t h = s.state(tr.dst + "@" + e + kk + ".enq", false);
          s.edge(s.ids.at(tr.src + "@" + e), tr.act, h, "");
          s.edge(h, send(d), s.ids.at(tr.dst + "@" + e), "port");
        }
        s.edge(s.ids.at(tr.src + "@eps"), tr.act,
               s.ids.at(tr.dst + "@" + d + kk + ".enq"), "");
        break;
      }
      case TriggerKind::Head: {
        // dequeue the cached head, then learn the new head: either the
        // queue reports empty, or it hands out the next datum, which is
        // pushed back behind a marker and the rest is rotated through.
        const Symbol& d = tr.trig.head;
        std::size_t g1 = s.state(tr.src + "@" + d + kk + ".g1", false);
        std::size_t g2 = s.state(tr.src + "@" + d + kk + ".g2", false);
        s.edge(s.ids.at(tr.src + "@" + d), tr.act, g1, "");
        s.edge(g1, recv(d), g2, "port");
        s.edge(g2, recv("eps"), s.ids.at(tr.dst + "@eps"), "port");
        for (const auto& e : m.data) {
          std::size_t r3 = s.state(tr.dst + "@" + e + kk + ".r3", false);
          std::size_t r2 = s.state(tr.dst + "@" + e + kk + ".r2", false);
          std::size_t r1 = s.state(tr.dst + "@" + e + kk + ".r1", false);
          s.edge(g2, recv(e), r3, "port");
          s.edge(r3, send(kMark), r2, "port");
          s.edge(r2, send(e), r1, "port");
          s.edge(r1, recv(kMark), s.ids.at(tr.dst + "@" + e), "port");
          for (const auto& f : m.data) {
            std::size_t rf = s.state(tr.dst + "@" + e + kk + ".rot." + f, false);
            s.edge(r1, recv(f), rf, "port");
            s.edge(rf, send(f), r1, "port");
          }
        }
        break;
      }
    }
  }
  return s.lts;
}

// ---------------------------------------------------------------------------
// Composition

namespace {

enum class PortMove : std::uint8_t { PlainMove, Enqueue, Dequeue, Probe };

struct EdgeRole {
  PortMove move = PortMove::PlainMove;
  Symbol payload;
};

struct ComposeGen {
  const FiniteLts& control;
  std::vector<std::vector<std::size_t>> out;
  std::vector<EdgeRole> roles;

  using Config = std::pair<std::size_t, QueueWord>;
  Config root() const { return {control.root, {}}; }
  std::vector<Successor<Config>> step(const Config& c) const {
    std::vector<Successor<Config>> res;
    for (std::size_t ei : out[c.first]) {
      const LtsEdge& e = control.edges[ei];
      const EdgeRole& r = roles[ei];
      switch (r.move) {
        case PortMove::PlainMove:
          res.push_back({e.act, {e.dst, c.second}, ""});
          break;
        case PortMove::Enqueue: {
          QueueWord w = c.second;
          w.insert(w.begin(), r.payload);
          res.push_back({ActionLabel::silent(), {e.dst, std::move(w)}, "comm"});
          break;
        }
        case PortMove::Dequeue:
          if (!c.second.empty() && c.second.back() == r.payload) {
            QueueWord w = c.second;
            w.pop_back();
            res.push_back({ActionLabel::silent(), {e.dst, std::move(w)}, "comm"});
          }
          break;
        case PortMove::Probe:
          if (c.second.empty())
            res.push_back({ActionLabel::silent(), {e.dst, c.second}, "comm"});
          break;
      }
    }
    return res;
  }
  bool is_final(const Config& c) const { return control.states[c.first].final; }
  std::string print(const Config& c) const {
    return "(" + control.states[c.first].desc + "," + word_str(c.second) + ")";
  }
  std::size_t weight(const Config& c) const { return c.second.size(); }
};

}  // namespace

FiniteLts compose_with_queue(const FiniteLts& control,
                             const std::vector<Symbol>& data,
                             const ExplorationBound& bound) {
  std::set<Symbol> carried(data.begin(), data.end());
  carried.insert(kMark);

  ComposeGen gen{control, control.out_index(), {}};
  gen.roles.resize(control.edges.size());
  for (std::size_t i = 0; i < control.edges.size(); ++i) {
    const LtsEdge& e = control.edges[i];
    if (e.act.tau) continue;  // the machine's own silent step; plain move
    CommAction c = classify_comm(e.act);
    if (c.kind == CommKind::Send && c.port == "i") {
      if (!carried.count(c.payload))
        throw ValidationError("alphabet violation: '" + e.act.str() +
                              "' sends a symbol the queue does not carry");
      gen.roles[i] = {PortMove::Enqueue, c.payload};
    } else if (c.kind == CommKind::Receive && c.port == "o") {
      if (c.payload == "eps") {
        gen.roles[i] = {PortMove::Probe, ""};
      } else if (carried.count(c.payload)) {
        gen.roles[i] = {PortMove::Dequeue, c.payload};
      } else {
        throw ValidationError("alphabet violation: '" + e.act.str() +
                              "' expects a symbol the queue does not carry");
      }
    }
    // anything else — including tokens that merely look like the queue's own
    // side of the ports — interleaves as a plain move
  }
  return explore(gen, bound);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;
  int line;

  static bool word_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '$' || c == '!' || c == '?' ||
           c >= 0x80;
  }
  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_space();
    return pos >= text.size();
  }
  // peeks one structural character (word start reported as 'w')
  char peek() {
    skip_space();
    if (pos >= text.size()) return '\0';
    char c = text[pos];
    return word_char(static_cast<unsigned char>(c)) ? 'w' : c;
  }
  void expect(char c, const std::string& what) {
    skip_space();
    if (pos >= text.size() || text[pos] != c)
      throw ParseError("expected '" + std::string(1, c) + "' " + what, line);
    ++pos;
  }
  bool try_consume(const std::string& s) {
    skip_space();
    if (text.compare(pos, s.size(), s) != 0) return false;
    pos += s.size();
    return true;
  }
  std::string word() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && word_char(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) {
      std::string got = pos < text.size() ? std::string(1, text[pos]) : "end of input";
      throw ParseError("expected a name or action, got '" + got + "'", line);
    }
    return text.substr(start, pos - start);
  }
};

Term parse_expr(Lexer& lx);

Term parse_primary(Lexer& lx) {
  char c = lx.peek();
  if (c == '(') {
    lx.expect('(', "to open a subterm");
    Term t = parse_expr(lx);
    lx.expect(')', "to close the subterm");
    return t;
  }
  if (c != 'w')
    throw ParseError("expected a term, got '" + std::string(1, c) + "'", lx.line);

  std::string w = lx.word();
  if (w == "encap") {
    lx.expect('(', "after encap");
    std::string port = lx.word();
    lx.expect(',', "between the port and the term");
    Term t = parse_expr(lx);
    lx.expect(')', "to close encap");
    return t_encap(std::move(port), std::move(t));
  }
  if (w == "hide") {
    lx.expect('(', "after hide");
    lx.expect('{', "to open the port set");
    std::set<std::string> ports;
    if (lx.peek() != '}') {
      ports.insert(lx.word());
      while (lx.try_consume(",")) ports.insert(lx.word());
    }
    lx.expect('}', "to close the port set");
    lx.expect(',', "between the port set and the term");
    Term t = parse_expr(lx);
    lx.expect(')', "to close hide");
    return t_hide(std::move(ports), std::move(t));
  }
  if (w == "0") return t_deadlock();
  if (w == "1") return t_accept();

  // a communication action spells its payload in parentheses
  if (lx.peek() == '(') {
    lx.expect('(', "");
    std::string payload = lx.word();
    lx.expect(')', "to close the communication payload");
    lx.expect('.', "after the action");
    return t_prefix(ActionLabel::visible(w + "(" + payload + ")"),
                    parse_primary(lx));
  }
  if (lx.try_consume(".")) {
    ActionLabel act =
        w == "tau" ? ActionLabel::silent() : ActionLabel::visible(w);
    return t_prefix(act, parse_primary(lx));
  }
  return t_var(std::move(w));
}

Term parse_par(Lexer& lx) {
  Term t = parse_primary(lx);
  while (lx.try_consume("||")) t = t_merge(t, parse_primary(lx));
  return t;
}

Term parse_expr(Lexer& lx) {
  Term t = parse_par(lx);
  while (lx.try_consume("+")) t = t_choice(t, parse_par(lx));
  return t;
}

Term parse_term_line(const std::string& text, int line) {
  Lexer lx{text, 0, line};
  Term t = parse_expr(lx);
  if (!lx.eof())
    throw ParseError("unexpected trailing input '" + text.substr(lx.pos) + "'",
                     line);
  return t;
}

}  // namespace

Term parse_term(const std::string& text) { return parse_term_line(text, 1); }

RecursiveSpec parse_spec(const std::string& text) {
  RecursiveSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = raw.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'name = term'", line);
    std::string name = raw.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty()) throw ParseError("missing equation name", line);
    if (spec.equations.count(name))
      throw ParseError("duplicate equation for '" + name + "'", line);
    spec.equations[name] = parse_term_line(raw.substr(eq + 1), line);
  }
  return spec;
}

std::string write_spec(const RecursiveSpec& spec) {
  std::string out;
  for (const auto& [name, term] : spec.equations)
    out += name + " = " + term_str(term) + "\n";
  return out;
}

}  // namespace qaw
