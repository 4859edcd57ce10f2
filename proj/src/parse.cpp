#include "qaw/parse.hpp"

#include <fstream>
#include <sstream>

namespace qaw {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
}

namespace {

struct Line {
  int no;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{no, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

// Shared field-section parsing for all three machine formats.
struct Sections {
  std::vector<Symbol> data;
  std::vector<std::string> actions;
  std::vector<std::string> states;
  std::string initial;
  std::set<std::string> finals;
  std::vector<Line> trans;
  bool have_initial = false;
};

Sections split_sections(const std::vector<Line>& lines, const std::string& header) {
  if (lines.empty()) throw ParseError("empty input", 1);
  if (lines[0].tokens.size() != 1 || lines[0].tokens[0] != header)
    throw ParseError("expected header '" + header + "'", lines[0].no);
  Sections s;
  std::set<std::string> seen_keys;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& key = l.tokens[0];
    std::vector<std::string> rest(l.tokens.begin() + 1, l.tokens.end());
    if (key == "trans:") {
      s.trans.push_back({l.no, rest});
      continue;
    }
    if (key != "data:" && key != "actions:" && key != "states:" && key != "initial:" &&
        key != "finals:")
      throw ParseError("unknown directive: " + key, l.no);
    if (!seen_keys.insert(key).second) throw ParseError("repeated directive: " + key, l.no);
    if (key == "data:") s.data = rest;
    else if (key == "actions:") s.actions = rest;
    else if (key == "states:") s.states = rest;
    else if (key == "finals:") s.finals = {rest.begin(), rest.end()};
    else {
      if (rest.size() != 1) throw ParseError("initial: wants exactly one state", l.no);
      s.initial = rest[0];
      s.have_initial = true;
    }
  }
  if (s.states.empty()) throw ParseError("missing states:", lines[0].no);
  if (!s.have_initial) throw ParseError("missing initial:", lines[0].no);
  return s;
}

ActionLabel parse_action(const std::string& tok, int line) {
  if (tok == "tau") return ActionLabel::silent();
  if (!valid_action_token(tok)) throw ParseError("bad action token: " + tok, line);
  return ActionLabel::visible(tok);
}

Trigger parse_trigger(const std::string& tok, int line) {
  if (tok == "any") return Trigger::any();
  if (tok == "eps") return Trigger::empty();
  if (!valid_data_symbol(tok)) throw ParseError("bad trigger symbol: " + tok, line);
  return Trigger::on(tok);
}

std::vector<Symbol> parse_block(const std::string& tok, int line) {
  if (tok == "-") return {};
  std::vector<Symbol> out;
  std::size_t pos = 0;
  while (pos <= tok.size()) {
    auto dot = tok.find('.', pos);
    std::string part = tok.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (!valid_data_symbol(part)) throw ParseError("bad enqueue symbol: " + part, line);
    out.push_back(part);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return out;
}

std::pair<std::string, std::string> split_comma(const std::string& tok, int line) {
  auto comma = tok.find(',');
  if (comma == std::string::npos || tok.find(',', comma + 1) != std::string::npos)
    throw ParseError("expected exactly one comma in: " + tok, line);
  return {tok.substr(0, comma), tok.substr(comma + 1)};
}

template <class M>
void finish(M& m, const Sections& s) {
  m.data = s.data;
  m.actions = s.actions;
  m.states = s.states;
  m.initial = s.initial;
  m.finals = s.finals;
  auto problems = validate(m);
  if (!problems.empty()) {
    std::string msg = "invalid machine:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ValidationError(msg);
  }
}

}  // namespace

Qa parse_qa(const std::string& text) {
  auto lines = tokenize(text);
  Sections s = split_sections(lines, "qa");
  Qa m;
  for (const auto& t : s.trans) {
    if (t.tokens.size() != 5)
      throw ParseError("trans: wants <src> <action> <trigger> <enqueue> <dst>", t.no);
    QaTransition tr;
    tr.src = t.tokens[0];
    tr.act = parse_action(t.tokens[1], t.no);
    tr.trig = parse_trigger(t.tokens[2], t.no);
    tr.enq = parse_block(t.tokens[3], t.no);
    tr.dst = t.tokens[4];
    m.transitions.push_back(std::move(tr));
  }
  finish(m, s);
  return m;
}

Qa2 parse_qa2(const std::string& text) {
  auto lines = tokenize(text);
  Sections s = split_sections(lines, "qa2");
  Qa2 m;
  for (const auto& t : s.trans) {
    if (t.tokens.size() != 5)
      throw ParseError("trans: wants <src> <action> <trig1,trig2> <enq1,enq2> <dst>", t.no);
    Qa2Transition tr;
    tr.src = t.tokens[0];
    tr.act = parse_action(t.tokens[1], t.no);
    auto [t1, t2] = split_comma(t.tokens[2], t.no);
    tr.trig1 = parse_trigger(t1, t.no);
    tr.trig2 = parse_trigger(t2, t.no);
    auto [e1, e2] = split_comma(t.tokens[3], t.no);
    tr.enq1 = parse_block(e1, t.no);
    tr.enq2 = parse_block(e2, t.no);
    tr.dst = t.tokens[4];
    m.transitions.push_back(std::move(tr));
  }
  finish(m, s);
  return m;
}

Rtm parse_rtm(const std::string& text) {
  auto lines = tokenize(text);
  Sections s = split_sections(lines, "rtm");
  Rtm m;
  for (const auto& t : s.trans) {
    if (t.tokens.size() != 6)
      throw ParseError("trans: wants <src> <action> <read> <write> <L|R> <dst>", t.no);
    RtmTransition tr;
    tr.src = t.tokens[0];
    tr.act = parse_action(t.tokens[1], t.no);
    for (int i : {2, 3})
      if (!valid_data_symbol(t.tokens[i]))
        throw ParseError("bad tape symbol: " + t.tokens[i], t.no);
    tr.read = t.tokens[2];
    tr.write = t.tokens[3];
    if (t.tokens[4] == "R") tr.move_right = true;
    else if (t.tokens[4] == "L") tr.move_right = false;
    else throw ParseError("move must be L or R", t.no);
    tr.dst = t.tokens[5];
    m.transitions.push_back(std::move(tr));
  }
  finish(m, s);
  return m;
}

namespace {

template <class Seq>
void emit_list(std::ostringstream& os, const char* key, const Seq& xs) {
  os << key;
  for (const auto& x : xs) os << ' ' << x;
  os << '\n';
}

std::string block_str(const std::vector<Symbol>& blk) {
  if (blk.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < blk.size(); ++i) {
    if (i) out += '.';
    out += blk[i];
  }
  return out;
}

template <class M>
void emit_header(std::ostringstream& os, const char* kind, const M& m) {
  os << kind << '\n';
  emit_list(os, "data:", m.data);
  emit_list(os, "actions:", m.actions);
  emit_list(os, "states:", m.states);
  os << "initial: " << m.initial << '\n';
  emit_list(os, "finals:", m.finals);
}

}  // namespace

std::string write_qa(const Qa& m) {
  std::ostringstream os;
  emit_header(os, "qa", m);
  for (const auto& t : m.transitions)
    os << "trans: " << t.src << ' ' << t.act.str() << ' ' << t.trig.str() << ' '
       << block_str(t.enq) << ' ' << t.dst << '\n';
  return os.str();
}

std::string write_qa2(const Qa2& m) {
  std::ostringstream os;
  emit_header(os, "qa2", m);
  for (const auto& t : m.transitions)
    os << "trans: " << t.src << ' ' << t.act.str() << ' ' << t.trig1.str() << ','
       << t.trig2.str() << ' ' << block_str(t.enq1) << ',' << block_str(t.enq2) << ' '
       << t.dst << '\n';
  return os.str();
}

std::string write_rtm(const Rtm& m) {
  std::ostringstream os;
  emit_header(os, "rtm", m);
  for (const auto& t : m.transitions)
    os << "trans: " << t.src << ' ' << t.act.str() << ' ' << t.read << ' ' << t.write << ' '
       << (t.move_right ? 'R' : 'L') << ' ' << t.dst << '\n';
  return os.str();
}

Qa load_qa(const std::string& path) { return parse_qa(read_file(path)); }
Qa2 load_qa2(const std::string& path) { return parse_qa2(read_file(path)); }
Rtm load_rtm(const std::string& path) { return parse_rtm(read_file(path)); }

}  // namespace qaw
