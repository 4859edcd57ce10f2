#pragma once
// Text formats for machines.
//
//   qa                          (header: qa | qa2 | rtm)
//   data: a b
//   actions: a b
//   states: s0 s1
//   initial: s0
//   finals: s1
//   trans: s0 a any a s0        (.qa:  src act trigger enqueue dst)
//   trans: s0 a any,eps d,- s0  (.qa2: triggers and blocks per queue)
//   trans: s0 a _ x R s1        (.rtm: src act read write move dst)
//
// Triggers are `any`, `eps`, or a data symbol. Enqueue blocks are `-` or
// dot-separated symbols `d1.d2` (d1 ends up at the write end). `tau` names
// the silent action. `#` starts a comment.

#include <string>

#include "qaw/core.hpp"
#include "qaw/rtm.hpp"

namespace qaw {

struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& what, int line_no)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

Qa parse_qa(const std::string& text);
Qa2 parse_qa2(const std::string& text);
Rtm parse_rtm(const std::string& text);

std::string write_qa(const Qa& m);
std::string write_qa2(const Qa2& m);
std::string write_rtm(const Rtm& m);

Qa load_qa(const std::string& path);
Qa2 load_qa2(const std::string& path);
Rtm load_rtm(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qaw
