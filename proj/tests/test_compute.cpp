#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "qaw/compute.hpp"

using namespace qaw;

namespace {

std::vector<Symbol> letters(const std::string& w) {
  std::vector<Symbol> out;
  for (char c : w) out.emplace_back(1, c);
  return out;
}

std::string joined(const std::vector<Symbol>& xs) {
  std::string out;
  for (const auto& x : xs) out += x;
  return out;
}

// All words over {a,b} up to the given length, shortest first.
std::vector<std::string> ab_words(std::size_t max_len) {
  std::vector<std::string> out = {""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      out.push_back(out[i] + "a");
      out.push_back(out[i] + "b");
    }
    begin = end;
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("compute");

TEST_CASE("port actions are recognised by their token shape") {
  auto in = classify_io(ActionLabel::visible("i?d"));
  REQUIRE(in.has_value());
  CHECK(in->kind == IoKind::Input);
  CHECK(in->payload == "d");

  auto out = classify_io(ActionLabel::visible("o!yes"));
  REQUIRE(out.has_value());
  CHECK(out->kind == IoKind::Output);
  CHECK(out->payload == "yes");

  auto empty = classify_io(ActionLabel::visible("o!eps"));
  REQUIRE(empty.has_value());
  CHECK(empty->kind == IoKind::EmptySignal);
  CHECK(empty->payload.empty());

  CHECK_FALSE(classify_io(ActionLabel::visible("a")).has_value());
  CHECK_FALSE(classify_io(ActionLabel::visible("i?")).has_value());
  CHECK_FALSE(classify_io(ActionLabel::visible("o!")).has_value());
  CHECK_FALSE(classify_io(ActionLabel::silent()).has_value());
}

TEST_CASE("the doubler writes w.w for every short word") {
  Qa m = corpus_doubler();
  for (const std::string& w : ab_words(3)) {
    RunResult r = run_function(m, letters(w));
    CHECK(r.status == RunStatus::Completed);
    CHECK(joined(r.output) == w + w);  // oracle: plain string doubling
    CHECK(r.consumed == w.size());
  }
}

TEST_CASE("the doubler answers the empty input with the empty-signal") {
  RunResult r = run_function(corpus_doubler(), {});
  CHECK(r.status == RunStatus::Completed);
  CHECK(r.output.empty());
  // the signal is a step of the run but not part of the written word
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0] == "o!eps");
}

TEST_CASE("the comparator decides greater-than on equal-width numbers") {
  Qa m = corpus_comparator();
  int checked = 0;
  for (int len = 1; len <= 3; ++len)
    for (int u = 0; u < (1 << len); ++u)
      for (int v = 0; v < (1 << len); ++v) {
        std::vector<Symbol> input;
        for (int k = len - 1; k >= 0; --k)
          input.emplace_back(1, static_cast<char>('0' + ((u >> k) & 1)));
        input.emplace_back("gt");
        for (int k = len - 1; k >= 0; --k)
          input.emplace_back(1, static_cast<char>('0' + ((v >> k) & 1)));
        RunResult r = run_function(m, input);
        CHECK(r.status == RunStatus::Completed);
        // oracle: integer comparison of the two values
        std::vector<Symbol> want = {u > v ? "yes" : "no"};
        CHECK(r.output == want);
        ++checked;
      }
  CHECK(checked == 4 + 16 + 64);
}

TEST_CASE("the comparator commits early once the numbers differ") {
  // 100 vs 011: the first digits already differ, so the answer comes after
  // reading just one digit of the second number.
  std::vector<Symbol> input = {"1", "0", "0", "gt", "0", "1", "1"};
  RunResult r = run_function(corpus_comparator(), input);
  CHECK(r.status == RunStatus::Completed);
  CHECK(r.output == std::vector<Symbol>{"yes"});
  CHECK(r.consumed == 5);  // three digits, the separator, one digit
}

TEST_CASE("a run that halts in a non-final configuration is stuck") {
  Qa m = parse_qa(
      "qa\n"
      "data: d\n"
      "actions: i?d\n"
      "states: s0 s1\n"
      "initial: s0\n"
      "finals: s1\n"
      "trans: s0 i?d any d s1\n");
  RunResult r = run_function(m, {});
  CHECK(r.status == RunStatus::Stuck);
  CHECK(r.halted_at == "(s0,-)");

  RunResult ok = run_function(m, {"d"});
  CHECK(ok.status == RunStatus::Completed);
  CHECK(ok.consumed == 1);
}

TEST_CASE("two eligible moves in one tier are reported, not resolved") {
  Qa m = parse_qa(
      "qa\n"
      "data: d\n"
      "actions: i?d\n"
      "states: s0 s1 s2\n"
      "initial: s0\n"
      "finals: s1\n"
      "trans: s0 tau any - s1\n"
      "trans: s0 tau any - s2\n");
  CHECK_THROWS_AS(run_function(m, {}), ValidationError);
}

TEST_CASE("a silent loop runs the budget out") {
  Qa m = parse_qa(
      "qa\n"
      "data: d\n"
      "actions: i?d\n"
      "states: s0\n"
      "initial: s0\n"
      "finals: s0\n"
      "trans: s0 tau any - s0\n");
  RunResult r = run_function(m, {}, 25);
  CHECK(r.status == RunStatus::BudgetExhausted);
  CHECK(r.trace.size() == 25);
}

TEST_CASE("both transducers check out as computations") {
  for (const Qa& m : {corpus_doubler(), corpus_comparator()}) {
    ComputationCheck c = check_computation(m, {6, 20000, 16});
    CHECK(c.ok);
    CHECK(c.note.find("truncated") != std::string::npos);
  }
}

TEST_CASE("machines with non-port actions are not computations") {
  for (const Qa& m : {corpus_anbncn(), corpus_double_word()}) {
    ComputationCheck c = check_computation(m, {6, 20000, 16});
    CHECK_FALSE(c.ok);
    CHECK(c.note.find("is not an i/o action") != std::string::npos);
  }
}

TEST_CASE("nondeterministic behaviour is not a computation") {
  // Two reads of the same datum lead to different states: a genuine choice.
  Qa m = parse_qa(
      "qa\n"
      "data: d\n"
      "actions: i?d\n"
      "states: s0 s1 s2\n"
      "initial: s0\n"
      "finals: s1\n"
      "trans: s0 i?d any d s1\n"
      "trans: s0 i?d any - s2\n");
  ComputationCheck c = check_computation(m, {4, 20000, 16});
  CHECK_FALSE(c.ok);
  CHECK(c.note.find("deterministic") != std::string::npos);
}

TEST_SUITE_END();
