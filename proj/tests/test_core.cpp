#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "qaw/core.hpp"
#include "qaw/parse.hpp"

using namespace qaw;

TEST_SUITE_BEGIN("core");

TEST_CASE("queue word convention: head at the back, blocks prepend in order") {
  QueueWord w;  // empty
  CHECK(trigger_enabled(Trigger::any(), w));
  CHECK(trigger_enabled(Trigger::empty(), w));
  CHECK_FALSE(trigger_enabled(Trigger::on("a"), w));

  // enqueue block a.b onto the empty queue: a sits at the write end, b is
  // dequeued first
  w = apply_transition(Trigger::any(), {"a", "b"}, w);
  CHECK(word_str(w) == "a.b");
  CHECK(trigger_enabled(Trigger::on("b"), w));
  CHECK_FALSE(trigger_enabled(Trigger::on("a"), w));
  CHECK_FALSE(trigger_enabled(Trigger::empty(), w));

  // dequeue b while enqueueing c: c goes to the write end
  w = apply_transition(Trigger::on("b"), {"c"}, w);
  CHECK(word_str(w) == "c.a");
  w = apply_transition(Trigger::on("a"), {}, w);
  w = apply_transition(Trigger::on("c"), {}, w);
  CHECK(word_str(w) == "-");
}

TEST_CASE("empty-trigger transitions fire only on the empty queue") {
  Qa m = corpus_double_word();
  // (s0, a): the silent switch s0 -> s1 requires the empty queue
  QaConfig c{"s0", {"a"}};
  for (auto& [act, n] : step(m, c)) CHECK_FALSE(act.tau);
  QaConfig e{"s0", {}};
  bool saw_tau = false;
  for (auto& [act, n] : step(m, e))
    if (act.tau) {
      saw_tau = true;
      CHECK(n.state == "s1");
      CHECK(n.queue.empty());
    }
  CHECK(saw_tau);
}

TEST_CASE("double-word machine matches its published shape") {
  Qa m = corpus_double_word();
  CHECK(m.transitions.size() == 8);
  CHECK(m.data == std::vector<Symbol>{"a", "b"});
  CHECK(m.finals == std::set<std::string>{"s2"});

  // hand-checked successor set of (s0, b.a) — head is a
  QaConfig c{"s0", {"b", "a"}};
  auto succ = step(m, c);
  std::set<std::string> got;
  for (auto& [act, n] : succ) got.insert(act.str() + " " + n.str());
  std::set<std::string> want = {
      "a (s0,a.b.a)",  // any-trigger self loop enqueues a
      "b (s0,b.b.a)",
      "a (s1,b)",  // head consumed on the switch
  };
  CHECK(got == want);
}

TEST_CASE("qa round-trips through its text form") {
  for (const char* name :
       {"double_word.qa", "anbncn.qa", "doubler.qa", "comparator.qa"}) {
    Qa m = load_qa(corpus_path(name));
    Qa again = parse_qa(write_qa(m));
    CHECK(again.data == m.data);
    CHECK(again.states == m.states);
    CHECK(again.initial == m.initial);
    CHECK(again.finals == m.finals);
    CHECK(again.transitions == m.transitions);
  }
}

TEST_CASE("qa2 and rtm round-trip through their text forms") {
  Qa2 s = corpus_shuttle();
  Qa2 s2 = parse_qa2(write_qa2(s));
  CHECK(s2.transitions == s.transitions);
  CHECK(s2.finals == s.finals);

  Rtm r = corpus_rtm_two_step();
  Rtm r2 = parse_rtm(write_rtm(r));
  CHECK(r2.transitions == r.transitions);
  CHECK(r2.initial == r.initial);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_qa(""), ParseError);
  CHECK_THROWS_AS(parse_qa("qa2\nstates: s\ninitial: s\n"), ParseError);  // wrong header
  CHECK_THROWS_AS(parse_qa("qa\nstates: s\n"), ParseError);               // no initial
  CHECK_THROWS_AS(
      parse_qa("qa\nstates: s\ninitial: s\ntrans: s a any a\n"),  // five fields needed
      ParseError);
  CHECK_THROWS_AS(parse_qa("qa\ndata: eps\nstates: s\ninitial: s\n"), ValidationError);
  CHECK_THROWS_AS(
      parse_qa("qa\ndata: a\nactions: x\nstates: s\ninitial: s\ntrans: s x any b s\n"),
      ValidationError);  // b undeclared
  CHECK_THROWS_AS(
      parse_qa("qa\ndata: a\nactions: x\nstates: s\ninitial: s\ntrans: s y any a s\n"),
      ValidationError);  // action y undeclared
  CHECK_THROWS_AS(parse_qa("qa\nstates: s s\ninitial: s\n"), ValidationError);  // dup
}

TEST_CASE("comments and blank lines are ignored") {
  Qa m = parse_qa("# leading\nqa\n\ndata: a  # trailing\nstates: s\ninitial: s\n");
  CHECK(m.data == std::vector<Symbol>{"a"});
}

TEST_CASE("symbol charset") {
  CHECK(valid_symbol("abc09_Z"));
  CHECK(valid_symbol("$"));
  CHECK(valid_symbol("≬"));
  CHECK(valid_symbol("_"));
  CHECK_FALSE(valid_symbol(""));
  CHECK_FALSE(valid_symbol("a.b"));
  CHECK_FALSE(valid_symbol("a b"));
  CHECK_FALSE(valid_symbol(">"));
  CHECK_FALSE(valid_data_symbol("eps"));
  CHECK_FALSE(valid_data_symbol("any"));
  CHECK_FALSE(valid_data_symbol("tau"));
  CHECK(valid_action_token("i?d"));
  CHECK(valid_action_token("o!eps"));
  CHECK_FALSE(valid_action_token("tau"));
}

TEST_CASE("two-queue steps agree with the nine-case table") {
  std::mt19937 rng(20250825);
  for (int round = 0; round < 200; ++round) {
    Qa2 m = oracle::random_qa2(rng);
    for (int probe = 0; probe < 10; ++probe) {
      Qa2Config c = oracle::random_config2(rng, m);
      auto got = step(m, c);
      auto want = oracle::step2_table(m, c);
      auto key = [](const std::pair<ActionLabel, Qa2Config>& p) {
        return p.first.str() + " " + p.second.str();
      };
      std::multiset<std::string> gs, ws;
      for (auto& p : got) gs.insert(key(p));
      for (auto& p : want) ws.insert(key(p));
      CHECK(gs == ws);
    }
  }
}

TEST_CASE("two-queue shuttle moves one item across") {
  Qa2 m = corpus_shuttle();
  Qa2Config c = initial_config(m);
  auto succ = step(m, c);  // only a is enabled: b needs q1 head, c needs q2 head
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].first.token == "a");
  c = succ[0].second;
  CHECK(c.str() == "(s0,d,-)");
  // now a again or b
  auto succ2 = step(m, c);
  REQUIRE(succ2.size() == 2);
  for (auto& [act, n] : succ2)
    if (act.token == "b") {
      CHECK(n.str() == "(s0,-,d)");
      c = n;
    }
  auto succ3 = step(m, c);
  bool saw_c = false;
  for (auto& [act, n] : succ3)
    if (act.token == "c") {
      saw_c = true;
      CHECK(n.str() == "(s0,-,-)");
    }
  CHECK(saw_c);
}

TEST_SUITE_END();
