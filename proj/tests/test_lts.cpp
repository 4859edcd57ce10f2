#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "qaw/lts.hpp"

using namespace qaw;

TEST_SUITE_BEGIN("lts");

TEST_CASE("depth-2 exploration of the double-word machine") {
  Qa m = corpus_double_word();
  FiniteLts lts = explore_qa(m, {2, 4096, 64});
  std::set<std::string> got;
  for (const auto& s : lts.states) got.insert(s.desc);
  // Frozen by hand: the root's silent closure {(s0,-),(s1,-),(s2,-)} plus
  // one visible level {(s0,a),(s0,b)} plus a second visible level. The
  // switch transitions dequeue, so (s1,a)/(s1,b) are not reachable here.
  std::set<std::string> want = {"(s0,-)",   "(s1,-)",   "(s2,-)",
                                "(s0,a)",   "(s0,b)",   "(s0,a.a)", "(s0,b.a)",
                                "(s0,a.b)", "(s0,b.b)", "(s1,a)",   "(s1,b)"};
  want.erase("(s1,a)");
  want.erase("(s1,b)");
  CHECK(got == want);
  CHECK(got.size() == 9);

  // cross-check against the independent per-level enumerator
  CHECK(got == oracle::visible_depth_states(m, 2, 64));
}

TEST_CASE("visible levels and silent closure") {
  Qa m = corpus_anbncn();
  FiniteLts lts = explore_qa(m, {4, 4096, 64});
  std::map<std::string, const LtsState*> by_desc;
  for (const auto& s : lts.states) by_desc[s.desc] = &s;
  REQUIRE(by_desc.count("(s0,-)"));
  CHECK(by_desc["(s0,-)"]->level == 0);
  REQUIRE(by_desc.count("(s0,1)"));
  CHECK(by_desc["(s0,1)"]->level == 1);
  REQUIRE(by_desc.count("(s2,-)"));
  CHECK(by_desc["(s2,-)"]->level == 3);  // after a b c
  // the silent successor (s3,-) sits on the same visible level
  REQUIRE(by_desc.count("(s3,-)"));
  CHECK(by_desc["(s3,-)"]->level == 3);
  CHECK(by_desc["(s3,-)"]->final);
  CHECK_FALSE(by_desc["(s2,-)"]->frontier);
  CHECK_FALSE(by_desc["(s3,-)"]->frontier);
}

TEST_CASE("frontier marks exactly the states whose expansion was cut") {
  Qa m = corpus_double_word();
  FiniteLts lts = explore_qa(m, {2, 4096, 64});
  for (const auto& s : lts.states) {
    // every level-2 state of this machine has further moves, so all are
    // frontier; nothing shallower is
    CHECK(s.frontier == (s.level == 2));
  }
}

TEST_CASE("deep exploration of a terminating machine has no frontier") {
  Rtm r = corpus_rtm_two_step();
  FiniteLts lts = explore_rtm(r, {14, 4096, 64});
  CHECK_FALSE(lts.has_frontier());
  CHECK(lts.states.size() == 3);
  CHECK(lts.edges.size() == 2);
}

TEST_CASE("queue cap freezes the pumping state whole") {
  Qa m = corpus_pump();
  for (std::size_t k = 1; k <= 4; ++k) {
    FiniteLts lts = explore_qa(m, {100, 4096, k});
    // Hand count: pumping configurations with 0..k symbols, plus the k-1
    // draining configurations the a-moves can still reach, plus the
    // accepting one (the latter two families only exist from cap 2 up).
    CHECK(lts.states.size() == (k >= 2 ? 2 * k + 1 : 2));

    // The configuration at the cap is deferred as one piece: marked
    // frontier, with none of its moves kept — not even the within-cap ones.
    std::string full = "1";
    for (std::size_t i = 1; i < k; ++i) full += ".1";
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
      const LtsState& s = lts.states[i];
      CHECK(s.frontier == (s.desc == "(s0," + full + ")"));
      if (s.frontier)
        for (const auto& e : lts.edges) CHECK(e.src != i);
    }

    // Word search runs on the automaton itself, so the run that needs the
    // full queue is found even though the graph above dropped it.
    std::vector<std::string> word(k, "a");
    CHECK(accepts(m, word, {100, 4096, k}).accepted);
    word.push_back("a");
    CHECK_FALSE(accepts(m, word, {100, 4096, k}).accepted);
  }
}

TEST_CASE("acceptance on the explored graph matches brute-force runs") {
  Qa m = corpus_double_word();
  FiniteLts lts = explore_qa(m, {8, 100000, 8});
  std::vector<std::vector<std::string>> words = {{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& w : words)
      if (w.size() == static_cast<std::size_t>(len) - 1)
        for (const char* c : {"a", "b"}) {
          auto n = w;
          n.push_back(c);
          next.push_back(n);
        }
    for (auto& w : next) words.push_back(w);
  }
  for (const auto& w : words)
    CHECK(accepts(lts, w) == oracle::brute_accepts(m, w, 8));
}

TEST_CASE("completed traces collect exactly the accepted words") {
  Qa m = corpus_anbncn();
  FiniteLts lts = explore_qa(m, {7, 100000, 8});
  auto traces = completed_traces(lts, 6);
  std::set<std::vector<std::string>> want = {{"a", "b", "c"},
                                             {"a", "a", "b", "b", "c", "c"}};
  CHECK(traces == want);
}

TEST_CASE("determinism diagnosis") {
  oracle::LtsBuilder det;
  det.edge("p", "a", "q").edge("p", "b", "q");
  CHECK_FALSE(determinism_violation(det.build("p")).has_value());

  oracle::LtsBuilder dup;
  dup.edge("p", "a", "q").edge("p", "a", "r");
  auto v = determinism_violation(dup.build("p"));
  REQUIRE(v.has_value());
  CHECK(v->find("two 'a'") != std::string::npos);

  oracle::LtsBuilder mix;
  mix.edge("p", "a", "q").edge("p", "tau", "r");
  CHECK(determinism_violation(mix.build("p")).has_value());
}

TEST_CASE("dot and dump output") {
  Qa m = corpus_anbncn();
  FiniteLts lts = explore_qa(m, {1, 4096, 64});
  std::string dot = to_dot(lts);
  CHECK(dot.find("doublecircle") == std::string::npos);  // no finals this shallow
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("init -> n0") != std::string::npos);

  std::string dump = write_lts(lts);
  CHECK(dump.find("state: 0 (s0,-)") != std::string::npos);
  CHECK(dump.find("root: 0") != std::string::npos);
  CHECK(dump.find("\"a\"") != std::string::npos);
}

TEST_CASE("a tiny state budget on the root is an error") {
  Qa m = corpus_double_word();
  CHECK_THROWS_AS(explore_qa(m, {8, 1, 64}), ValidationError);
}

TEST_SUITE_END();
