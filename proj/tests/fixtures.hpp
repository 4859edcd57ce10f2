#pragma once
// Corpus access for tests, resolved relative to this source file so the
// binaries can run from any directory.

#include <filesystem>
#include <string>

#include "qaw/parse.hpp"

inline std::string corpus_path(const std::string& name) {
  static const std::filesystem::path dir =
      std::filesystem::path(__FILE__).parent_path().parent_path() / "corpus";
  return (dir / name).string();
}

inline qaw::Qa corpus_double_word() { return qaw::load_qa(corpus_path("double_word.qa")); }
inline qaw::Qa corpus_anbncn() { return qaw::load_qa(corpus_path("anbncn.qa")); }
inline qaw::Qa corpus_queue_always() { return qaw::load_qa(corpus_path("queue_always.qa")); }
inline qaw::Qa corpus_queue_empty() { return qaw::load_qa(corpus_path("queue_empty.qa")); }
inline qaw::Qa corpus_doubler() { return qaw::load_qa(corpus_path("doubler.qa")); }
inline qaw::Qa corpus_comparator() { return qaw::load_qa(corpus_path("comparator.qa")); }
inline qaw::Qa corpus_pump() { return qaw::load_qa(corpus_path("pump.qa")); }
inline qaw::Qa2 corpus_shuttle() { return qaw::load_qa2(corpus_path("shuttle.qa2")); }
inline qaw::Rtm corpus_rtm_loop() { return qaw::load_rtm(corpus_path("rtm_loop.rtm")); }
inline qaw::Rtm corpus_rtm_two_step() { return qaw::load_rtm(corpus_path("rtm_two_step.rtm")); }
