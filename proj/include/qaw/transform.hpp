#pragma once
// Automaton-to-automaton passes. Each pass returns the rebuilt machine
// together with the fresh symbols/states it minted and a shape
// certificate: a list of syntactic postconditions checked on the output,
// each line prefixed "ok:" or "FAIL:".
//
// Passes fail fast (ValidationError) when the input already uses a
// reserved symbol they need ($, ≬, or the blank).

#include <set>
#include <string>
#include <vector>

#include "qaw/core.hpp"
#include "qaw/rtm.hpp"

namespace qaw {

template <class M>
struct PassResult {
  std::string pass;
  M machine;
  std::set<Symbol> fresh_symbols;
  std::set<std::string> fresh_states;
  std::vector<std::string> certificate;
  bool certificate_ok = true;
};

// Removes all fire-on-anything triggers. Every remaining trigger either
// requires the empty queue or dequeues a specific head symbol; the
// rebuilt machine uses $ as a rotation marker.
PassResult<Qa> eliminate_any_triggers(const Qa& in);

// Rewrites every transition into one of the three primitive shapes:
// enqueue one symbol on any contents, dequeue one specific symbol, or
// fire on the empty queue without touching it.
PassResult<Qa> normalize(const Qa& in);

// Folds a two-queue machine into a single queue holding "queue1 ≬ queue2"
// with the second queue's read end at the global read end.
PassResult<Qa> merge_two_queues(const Qa2& in);

// Encodes a tape machine as a queue machine; a configuration with tape
// left|head|right becomes the queue word reverse(right) ≬ left head.
PassResult<Qa> rtm_to_qa(const Rtm& in);

// Encodes a queue machine as a tape machine holding the queue on the tape
// with the head standing on the read end; enqueues walk to the far end
// and back. Non-primitive inputs are normalized first.
PassResult<Rtm> qa_to_rtm(const Qa& in);

}  // namespace qaw
