#pragma once
// Strong and branching equivalence on explored graphs.
//
// Both graphs are first *sealed*: every frontier state gets a reserved
// ‹cut› self-loop and loses its finality, so that two graphs truncated at
// the same cut stay comparable and genuinely different behaviour beyond
// the cut cannot hide.
//
// The strong check splits by finality and refines with direct signatures.
// The branching check implements the literal finality clause — a final
// state is matched by a partner that can silently reach *some* final
// state — by splitting on silent-reachability-of-finality first, then
// refining with signatures computed along in-block silent paths (inert
// silent moves are dropped from signatures).

#include <string>
#include <vector>

#include "qaw/lts.hpp"

namespace qaw {

enum class Verdict {
  Related,           // same class, and both graphs were fully explored
  RelatedUpToBound,  // same class, but a bound truncated at least one graph
  Distinguished,
};

std::string verdict_str(Verdict v);

struct BisimResult {
  Verdict verdict = Verdict::Related;
  std::size_t blocks = 0;  // classes in the final partition of the union
  // For Distinguished: an alternating state/label path on the mover's side
  // ending at the move the partner cannot match, plus a prose explanation.
  std::vector<std::string> witness;
  std::string reason;
  // True when the distinction may be an artefact of truncation: treating
  // every frontier state as a wildcard that matches anything, the roots can
  // no longer be told apart.  A Distinguished verdict with this flag false
  // is therefore definitive for the untruncated behaviours.
  bool witness_touches_frontier = false;
};

BisimResult strong_bisim(const FiniteLts& left, const FiniteLts& right);
BisimResult branching_bisim(const FiniteLts& left, const FiniteLts& right);

// Branching classes of a single graph (sealed internally); block id per state.
std::vector<std::size_t> branching_blocks(const FiniteLts& lts);

// Per-edge flags: a silent edge is inert iff it stays inside its branching
// class. Visible edges are always false.
std::vector<bool> inert_taus(const FiniteLts& lts);

}  // namespace qaw
