#pragma once
// Reproducibility harness: re-runs every acceptance check against the
// shipped corpus and reports one PASS/FAIL line per criterion. Each
// detail string records the bounds the check ran under.

#include <string>
#include <vector>

namespace qaw {

struct CriterionResult {
  int id = 0;
  std::string name;    // short stable label, usable as a filter
  bool pass = false;
  std::string detail;  // bounds used and what was measured / what failed
};

// Runs the acceptance criteria over the corpus directory. `only` filters:
// a criterion runs when `only` is empty, equals its number, or is a
// substring of its name. Criteria never throw; an error becomes a FAIL
// line carrying the message.
std::vector<CriterionResult> run_criteria(const std::string& corpus_dir,
                                          const std::string& only = "");

}  // namespace qaw
