#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmap/census.hpp"

namespace qmap {

struct TopoIndex {
  int index = 0;     // 1..47
  char letter = 0;   // 'a'.. inside merged items, 0 otherwise
  std::string str() const;
  friend bool operator==(const TopoIndex& a, const TopoIndex& b) { return a.index == b.index && a.letter == b.letter; }
};

TopoIndex topo_index(const AffineClass& c);
// by representative number 1..64
TopoIndex topo_index_of(int k);
// representative numbers of a topological class, in letter order
std::vector<int> topo_members(int index);

struct NotDistinguishedByTable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MergeStep {
  PolyWitness step;
  std::pair<Poly, Poly> result;
  std::string printed;  // the intermediate form as stated
  bool matches = false;
};

struct MergeReport {
  std::string name;
  int k = 0;               // representative the chain starts from
  std::string claimed;     // final normal form
  bool as_printed = true;  // false for chains with a corrected step
  bool ok = false;
  std::vector<MergeStep> steps;
  std::string note;        // solved unknowns, corrections
};

// Replays the merge chains: F24, F28 as printed, F28 with the corrected sign, F31, and an identity chain.
std::vector<MergeReport> verify_merge_witnesses();

// Census facts separating two topological classes; throws NotDistinguishedByTable when the census
// signatures coincide.
std::string distinguishing_report(int index_i, int index_j);

}  // namespace qmap
