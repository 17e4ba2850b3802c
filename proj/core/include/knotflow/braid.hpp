#pragma once

#include <string>
#include <vector>

namespace knotflow {

// Letter i > 0 is the i-th positive generator, i < 0 its inverse.
// The strand count is explicit: trailing strands untouched by letters are
// legal and close into split unknot components.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  bool positive() const;
};

struct ClosureInfo {
  int components = 0;
  int crossings = 0;
  long long writhe = 0;
  std::vector<int> permutation;  // permutation[i] = top position of strand entering at bottom i (0-based)
};

// (s_1 s_2 ... s_{n-1})^p on n strands; closure is the (n,p) torus link.
BraidWord torus_braid(int n, int p);

// m blocks on n+m strands, block j = s_{n+j-1} s_{n+j-2} ... s_j. The closure
// is the same link as the (n,m) torus link; the middle blocks descend just as
// the first and last do, which keeps the letter count at n*m.
BraidWord knm_braid(int n, int m);

BraidWord mirror_braid(const BraidWord& b);

// Side-by-side closure: letters of b are shifted past the strands of a, so no
// letter ties the two groups and the closure splits.
BraidWord disjoint_union(const BraidWord& a, const BraidWord& b);

ClosureInfo closure_info(const BraidWord& b);

// True when the letters tie all strands into one Seifert-surface piece.
bool connected_closure(const BraidWord& b);

// Text form: whitespace-separated signed letters; strand count is carried
// separately and is mandatory.
BraidWord parse_braid_text(const std::string& text, int strands);
std::string format_braid_text(const BraidWord& b);

void validate_braid(const BraidWord& b);  // throws std::invalid_argument

}  // namespace knotflow
