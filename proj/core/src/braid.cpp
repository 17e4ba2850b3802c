#include "knotflow/braid.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace knotflow {

bool BraidWord::positive() const {
  for (int l : letters)
    if (l < 0) return false;
  return true;
}

void validate_braid(const BraidWord& b) {
  if (b.strands < 1) throw std::invalid_argument("braid: strand count must be >= 1");
  for (int l : b.letters) {
    int a = std::abs(l);
    if (a < 1 || a > b.strands - 1)
      throw std::invalid_argument("braid: letter " + std::to_string(l) +
                                  " out of range for " + std::to_string(b.strands) + " strands");
  }
}

BraidWord torus_braid(int n, int p) {
  if (n < 2) throw std::invalid_argument("torus_braid: n >= 2 required");
  if (p < 1) throw std::invalid_argument("torus_braid: p >= 1 required");
  BraidWord b;
  b.strands = n;
  b.letters.reserve(static_cast<std::size_t>(n - 1) * p);
  for (int rep = 0; rep < p; ++rep)
    for (int i = 1; i <= n - 1; ++i) b.letters.push_back(i);
  return b;
}

BraidWord knm_braid(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("knm_braid: n, m >= 1 required");
  BraidWord b;
  b.strands = n + m;
  b.letters.reserve(static_cast<std::size_t>(n) * m);
  for (int j = 1; j <= m; ++j)
    for (int i = n + j - 1; i >= j; --i) b.letters.push_back(i);
  return b;
}

BraidWord mirror_braid(const BraidWord& b) {
  BraidWord out;
  out.strands = b.strands;
  out.letters.reserve(b.letters.size());
  for (int l : b.letters) out.letters.push_back(-l);
  return out;
}

BraidWord disjoint_union(const BraidWord& a, const BraidWord& b) {
  validate_braid(a);
  validate_braid(b);
  BraidWord out;
  out.strands = a.strands + b.strands;
  out.letters = a.letters;
  for (int l : b.letters) out.letters.push_back(l > 0 ? l + a.strands : l - a.strands);
  return out;
}

ClosureInfo closure_info(const BraidWord& b) {
  validate_braid(b);
  ClosureInfo info;
  info.crossings = static_cast<int>(b.letters.size());
  for (int l : b.letters) info.writhe += (l > 0) ? 1 : -1;

  std::vector<int> pos(b.strands);  // pos[p] = strand currently at position p
  std::iota(pos.begin(), pos.end(), 0);
  for (int l : b.letters) {
    int i = std::abs(l) - 1;
    std::swap(pos[i], pos[i + 1]);
  }
  info.permutation.assign(b.strands, 0);
  for (int p = 0; p < b.strands; ++p) info.permutation[pos[p]] = p;

  std::vector<char> seen(b.strands, 0);
  for (int s = 0; s < b.strands; ++s) {
    if (seen[s]) continue;
    ++info.components;
    for (int t = s; !seen[t]; t = info.permutation[t]) seen[t] = 1;
  }
  return info;
}

bool connected_closure(const BraidWord& b) {
  validate_braid(b);
  if (b.strands == 1) return true;
  std::vector<int> parent(b.strands);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int l : b.letters) {
    int i = std::abs(l) - 1;
    parent[find(i)] = find(i + 1);
  }
  int root = find(0);
  for (int s = 1; s < b.strands; ++s)
    if (find(s) != root) return false;
  return true;
}

BraidWord parse_braid_text(const std::string& text, int strands) {
  BraidWord b;
  b.strands = strands;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("braid text: bad token '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("braid text: bad token '" + tok + "'");
    if (v == 0) throw std::invalid_argument("braid text: letter 0 is not a generator");
    b.letters.push_back(v);
  }
  validate_braid(b);
  return b;
}

std::string format_braid_text(const BraidWord& b) {
  std::string out;
  for (std::size_t i = 0; i < b.letters.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(b.letters[i]);
  }
  return out;
}

}  // namespace knotflow
