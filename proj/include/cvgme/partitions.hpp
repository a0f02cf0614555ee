#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cvgme/covariance.hpp"

namespace cvgme {

/// Unordered mode pair, stored with first < second (0-based).
using ModePair = std::pair<int, int>;

ModePair make_pair_sorted(int a, int b);

/// Two-set split of the modes {0..N-1}. Canonical form keeps mode 0 in
/// `index_set`, so a split and its mirror image compare equal.
class Bipartition {
 public:
  Bipartition(int n_modes, std::vector<int> members);

  int n_modes() const { return n_modes_; }
  const std::vector<int>& index_set() const { return index_set_; }
  std::vector<int> complement() const;
  bool contains(int mode) const;
  bool same_side(int a, int b) const { return contains(a) == contains(b); }

  /// "A|BC" style label; the smaller side is printed first (ties: the side
  /// holding mode A).
  std::string label() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int n_modes_;
  std::vector<int> index_set_;
};

/// All 2^(N-1) - 1 inequivalent bipartitions. Ordered by the size of the
/// smaller side, then lexicographically, which yields
/// A|BC, B|AC, C|AB for N = 3 and A|BCD, ..., D|ABC, AB|CD, AC|BD, AD|BC for
/// N = 4.
std::vector<Bipartition> enumerate_bipartitions(int n_modes);

struct TreeSpec {
  int n_modes = 0;
  std::vector<ModePair> edges;
};

struct TreeCheck {
  bool valid = false;
  std::string reason;
};

TreeCheck validate_tree(const TreeSpec& tree);

/// Mode pairs missing from the tree: the correlation blocks a blind witness
/// must not read. Size (N-1)(N-2)/2.
std::vector<ModePair> blind_pattern(const TreeSpec& tree);

/// Named presets: "chain3" (A-B-C), "chain4" (A-B-C-D), "tshape4"
/// (B joined to A, C and D).
TreeSpec tree_preset(const std::string& name);

/// Keeps the 2x2 block (m, n) iff m and n lie on the same side of the
/// bipartition, zeroing every cross block.
Matrix block_project(const Matrix& m, const Bipartition& pi);

std::string mode_label(int mode);

}  // namespace cvgme
