#include "cvgme/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cvgme {

ModePair make_pair_sorted(int a, int b) {
  return a < b ? ModePair{a, b} : ModePair{b, a};
}

std::string mode_label(int mode) {
  if (mode < 26) return std::string(1, static_cast<char>('A' + mode));
  return "M" + std::to_string(mode + 1);
}

Bipartition::Bipartition(int n_modes, std::vector<int> members)
    : n_modes_(n_modes) {
  if (n_modes < 2) throw std::invalid_argument("bipartition needs N >= 2");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (int m : members) {
    if (m < 0 || m >= n_modes) {
      throw std::invalid_argument("bipartition member out of range");
    }
  }
  if (members.empty() || static_cast<int>(members.size()) == n_modes) {
    throw std::invalid_argument("bipartition side must be nonempty and proper");
  }
  index_set_ = std::move(members);
  if (index_set_.front() != 0) index_set_ = complement();
}

std::vector<int> Bipartition::complement() const {
  std::vector<int> out;
  for (int m = 0; m < n_modes_; ++m)
    if (!contains(m)) out.push_back(m);
  return out;
}

bool Bipartition::contains(int mode) const {
  return std::binary_search(index_set_.begin(), index_set_.end(), mode);
}

namespace {

// Smaller side first; on equal sizes the side holding mode 0.
std::pair<std::vector<int>, std::vector<int>> display_sides(
    const Bipartition& b) {
  auto first = b.index_set();
  auto second = b.complement();
  if (second.size() < first.size()) std::swap(first, second);
  return {first, second};
}

std::string join_labels(const std::vector<int>& modes) {
  std::string s;
  for (int m : modes) s += mode_label(m);
  return s;
}

}  // namespace

std::string Bipartition::label() const {
  auto [a, b] = display_sides(*this);
  return join_labels(a) + "|" + join_labels(b);
}

std::vector<Bipartition> enumerate_bipartitions(int n_modes) {
  if (n_modes < 2) {
    throw std::invalid_argument("enumerate_bipartitions: N must be >= 2");
  }
  if (n_modes > 20) {
    throw std::invalid_argument("enumerate_bipartitions: N too large");
  }
  std::vector<Bipartition> out;
  const unsigned full = (1u << n_modes) - 1u;
  for (unsigned mask = 1; mask < full; ++mask) {
    if (!(mask & 1u)) continue;
    std::vector<int> members;
    for (int m = 0; m < n_modes; ++m)
      if (mask >> m & 1u) members.push_back(m);
    out.emplace_back(n_modes, std::move(members));
  }
  std::sort(out.begin(), out.end(), [](const Bipartition& x, const Bipartition& y) {
    auto dx = display_sides(x).first;
    auto dy = display_sides(y).first;
    if (dx.size() != dy.size()) return dx.size() < dy.size();
    return dx < dy;
  });
  return out;
}

TreeCheck validate_tree(const TreeSpec& tree) {
  const int n = tree.n_modes;
  if (n < 1) return {false, "n_modes must be >= 1"};
  if (static_cast<int>(tree.edges.size()) != n - 1) {
    return {false, "a tree on " + std::to_string(n) + " vertices needs " +
                       std::to_string(n - 1) + " edges, got " +
                       std::to_string(tree.edges.size())};
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [a, b] : tree.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      return {false, "edge endpoint out of range"};
    }
    if (a == b) return {false, "self-loop on vertex " + mode_label(a)};
    const int ra = find(a), rb = find(b);
    if (ra == rb) {
      return {false, "edge " + mode_label(a) + mode_label(b) + " closes a cycle"};
    }
    parent[ra] = rb;
  }
  // n-1 edges without a cycle on n vertices is connected.
  return {true, ""};
}

std::vector<ModePair> blind_pattern(const TreeSpec& tree) {
  const TreeCheck check = validate_tree(tree);
  if (!check.valid) throw std::invalid_argument("invalid tree: " + check.reason);
  std::set<ModePair> present;
  for (auto [a, b] : tree.edges) present.insert(make_pair_sorted(a, b));
  std::vector<ModePair> out;
  for (int a = 0; a < tree.n_modes; ++a)
    for (int b = a + 1; b < tree.n_modes; ++b)
      if (!present.count({a, b})) out.emplace_back(a, b);
  return out;
}

TreeSpec tree_preset(const std::string& name) {
  if (name == "chain3") return {3, {{0, 1}, {1, 2}}};
  if (name == "chain4") return {4, {{0, 1}, {1, 2}, {2, 3}}};
  if (name == "tshape4") return {4, {{0, 1}, {1, 2}, {1, 3}}};
  throw std::invalid_argument("unknown tree preset '" + name + "'");
}

Matrix block_project(const Matrix& m, const Bipartition& pi) {
  const int n = 2 * pi.n_modes();
  if (m.rows() != n || m.cols() != n) {
    throw std::invalid_argument("block_project: dimension mismatch");
  }
  Matrix out = m;
  for (int a = 0; a < pi.n_modes(); ++a)
    for (int b = 0; b < pi.n_modes(); ++b)
      if (!pi.same_side(a, b)) out.block<2, 2>(2 * a, 2 * b).setZero();
  return out;
}

}  // namespace cvgme
