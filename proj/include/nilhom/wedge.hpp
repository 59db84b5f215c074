#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nilhom {

/// Basis of Lambda^2 over n generators: pairs (a, b) with a < b, enumerated
/// lexicographically. e_a ^ e_b with a < b is the positive basis element.
class WedgeBasis2 {
 public:
  explicit WedgeBasis2(int n) : n_(n) {
    pairs_.reserve(static_cast<std::size_t>(size_of(n)));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs_.push_back({a, b});
  }

  static long long size_of(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

  int n() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  const std::pair<int, int>& pair(int idx) const { return pairs_[static_cast<std::size_t>(idx)]; }

  int index_of(int a, int b) const {
    // Pairs starting at a begin after all pairs starting below a.
    return a * n_ - a * (a + 1) / 2 + (b - a - 1);
  }

  /// Index and permutation sign of e_x ^ e_y for distinct x, y.
  std::pair<int, int> oriented(int x, int y) const {
    if (x == y) throw std::invalid_argument("WedgeBasis2::oriented: repeated factor");
    return x < y ? std::pair{index_of(x, y), +1} : std::pair{index_of(y, x), -1};
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
};

/// Basis of Lambda^3 over n generators: triples (a, b, c) with a < b < c,
/// enumerated lexicographically.
class WedgeBasis3 {
 public:
  explicit WedgeBasis3(int n) : n_(n), first_off_(static_cast<std::size_t>(n) + 1, 0) {
    for (int a = 0; a < n; ++a) {
      int m = n - a - 1;
      first_off_[static_cast<std::size_t>(a) + 1] =
          first_off_[static_cast<std::size_t>(a)] + m * (m - 1) / 2;
    }
    triples_.reserve(static_cast<std::size_t>(size_of(n)));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) triples_.push_back({a, b, c});
  }

  static long long size_of(int n) {
    return static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(triples_.size()); }
  const std::array<int, 3>& triple(int idx) const { return triples_[static_cast<std::size_t>(idx)]; }

  int index_of(int a, int b, int c) const {
    int m = n_ - a - 1; // (b, c) is a pair over the suffix after a
    int bb = b - a - 1;
    int cc = c - a - 1;
    return first_off_[static_cast<std::size_t>(a)] + bb * m - bb * (bb + 1) / 2 + (cc - bb - 1);
  }

 private:
  int n_;
  std::vector<int> first_off_;
  std::vector<std::array<int, 3>> triples_;
};

} // namespace nilhom
