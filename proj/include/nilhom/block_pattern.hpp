#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "nilhom/rational.hpp"

namespace nilhom {

enum class BlockKind { Identity, SL };

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 1000000) {
    for (Int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }
  return boost::multiprecision::miller_rabin_test(n, 25);
}

/**
 * A block decomposition N = n_1 + ... + n_K together with the kind of each
 * diagonal block. Identity-kind diagonal blocks are pinned to the identity;
 * SL-kind blocks carry a copy of SL_{n_i}. The optional prime selects the
 * ring Z[1/p] for the arithmetic-group constructions; it plays no role in
 * the Lie algebra computations.
 */
struct BlockPattern {
  std::vector<int> sizes;
  std::vector<BlockKind> kinds;
  std::optional<Int> prime;

  void validate() const {
    if (sizes.size() < 2) throw std::invalid_argument("BlockPattern: need at least 2 blocks");
    if (sizes.size() != kinds.size())
      throw std::invalid_argument("BlockPattern: sizes and kinds differ in length");
    for (int n : sizes)
      if (n < 1) throw std::invalid_argument("BlockPattern: block sizes must be positive");
    if (prime && !is_prime(*prime))
      throw std::invalid_argument("BlockPattern: prime field is not prime");
  }

  int block_count() const { return static_cast<int>(sizes.size()); }

  int total_size() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

  /// Row/column offset of block b inside the N x N matrix.
  int offset(int b) const {
    int o = 0;
    for (int i = 0; i < b; ++i) o += sizes[i];
    return o;
  }

  /// dim u = sum over block pairs i < j of n_i * n_j.
  int dim_u() const {
    int d = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i)
      for (std::size_t j = i + 1; j < sizes.size(); ++j) d += sizes[i] * sizes[j];
    return d;
  }

  bool all_identity() const {
    for (BlockKind k : kinds)
      if (k != BlockKind::Identity) return false;
    return true;
  }

  /// The 4-block (Identity, SL, SL, Identity) shape of the explicit
  /// kernel-family constructions.
  bool is_family_shape() const {
    return kinds.size() == 4 && kinds[0] == BlockKind::Identity &&
           kinds[1] == BlockKind::SL && kinds[2] == BlockKind::SL &&
           kinds[3] == BlockKind::Identity;
  }

  std::string describe() const {
    std::string s = "(";
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(sizes[i]);
      s += kinds[i] == BlockKind::SL ? "sl" : "id";
    }
    s += ")";
    return s;
  }
};

} // namespace nilhom
