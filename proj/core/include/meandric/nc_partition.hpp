#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace meandric {

// Largest ground set for which enumerate_nc materializes NC(n).
inline constexpr int kMaxEnumerateN = 16;

/// A non-crossing partition of {1..n}, stored both as sorted blocks and as the
/// geodesic permutation whose cycles traverse each block in increasing order.
///
/// Blocks are sorted by their minimum element and each block is ascending, so
/// two partitions compare equal iff they are the same partition.
class NcPartition {
 public:
  /// The all-singletons partition 0_n (the identity permutation).
  static NcPartition zero(int n);
  /// The one-block partition 1_n (the full cycle (1,2,...,n)).
  static NcPartition one(int n);

  /// Builds from arbitrary blocks over {1..n}. Throws ParseError when the
  /// blocks do not partition {1..n} or cross each other.
  static NcPartition from_blocks(int n, std::vector<std::vector<int>> blocks);

  /// Builds from a permutation given as images perm[i-1] = perm(i). Throws
  /// ParseError unless the permutation is geodesic (non-crossing cycles that
  /// increase from their minimum).
  static NcPartition from_permutation(std::span<const int> perm);

  /// Builds from block labels: elements with equal label share a block.
  static NcPartition from_labels(std::span<const int> labels);

  int size() const noexcept { return n_; }
  const std::vector<std::vector<int>>& blocks() const noexcept {
    return blocks_;
  }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }

  /// Image of i (1-based) under the geodesic permutation.
  int apply(int i) const { return perm_[i - 1]; }
  /// Image of i under the inverse permutation.
  int apply_inverse(int i) const;
  /// perm()[i-1] is the image of i.
  std::span<const int> perm() const noexcept { return perm_; }

  /// Index into blocks() of the block containing i.
  int block_of(int i) const { return block_index_[i - 1]; }

  /// Refinement order: every block of *this lies inside a block of other.
  bool refines(const NcPartition& other) const;

  bool operator==(const NcPartition& other) const {
    return n_ == other.n_ && blocks_ == other.blocks_;
  }
  std::strong_ordering operator<=>(const NcPartition& other) const;

 private:
  NcPartition(int n, std::vector<std::vector<int>> blocks);

  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> perm_;
  std::vector<int> block_index_;
};

/// A non-crossing perfect matching on the 2n labels 1-,1+,...,n-,n+.
/// Label i- has index 2(i-1), label i+ has index 2(i-1)+1.
struct Pairing2n {
  int n = 0;
  std::vector<int> partner;

  static constexpr int minus(int i) { return 2 * (i - 1); }
  static constexpr int plus(int i) { return 2 * (i - 1) + 1; }

  /// Pairs as (smaller index, larger index), sorted.
  std::vector<std::pair<int, int>> pairs() const;
  bool is_non_crossing() const;
};

std::uint64_t catalan_number(int n);

/// All of NC(n) in lexicographic order of the canonical block sequence.
/// Throws SizeLimitError unless 1 <= n <= kMaxEnumerateN.
std::vector<NcPartition> enumerate_nc(int n);

/// Streams NC(n) in the same order as enumerate_nc without materializing it.
/// No upper guard on n beyond what fits the block representation (n <= 31).
void for_each_nc(int n, const std::function<void(const NcPartition&)>& visit);

/// Minimal number of transpositions: n minus the number of blocks.
inline int length(const NcPartition& p) { return p.size() - p.block_count(); }

/// Number of cycles of p o q^{-1} as permutations of {1..n}.
int perm_product_cycles(const NcPartition& p, const NcPartition& q);

/// Number of cycles of p^{-1} o q; equal to perm_product_cycles(p, q).
int inverse_product_cycles(const NcPartition& p, const NcPartition& q);

/// Kreweras complement p^{-1} o pi with pi = (1,2,...,n).
NcPartition kreweras(const NcPartition& p);
/// Inverse bijection of kreweras: p -> pi o p^{-1}.
NcPartition kreweras_inverse(const NcPartition& p);

NcPartition meet(const NcPartition& p, const NcPartition& q);
NcPartition join(const NcPartition& p, const NcPartition& q);

Pairing2n fatten(const NcPartition& p);

/// Parses cycle notation such as "(1,2,3)(4,5)"; omitted elements are fixed
/// points and "" is 0_n. Elements may be separated by commas or spaces.
NcPartition parse_cycles(std::string_view text, int n);

/// Canonical cycle notation with fixed points omitted; inverse of
/// parse_cycles on canonical text.
std::string format_cycles(const NcPartition& p);

}  // namespace meandric
