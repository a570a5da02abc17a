#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "meandric/nc_partition.hpp"

namespace meandric {

// Guards for the exhaustive NC(n)^2 loops.
inline constexpr int kMaxBruteMeanderN = 9;
inline constexpr int kMaxBruteSetN = 8;

struct StatTriple {
  int r = 0;
  int a = 0;
  int b = 0;
  auto operator<=>(const StatTriple&) const = default;
};

struct StatQuadruple {
  int n = 0;
  int r = 0;
  int a = 0;
  int b = 0;
  auto operator<=>(const StatQuadruple&) const = default;
  StatTriple triple() const { return {r, a, b}; }
};

/// The meandric system M(alpha, beta): alpha's fattened arcs above the line,
/// beta's below.
class MeandricSystem {
 public:
  MeandricSystem(NcPartition alpha, NcPartition beta);

  const NcPartition& alpha() const noexcept { return alpha_; }
  const NcPartition& beta() const noexcept { return beta_; }
  int size() const noexcept { return alpha_.size(); }
  int loops() const noexcept { return loops_; }

 private:
  NcPartition alpha_;
  NcPartition beta_;
  int loops_;
};

/// #(alpha o beta^{-1}).
int loop_count_algebraic(const NcPartition& alpha, const NcPartition& beta);

/// Closed curves of the drawn system, each as the cyclic sequence of
/// crossing labels (Pairing2n indexing) it visits, starting from its
/// smallest label and leaving through the upper arc.
std::vector<std::vector<int>> trace_loops(const NcPartition& alpha,
                                          const NcPartition& beta);

/// Loop count by walking the fattened arcs; independent of the algebraic route.
int loop_count_geometric(const NcPartition& alpha, const NcPartition& beta);

/// (n, |alpha^{-1} beta|, |alpha|, |beta|).
StatQuadruple stats_I(const NcPartition& alpha, const NcPartition& beta);

/// (n, |alpha^{-1} beta|, |alpha v beta| - |alpha|, |alpha v beta| - |beta|).
StatQuadruple stats_M(const NcPartition& alpha, const NcPartition& beta);

/// (n, |alpha^{-1} beta|, n-1-|alpha|, n-1-|beta|) when alpha v beta = 1_n.
std::optional<StatQuadruple> stats_K(const NcPartition& alpha,
                                     const NcPartition& beta);

/// meet = 0_n and join = 1_n.
bool is_irreducible(const NcPartition& alpha, const NcPartition& beta);

bool is_compatible(int n, int r, int a, int b);
/// Conditions (1)-(4) only, independent of n.
bool is_compatible(int r, int a, int b);

enum class SetKind { I, K, M };

/// Loop count -> number of meandric systems on 2n points, over all of NC(n)^2.
std::map<int, std::uint64_t> brute_meander_counts(int n, int workers = 1,
                                                  bool override_guard = false);

/// (r,a,b) -> |I_{n,r,a,b}|, |K_{n,r,a,b}| or |M_{n,r,a,b}| by exhaustion.
std::map<StatTriple, std::uint64_t> brute_set_counts(
    int n, SetKind kind, int workers = 1, bool override_guard = false);

}  // namespace meandric
