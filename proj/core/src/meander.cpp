#include "meandric/meander.hpp"

#include <algorithm>
#include <cstdlib>

#include "meandric/errors.hpp"
#include "parallel.hpp"

namespace meandric {
namespace {

void check_same_size(const NcPartition& alpha, const NcPartition& beta) {
  if (alpha.size() != beta.size()) {
    throw DomainError("alpha and beta live on different ground sets");
  }
}

int distance(const NcPartition& alpha, const NcPartition& beta) {
  return alpha.size() - inverse_product_cycles(alpha, beta);
}

// Precomputed NC(n) with Kreweras complements, shared by the brute loops.
struct Lattice {
  std::vector<NcPartition> elements;
  std::vector<NcPartition> complements;

  explicit Lattice(int n) : elements(enumerate_nc(n)) {
    complements.reserve(elements.size());
    for (const auto& p : elements) complements.push_back(kreweras(p));
  }
};

}  // namespace

MeandricSystem::MeandricSystem(NcPartition alpha, NcPartition beta)
    : alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      loops_(loop_count_algebraic(alpha_, beta_)) {}

int loop_count_algebraic(const NcPartition& alpha, const NcPartition& beta) {
  check_same_size(alpha, beta);
  return perm_product_cycles(alpha, beta);
}

std::vector<std::vector<int>> trace_loops(const NcPartition& alpha,
                                          const NcPartition& beta) {
  check_same_size(alpha, beta);
  const auto upper = fatten(alpha).partner;
  const auto lower = fatten(beta).partner;
  std::vector<char> visited(upper.size(), 0);
  std::vector<std::vector<int>> loops;
  for (int start = 0; start < static_cast<int>(upper.size()); ++start) {
    if (visited[start]) continue;
    std::vector<int> loop;
    int x = start;
    do {
      visited[x] = 1;
      loop.push_back(x);
      const int y = upper[x];
      visited[y] = 1;
      loop.push_back(y);
      x = lower[y];
    } while (x != start);
    loops.push_back(std::move(loop));
  }
  return loops;
}

int loop_count_geometric(const NcPartition& alpha, const NcPartition& beta) {
  return static_cast<int>(trace_loops(alpha, beta).size());
}

StatQuadruple stats_I(const NcPartition& alpha, const NcPartition& beta) {
  check_same_size(alpha, beta);
  return {alpha.size(), distance(alpha, beta), length(alpha), length(beta)};
}

StatQuadruple stats_M(const NcPartition& alpha, const NcPartition& beta) {
  check_same_size(alpha, beta);
  const int top = length(join(alpha, beta));
  return {alpha.size(), distance(alpha, beta), top - length(alpha),
          top - length(beta)};
}

std::optional<StatQuadruple> stats_K(const NcPartition& alpha,
                                     const NcPartition& beta) {
  check_same_size(alpha, beta);
  const int n = alpha.size();
  if (join(alpha, beta).block_count() != 1) return std::nullopt;
  return StatQuadruple{n, distance(alpha, beta), n - 1 - length(alpha),
                       n - 1 - length(beta)};
}

bool is_irreducible(const NcPartition& alpha, const NcPartition& beta) {
  check_same_size(alpha, beta);
  const int n = alpha.size();
  if (meet(alpha, beta).block_count() != n) return false;
  return meet(kreweras(alpha), kreweras(beta)).block_count() == n;
}

bool is_compatible(int r, int a, int b) {
  if (r < 0 || a < 0 || b < 0) return false;
  const int cap = std::max(2 * r - 2, 1);
  if (a > cap || b > cap) return false;
  if (std::abs(a - b) > r || r > a + b) return false;
  if ((a + b - r) % 2 != 0) return false;
  if (r == std::abs(a - b) && (std::min(a, b) != 0 || std::max(a, b) != r)) {
    return false;
  }
  return true;
}

bool is_compatible(int n, int r, int a, int b) {
  if (!is_compatible(r, a, b)) return false;
  return r + 1 <= n && n <= 2 * r + (n == 1 ? 1 : 0);
}

std::map<int, std::uint64_t> brute_meander_counts(int n, int workers,
                                                  bool override_guard) {
  if (n < 1 || (n > kMaxBruteMeanderN && !override_guard)) {
    throw SizeLimitError("brute_meander_counts: n=" + std::to_string(n) +
                         " exceeds guard " + std::to_string(kMaxBruteMeanderN));
  }
  const auto nc = enumerate_nc(n);
  std::vector<std::vector<std::uint64_t>> tally(
      detail::resolve_workers(workers), std::vector<std::uint64_t>(n + 1, 0));
  detail::parallel_for(nc.size(), workers, [&](int w, std::size_t i) {
    for (const auto& beta : nc) ++tally[w][loop_count_algebraic(nc[i], beta)];
  });
  std::map<int, std::uint64_t> out;
  for (int k = 1; k <= n; ++k) {
    std::uint64_t total = 0;
    for (const auto& t : tally) total += t[k];
    if (total != 0) out[k] = total;
  }
  return out;
}

std::map<StatTriple, std::uint64_t> brute_set_counts(int n, SetKind kind,
                                                     int workers,
                                                     bool override_guard) {
  if (n < 1 || (n > kMaxBruteSetN && !override_guard)) {
    throw SizeLimitError("brute_set_counts: n=" + std::to_string(n) +
                         " exceeds guard " + std::to_string(kMaxBruteSetN));
  }
  const Lattice lattice(n);
  const auto& nc = lattice.elements;
  std::vector<std::map<StatTriple, std::uint64_t>> tally(
      detail::resolve_workers(workers));
  detail::parallel_for(nc.size(), workers, [&](int w, std::size_t i) {
    const auto& alpha = nc[i];
    for (std::size_t j = 0; j < nc.size(); ++j) {
      const auto& beta = nc[j];
      const int r = distance(alpha, beta);
      // join via the complements' meet, reused by all three kinds
      const auto kr_meet = meet(lattice.complements[i], lattice.complements[j]);
      const bool join_is_top = kr_meet.block_count() == n;
      switch (kind) {
        case SetKind::I:
          if (join_is_top && meet(alpha, beta).block_count() == n) {
            ++tally[w][{r, length(alpha), length(beta)}];
          }
          break;
        case SetKind::K:
          if (join_is_top) {
            ++tally[w][{r, n - 1 - length(alpha), n - 1 - length(beta)}];
          }
          break;
        case SetKind::M: {
          const int top = length(kreweras_inverse(kr_meet));
          ++tally[w][{r, top - length(alpha), top - length(beta)}];
          break;
        }
      }
    }
  });
  std::map<StatTriple, std::uint64_t> out;
  for (const auto& t : tally) {
    for (const auto& [key, count] : t) out[key] += count;
  }
  return out;
}

}  // namespace meandric
