#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meandric/meander.hpp"
#include "meandric/nc_partition.hpp"

namespace meandric {

inline constexpr int kMaxIrreducibleN = 12;
inline constexpr int kMaxTableR = 6;
// Hard limit of the bit-packed search kernel.
inline constexpr int kKernelMaxN = 16;

// Bumped whenever cached counts could change meaning.
inline constexpr int kCacheFormatVersion = 1;

struct IrreducibleOptions {
  /// Only systems with r <= r_limit are reported; negative means no limit.
  /// A limit lets the search discard branches that can no longer reach
  /// n - r_limit loops.
  int r_limit = -1;
  int workers = 1;
  bool override_guard = false;
};

struct IrreduciblePair {
  NcPartition alpha;
  NcPartition beta;
  StatQuadruple stats;
};

using IrreducibleCounts = std::map<StatQuadruple, std::uint64_t>;

/// Every irreducible pair on n points (with r <= r_limit), lexicographic in
/// (alpha, beta). beta is grown block by block and a block may never hold two
/// elements of one alpha-block, so meet = 0_n holds by construction.
std::vector<IrreduciblePair> enumerate_irreducible(
    int n, const IrreducibleOptions& options = {});

/// Same search, counts only.
IrreducibleCounts count_irreducible(int n,
                                    const IrreducibleOptions& options = {});

struct TableOptions {
  /// Largest n enumerated; defaults to 2 * max_r (or 1 when max_r = 0).
  std::optional<int> max_n;
  std::optional<std::filesystem::path> cache_dir;
  int workers = 1;
  bool override_guard = false;
};

struct TableProvenance {
  int max_r = 0;
  int max_n = 0;
  int computed_sizes = 0;  // n values enumerated in this run
  int cached_sizes = 0;    // n values loaded from cache files
  std::string timestamp;   // UTC, ISO 8601
};

/// |I_{n,r,a,b}| for n <= max_n and r <= max_r. Absent keys are zero.
class IrreducibleTable {
 public:
  IrreducibleTable() = default;
  IrreducibleTable(IrreducibleCounts entries, TableProvenance provenance)
      : entries_(std::move(entries)), provenance_(std::move(provenance)) {}

  std::uint64_t count(int n, int r, int a, int b) const;
  const IrreducibleCounts& entries() const noexcept { return entries_; }
  int max_r() const noexcept { return provenance_.max_r; }
  int max_n() const noexcept { return provenance_.max_n; }
  const TableProvenance& provenance() const noexcept { return provenance_; }

  /// Total number of irreducible systems on n points (within max_r).
  std::uint64_t total(int n) const;

 private:
  IrreducibleCounts entries_;
  TableProvenance provenance_;
};

/// Enumerates (or loads from cache) every n in 1..max_n, truncated to
/// r <= max_r. Throws SizeLimitError past kMaxTableR without override.
IrreducibleTable build_irreducible_table(int max_r,
                                         const TableOptions& options = {});

/// Cache file holding counts for one n with r <= r_limit.
std::filesystem::path cache_file_path(const std::filesystem::path& dir, int n,
                                      int r_limit);

void write_cache_file(const std::filesystem::path& path, int n,
                      const IrreducibleCounts& counts);

/// Throws CacheIntegrityError on any malformed or inconsistent content.
IrreducibleCounts read_cache_file(const std::filesystem::path& path, int n);

/// Lines "n,r,a,b,count", sorted, LF-terminated (the cache body).
void write_counts_csv(std::ostream& out, const IrreducibleCounts& counts);

/// Lines "n;<alpha cycles>;<beta cycles>".
void write_pairs(std::ostream& out, const std::vector<IrreduciblePair>& pairs);

}  // namespace meandric
