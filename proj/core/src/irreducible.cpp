#include "meandric/irreducible.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "meandric/errors.hpp"
#include "parallel.hpp"

namespace meandric {
namespace {

using Byte = std::uint8_t;
using Row = std::array<Byte, kKernelMaxN>;

// Per-alpha data the kernel touches on every node.
struct AlphaInfo {
  Row block{};     // block index of each element
  Row inverse{};   // alpha^{-1}, 0-based
  Row kr_block{};  // block index in the Kreweras complement
  int length = 0;
};

AlphaInfo make_alpha_info(const NcPartition& alpha) {
  AlphaInfo info;
  const auto complement = kreweras(alpha);
  for (int i = 1; i <= alpha.size(); ++i) {
    info.block[i - 1] = static_cast<Byte>(alpha.block_of(i));
    info.inverse[i - 1] = static_cast<Byte>(alpha.apply_inverse(i) - 1);
    info.kr_block[i - 1] = static_cast<Byte>(complement.block_of(i));
  }
  info.length = length(alpha);
  return info;
}

// State of a partially built beta. sigma = alpha^{-1} beta is assembled as
// chains of known images; a chain that closes is one loop of the system.
struct SearchState {
  Row next{};     // beta, 0-based; valid once the successor is placed
  Row head_of{};  // for a chain tail: its head
  Row tail_of{};  // for a chain head: its tail
  Row chain_len{};
  std::array<Byte, 2 * kKernelMaxN> pending{};  // interval stack (l, r)
  Byte pending_count = 0;
  Byte closed = 0;
  Byte closed_elements = 0;
  Byte blocks = 0;
};

struct Gaps {
  std::array<Byte, 2 * kKernelMaxN> bounds{};
  Byte count = 0;
};

struct Leaf {
  const SearchState& state;
  int loops;
  int beta_length;
};

template <class OnLeaf>
class BetaSearch {
 public:
  BetaSearch(int n, int r_limit, const AlphaInfo& alpha, OnLeaf& on_leaf)
      : n_(n), needed_loops_(n - r_limit), alpha_(alpha), on_leaf_(on_leaf) {}

  void run() {
    SearchState s;
    for (int i = 0; i < n_; ++i) {
      s.head_of[i] = s.tail_of[i] = static_cast<Byte>(i);
      s.chain_len[i] = 1;
    }
    s.pending[0] = 0;
    s.pending[1] = static_cast<Byte>(n_ - 1);
    s.pending_count = 1;
    place(s);
  }

 private:
  // Records sigma(x) = y. Returns false when the branch cannot produce an
  // irreducible system with at least needed_loops_ loops.
  bool link(SearchState& s, int x, int y) const {
    const int head = s.head_of[x];
    if (y != head) {
      const int tail = s.tail_of[y];
      s.tail_of[head] = static_cast<Byte>(tail);
      s.head_of[tail] = static_cast<Byte>(head);
      s.chain_len[head] = static_cast<Byte>(s.chain_len[head] + s.chain_len[y]);
      return true;
    }
    const int len = s.chain_len[head];
    // A loop through only two crossings rules out irreducibility (n >= 2).
    if (len == 1 && n_ > 1) return false;
    ++s.closed;
    s.closed_elements = static_cast<Byte>(s.closed_elements + len);
    // Every remaining loop needs at least two elements.
    return s.closed + (n_ - s.closed_elements) / 2 >= needed_loops_;
  }

  void place(const SearchState& s) {
    if (s.pending_count == 0) {
      finish(s);
      return;
    }
    SearchState t = s;
    --t.pending_count;
    const int left = t.pending[2 * t.pending_count];
    const int right = t.pending[2 * t.pending_count + 1];
    ++t.blocks;
    grow(t, left, left, right, 1u << alpha_.block[left], Gaps{});
  }

  void grow(const SearchState& s, int first, int last, int right,
            std::uint32_t used, const Gaps& gaps) {
    {
      // Close the block here: beta(last) = first.
      SearchState t = s;
      t.next[last] = static_cast<Byte>(first);
      if (link(t, last, alpha_.inverse[first])) {
        if (last < right) push(t, last + 1, right);
        for (int g = gaps.count; g-- > 0;) {
          push(t, gaps.bounds[2 * g], gaps.bounds[2 * g + 1]);
        }
        place(t);
      }
    }
    for (int e = last + 1; e <= right; ++e) {
      const std::uint32_t bit = 1u << alpha_.block[e];
      if (used & bit) continue;
      SearchState t = s;
      t.next[last] = static_cast<Byte>(e);
      if (!link(t, last, alpha_.inverse[e])) continue;
      if (e > last + 1) {
        Gaps extended = gaps;
        extended.bounds[2 * extended.count] = static_cast<Byte>(last + 1);
        extended.bounds[2 * extended.count + 1] = static_cast<Byte>(e - 1);
        ++extended.count;
        grow(t, first, e, right, used | bit, extended);
      } else {
        grow(t, first, e, right, used | bit, gaps);
      }
    }
  }

  static void push(SearchState& t, int left, int right) {
    t.pending[2 * t.pending_count] = static_cast<Byte>(left);
    t.pending[2 * t.pending_count + 1] = static_cast<Byte>(right);
    ++t.pending_count;
  }

  void finish(const SearchState& s) {
    if (s.closed < needed_loops_) return;
    // join = 1_n iff the Kreweras complements meet at 0_n.
    Row inverse{};
    for (int i = 0; i < n_; ++i) inverse[s.next[i]] = static_cast<Byte>(i);
    Row kr_label{};
    std::uint32_t assigned = 0;
    Byte labels = 0;
    for (int start = 0; start < n_; ++start) {
      if (assigned & (1u << start)) continue;
      for (int i = start; !(assigned & (1u << i));) {
        assigned |= 1u << i;
        kr_label[i] = labels;
        i = inverse[(i + 1) % n_];
      }
      ++labels;
    }
    std::array<std::uint32_t, kKernelMaxN> seen{};
    for (int i = 0; i < n_; ++i) {
      const std::uint32_t bit = 1u << kr_label[i];
      if (seen[alpha_.kr_block[i]] & bit) return;
      seen[alpha_.kr_block[i]] |= bit;
    }
    on_leaf_(Leaf{s, s.closed, n_ - s.blocks});
  }

  int n_;
  int needed_loops_;
  const AlphaInfo& alpha_;
  OnLeaf& on_leaf_;
};

int resolve_limit(int n, const IrreducibleOptions& options) {
  if (n < 1 || n > kKernelMaxN) {
    throw SizeLimitError("irreducible enumeration: n=" + std::to_string(n) +
                         " outside 1.." + std::to_string(kKernelMaxN));
  }
  if (n > kMaxIrreducibleN && !options.override_guard) {
    throw SizeLimitError("irreducible enumeration: n=" + std::to_string(n) +
                         " exceeds guard " + std::to_string(kMaxIrreducibleN) +
                         " (override required)");
  }
  if (options.r_limit < 0 || options.r_limit > n - 1) return n - 1;
  return options.r_limit;
}

NcPartition beta_from_state(int n, const SearchState& s) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = s.next[i] + 1;
  return NcPartition::from_permutation(perm);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::string header_line(int n) {
  return "# meander-irreducible v" + std::to_string(kCacheFormatVersion) +
         " n=" + std::to_string(n);
}

}  // namespace

std::vector<IrreduciblePair> enumerate_irreducible(
    int n, const IrreducibleOptions& options) {
  const int r_limit = resolve_limit(n, options);
  const auto alphas = enumerate_nc(n);
  std::vector<std::vector<IrreduciblePair>> per_alpha(alphas.size());
  detail::parallel_for(alphas.size(), options.workers, [&](int, std::size_t i) {
    const auto info = make_alpha_info(alphas[i]);
    auto on_leaf = [&](const Leaf& leaf) {
      per_alpha[i].push_back(
          {alphas[i], beta_from_state(n, leaf.state),
           {n, n - leaf.loops, info.length, leaf.beta_length}});
    };
    BetaSearch search(n, r_limit, info, on_leaf);
    search.run();
  });
  std::vector<IrreduciblePair> out;
  for (auto& chunk : per_alpha) {
    for (auto& pair : chunk) out.push_back(std::move(pair));
  }
  return out;
}

IrreducibleCounts count_irreducible(int n, const IrreducibleOptions& options) {
  const int r_limit = resolve_limit(n, options);
  const auto alphas = enumerate_nc(n);
  using Tally = std::array<std::uint64_t, kKernelMaxN * kKernelMaxN * kKernelMaxN>;
  std::vector<Tally> tallies(detail::resolve_workers(options.workers), Tally{});
  detail::parallel_for(alphas.size(), options.workers, [&](int w, std::size_t i) {
    const auto info = make_alpha_info(alphas[i]);
    auto& tally = tallies[w];
    auto on_leaf = [&](const Leaf& leaf) {
      const int r = n - leaf.loops;
      ++tally[(r * kKernelMaxN + info.length) * kKernelMaxN + leaf.beta_length];
    };
    BetaSearch search(n, r_limit, info, on_leaf);
    search.run();
  });
  IrreducibleCounts out;
  for (int r = 0; r < kKernelMaxN; ++r) {
    for (int a = 0; a < kKernelMaxN; ++a) {
      for (int b = 0; b < kKernelMaxN; ++b) {
        std::uint64_t total = 0;
        for (const auto& t : tallies) {
          total += t[(r * kKernelMaxN + a) * kKernelMaxN + b];
        }
        if (total != 0) out[{n, r, a, b}] = total;
      }
    }
  }
  return out;
}

std::uint64_t IrreducibleTable::count(int n, int r, int a, int b) const {
  const auto it = entries_.find({n, r, a, b});
  return it == entries_.end() ? 0 : it->second;
}

std::uint64_t IrreducibleTable::total(int n) const {
  std::uint64_t sum = 0;
  for (auto it = entries_.lower_bound({n, 0, 0, 0});
       it != entries_.end() && it->first.n == n; ++it) {
    sum += it->second;
  }
  return sum;
}

IrreducibleTable build_irreducible_table(int max_r,
                                         const TableOptions& options) {
  if (max_r < 0) throw DomainError("max_r must be non-negative");
  if (max_r > kMaxTableR && !options.override_guard) {
    throw SizeLimitError("irreducible table: max_r=" + std::to_string(max_r) +
                         " exceeds guard " + std::to_string(kMaxTableR) +
                         " (override required)");
  }
  TableProvenance provenance;
  provenance.max_r = max_r;
  provenance.max_n = options.max_n.value_or(std::max(2 * max_r, 1));
  provenance.timestamp = utc_timestamp();
  if (provenance.max_n < 1) throw DomainError("max_n must be positive");

  IrreducibleCounts entries;
  for (int n = 1; n <= provenance.max_n; ++n) {
    const int r_limit = std::min(max_r, n - 1);
    std::optional<IrreducibleCounts> counts;
    if (options.cache_dir) {
      // An exact match first, then a complete (unlimited) file for this n.
      for (int limit : {r_limit, n - 1}) {
        const auto path = cache_file_path(*options.cache_dir, n, limit);
        if (std::filesystem::exists(path)) {
          counts = read_cache_file(path, n);
          ++provenance.cached_sizes;
          break;
        }
      }
    }
    if (!counts) {
      counts = count_irreducible(
          n, {r_limit, options.workers, options.override_guard});
      ++provenance.computed_sizes;
      if (options.cache_dir) {
        std::filesystem::create_directories(*options.cache_dir);
        write_cache_file(cache_file_path(*options.cache_dir, n, r_limit), n,
                         *counts);
      }
    }
    for (const auto& [key, count] : *counts) {
      if (key.r <= max_r) entries[key] = count;
    }
  }
  return IrreducibleTable(std::move(entries), std::move(provenance));
}

std::filesystem::path cache_file_path(const std::filesystem::path& dir, int n,
                                      int r_limit) {
  return dir / ("irreducible-v" + std::to_string(kCacheFormatVersion) + "-n" +
                std::to_string(n) + "-r" + std::to_string(r_limit) + ".csv");
}

void write_counts_csv(std::ostream& out, const IrreducibleCounts& counts) {
  for (const auto& [key, count] : counts) {
    out << key.n << ',' << key.r << ',' << key.a << ',' << key.b << ','
        << count << '\n';
  }
}

void write_cache_file(const std::filesystem::path& path, int n,
                      const IrreducibleCounts& counts) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << header_line(n) << '\n';
    write_counts_csv(out, counts);
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

IrreducibleCounts read_cache_file(const std::filesystem::path& path, int n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheIntegrityError(path.string(), "cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  auto corrupt = [&](const std::string& why, int line) {
    return CacheIntegrityError(path.string(),
                               "line " + std::to_string(line) + ": " + why);
  };
  if (text.empty() || text.back() != '\n') throw corrupt("missing final LF", 0);

  IrreducibleCounts counts;
  std::size_t pos = 0;
  int line_no = 0;
  std::optional<StatQuadruple> previous;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != header_line(n)) throw corrupt("bad header", line_no);
      continue;
    }
    std::array<std::uint64_t, 5> fields{};
    std::size_t field = 0, i = 0;
    while (field < fields.size()) {
      if (i >= line.size() || line[i] < '0' || line[i] > '9') {
        throw corrupt("expected a decimal field", line_no);
      }
      std::uint64_t value = 0;
      while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
        if (value > (UINT64_MAX - 9) / 10) throw corrupt("overflow", line_no);
        value = value * 10 + static_cast<std::uint64_t>(line[i] - '0');
        ++i;
      }
      fields[field++] = value;
      if (field < fields.size()) {
        if (i >= line.size() || line[i] != ',') {
          throw corrupt("expected ','", line_no);
        }
        ++i;
      }
    }
    if (i != line.size()) throw corrupt("trailing characters", line_no);
    if (fields[0] != static_cast<std::uint64_t>(n)) {
      throw corrupt("entry for a different n", line_no);
    }
    if (fields[1] >= kKernelMaxN || fields[2] >= kKernelMaxN ||
        fields[3] >= kKernelMaxN) {
      throw corrupt("statistic out of range", line_no);
    }
    const StatQuadruple key{n, static_cast<int>(fields[1]),
                            static_cast<int>(fields[2]),
                            static_cast<int>(fields[3])};
    if (!is_compatible(key.n, key.r, key.a, key.b)) {
      throw corrupt("incompatible quadruple", line_no);
    }
    if (fields[4] == 0) throw corrupt("zero count stored", line_no);
    if (previous && !(*previous < key)) throw corrupt("unsorted", line_no);
    previous = key;
    counts[key] = fields[4];
  }
  if (line_no == 0) throw corrupt("empty file", 0);
  return counts;
}

void write_pairs(std::ostream& out, const std::vector<IrreduciblePair>& pairs) {
  for (const auto& pair : pairs) {
    out << pair.stats.n << ';' << format_cycles(pair.alpha) << ';'
        << format_cycles(pair.beta) << '\n';
  }
}

}  // namespace meandric
