#include "meandric/nc_partition.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "meandric/errors.hpp"

namespace meandric {
namespace {

// Stack scan: a partition is non-crossing iff every revisited block is the
// innermost open one.
bool blocks_non_crossing(int n, const std::vector<int>& block_index,
                         const std::vector<std::vector<int>>& blocks) {
  std::vector<int> open;
  std::vector<int> seen(blocks.size(), 0);
  for (int e = 1; e <= n; ++e) {
    const int b = block_index[e - 1];
    const auto size = static_cast<int>(blocks[b].size());
    if (seen[b] > 0) {
      if (open.empty() || open.back() != b) return false;
    } else if (size > 1) {
      open.push_back(b);
    }
    ++seen[b];
    if (seen[b] == size && size > 1) open.pop_back();
  }
  return true;
}

void check_same_size(const NcPartition& p, const NcPartition& q) {
  if (p.size() != q.size()) {
    throw DomainError("partitions on different ground sets (n=" +
                      std::to_string(p.size()) + " vs n=" +
                      std::to_string(q.size()) + ")");
  }
}

int count_cycles(std::span<const int> perm) {
  const auto n = perm.size();
  std::vector<char> seen(n, 0);
  int cycles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(perm[j] - 1)) {
      seen[j] = 1;
    }
  }
  return cycles;
}

struct EnumState {
  int n;
  std::vector<int> label;
  std::vector<std::pair<int, int>> pending;
  int next_label = 0;
  const std::function<void(const NcPartition&)>* visit;
};

void place_block(EnumState& s);

void grow_block(EnumState& s, int last, int right,
                std::vector<std::pair<int, int>>& gaps) {
  // Stopping here is the lexicographically smallest continuation.
  const auto pending_size = s.pending.size();
  if (last < right) s.pending.emplace_back(last + 1, right);
  for (auto it = gaps.rbegin(); it != gaps.rend(); ++it) s.pending.push_back(*it);
  place_block(s);
  s.pending.resize(pending_size);

  const int current = s.label[last - 1];
  for (int e = last + 1; e <= right; ++e) {
    s.label[e - 1] = current;
    const bool gap = e > last + 1;
    if (gap) gaps.emplace_back(last + 1, e - 1);
    grow_block(s, e, right, gaps);
    if (gap) gaps.pop_back();
    s.label[e - 1] = -1;
  }
}

void place_block(EnumState& s) {
  if (s.pending.empty()) {
    (*s.visit)(NcPartition::from_labels(s.label));
    return;
  }
  const auto [left, right] = s.pending.back();
  s.pending.pop_back();
  s.label[left - 1] = s.next_label++;
  std::vector<std::pair<int, int>> gaps;
  grow_block(s, left, right, gaps);
  --s.next_label;
  s.label[left - 1] = -1;
  s.pending.emplace_back(left, right);
}

}  // namespace

NcPartition::NcPartition(int n, std::vector<std::vector<int>> blocks)
    : n_(n), blocks_(std::move(blocks)), perm_(n), block_index_(n) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& block = blocks_[b];
    for (std::size_t k = 0; k < block.size(); ++k) {
      perm_[block[k] - 1] = block[(k + 1) % block.size()];
      block_index_[block[k] - 1] = static_cast<int>(b);
    }
  }
}

NcPartition NcPartition::zero(int n) {
  std::vector<std::vector<int>> blocks(n);
  for (int i = 1; i <= n; ++i) blocks[i - 1] = {i};
  return NcPartition(n, std::move(blocks));
}

NcPartition NcPartition::one(int n) {
  std::vector<int> block(n);
  for (int i = 1; i <= n; ++i) block[i - 1] = i;
  return NcPartition(n, {std::move(block)});
}

NcPartition NcPartition::from_blocks(int n,
                                     std::vector<std::vector<int>> blocks) {
  if (n < 1) throw ParseError("ground set size must be positive");
  std::vector<int> owner(n, -1);
  for (auto& block : blocks) {
    if (block.empty()) throw ParseError("empty block");
    std::sort(block.begin(), block.end());
    for (int e : block) {
      if (e < 1 || e > n) {
        throw ParseError("element " + std::to_string(e) + " outside 1.." +
                         std::to_string(n));
      }
      if (owner[e - 1] != -1) {
        throw ParseError("element " + std::to_string(e) + " repeated");
      }
      owner[e - 1] = 0;
    }
  }
  for (int i = 1; i <= n; ++i) {
    if (owner[i - 1] == -1) blocks.push_back({i});
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  NcPartition p(n, std::move(blocks));
  if (!blocks_non_crossing(n, p.block_index_, p.blocks_)) {
    throw ParseError("blocks cross");
  }
  return p;
}

NcPartition NcPartition::from_permutation(std::span<const int> perm) {
  const auto n = static_cast<int>(perm.size());
  if (n < 1) throw ParseError("ground set size must be positive");
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> blocks;
  for (int start = 1; start <= n; ++start) {
    if (seen[start - 1]) continue;
    std::vector<int> cycle;
    int e = start;
    while (!seen[e - 1]) {
      seen[e - 1] = 1;
      cycle.push_back(e);
      e = perm[e - 1];
      if (e < 1 || e > n) throw ParseError("not a permutation");
    }
    if (e != start) throw ParseError("not a permutation");
    if (!std::is_sorted(cycle.begin(), cycle.end())) {
      throw ParseError("cycle is not increasing, permutation is not geodesic");
    }
    blocks.push_back(std::move(cycle));
  }
  NcPartition p(n, std::move(blocks));
  if (!blocks_non_crossing(n, p.block_index_, p.blocks_)) {
    throw ParseError("cycles cross, permutation is not geodesic");
  }
  return p;
}

NcPartition NcPartition::from_labels(std::span<const int> labels) {
  const auto n = static_cast<int>(labels.size());
  std::map<int, int> index;
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= n; ++i) {
    auto [it, inserted] =
        index.emplace(labels[i - 1], static_cast<int>(blocks.size()));
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(i);
  }
  NcPartition p(n, std::move(blocks));
  if (!blocks_non_crossing(n, p.block_index_, p.blocks_)) {
    throw ParseError("blocks cross");
  }
  return p;
}

int NcPartition::apply_inverse(int i) const {
  const auto& block = blocks_[block_index_[i - 1]];
  const auto it = std::find(block.begin(), block.end(), i);
  return it == block.begin() ? block.back() : *(it - 1);
}

bool NcPartition::refines(const NcPartition& other) const {
  check_same_size(*this, other);
  for (const auto& block : blocks_) {
    const int target = other.block_of(block.front());
    for (int e : block) {
      if (other.block_of(e) != target) return false;
    }
  }
  return true;
}

std::strong_ordering NcPartition::operator<=>(const NcPartition& other) const {
  if (auto c = n_ <=> other.n_; c != 0) return c;
  return blocks_ <=> other.blocks_;
}

std::vector<std::pair<int, int>> Pairing2n::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(partner.size()); ++i) {
    if (i < partner[i]) out.emplace_back(i, partner[i]);
  }
  return out;
}

bool Pairing2n::is_non_crossing() const {
  std::vector<int> open;
  for (int i = 0; i < static_cast<int>(partner.size()); ++i) {
    const int j = partner[i];
    if (j < 0 || j >= static_cast<int>(partner.size()) || partner[j] != i ||
        j == i) {
      return false;
    }
    if (j > i) {
      open.push_back(i);
    } else {
      if (open.empty() || open.back() != j) return false;
      open.pop_back();
    }
  }
  return open.empty();
}

std::uint64_t catalan_number(int n) {
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::vector<NcPartition> enumerate_nc(int n) {
  if (n < 1 || n > kMaxEnumerateN) {
    throw SizeLimitError("enumerate_nc: n=" + std::to_string(n) +
                         " outside 1.." + std::to_string(kMaxEnumerateN));
  }
  std::vector<NcPartition> out;
  out.reserve(catalan_number(n));
  for_each_nc(n, [&](const NcPartition& p) { out.push_back(p); });
  return out;
}

void for_each_nc(int n, const std::function<void(const NcPartition&)>& visit) {
  if (n < 1 || n > 31) {
    throw SizeLimitError("for_each_nc: n=" + std::to_string(n) +
                         " outside 1..31");
  }
  EnumState s{n, std::vector<int>(n, -1), {{1, n}}, 0, &visit};
  place_block(s);
}

int perm_product_cycles(const NcPartition& p, const NcPartition& q) {
  check_same_size(p, q);
  const int n = p.size();
  std::vector<int> product(n);
  for (int i = 1; i <= n; ++i) product[i - 1] = p.apply(q.apply_inverse(i));
  return count_cycles(product);
}

int inverse_product_cycles(const NcPartition& p, const NcPartition& q) {
  check_same_size(p, q);
  const int n = p.size();
  std::vector<int> product(n);
  for (int i = 1; i <= n; ++i) product[i - 1] = p.apply_inverse(q.apply(i));
  return count_cycles(product);
}

NcPartition kreweras(const NcPartition& p) {
  const int n = p.size();
  std::vector<int> image(n);
  for (int i = 1; i <= n; ++i) image[i - 1] = p.apply_inverse(i % n + 1);
  return NcPartition::from_permutation(image);
}

NcPartition kreweras_inverse(const NcPartition& p) {
  const int n = p.size();
  std::vector<int> image(n);
  for (int i = 1; i <= n; ++i) image[i - 1] = p.apply_inverse(i) % n + 1;
  return NcPartition::from_permutation(image);
}

NcPartition meet(const NcPartition& p, const NcPartition& q) {
  check_same_size(p, q);
  const int n = p.size();
  std::vector<int> labels(n);
  for (int i = 1; i <= n; ++i) {
    labels[i - 1] = p.block_of(i) * n + q.block_of(i);
  }
  return NcPartition::from_labels(labels);
}

NcPartition join(const NcPartition& p, const NcPartition& q) {
  check_same_size(p, q);
  return kreweras_inverse(meet(kreweras(p), kreweras(q)));
}

Pairing2n fatten(const NcPartition& p) {
  Pairing2n out{p.size(), std::vector<int>(2 * p.size())};
  for (int i = 1; i <= p.size(); ++i) {
    const int j = p.apply(i);
    out.partner[Pairing2n::plus(i)] = Pairing2n::minus(j);
    out.partner[Pairing2n::minus(j)] = Pairing2n::plus(i);
  }
  return out;
}

NcPartition parse_cycles(std::string_view text, int n) {
  if (n < 1) throw ParseError("ground set size must be positive");
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  };
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("cycle notation at offset " + std::to_string(pos) +
                      ": " + why);
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw fail("expected '('");
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_space();
      if (pos < text.size() && text[pos] == ')') break;
      if (!cycle.empty()) {
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          skip_space();
        }
      }
      if (pos >= text.size() ||
          !std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw fail("expected an element");
      }
      long value = 0;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        if (value > n) throw fail("element exceeds n=" + std::to_string(n));
        ++pos;
      }
      if (value < 1) throw fail("element must be at least 1");
      cycle.push_back(static_cast<int>(value));
    }
    ++pos;
    if (cycle.empty()) throw fail("empty cycle");
    // Rotate so the cycle starts at its minimum; it must then increase.
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()),
                cycle.end());
    if (!std::is_sorted(cycle.begin(), cycle.end())) {
      throw ParseError("cycle is not increasing, not a geodesic permutation");
    }
    cycles.push_back(std::move(cycle));
    skip_space();
  }
  return NcPartition::from_blocks(n, std::move(cycles));
}

std::string format_cycles(const NcPartition& p) {
  std::ostringstream out;
  for (const auto& block : p.blocks()) {
    if (block.size() < 2) continue;
    out << '(';
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (k > 0) out << ',';
      out << block[k];
    }
    out << ')';
  }
  return out.str();
}

}  // namespace meandric
