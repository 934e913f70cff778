#include "prlab/lattice.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "prlab/errors.hpp"

namespace prlab {
namespace {
bool bell_fault = false;
bool stirling_fault = false;
}  // namespace

void set_bell_fault_for_tests(bool on) { bell_fault = on; }
void set_stirling_fault_for_tests(bool on) { stirling_fault = on; }

Int bell(int k) {
  if (k < 0) throw invalid_config("bell: negative argument");
  // Bell triangle: row r starts with the last entry of row r-1.
  std::vector<Int> row{1};
  for (int r = 1; r <= k; ++r) {
    std::vector<Int> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (const Int& v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  if (bell_fault && k >= 4) return row.front() + 1;
  return row.front();
}

Int stirling2(int n, int r) {
  if (n < 0 || r < 0) throw invalid_config("stirling2: negative argument");
  if (r > n) return 0;
  if (n == 0) return 1;
  if (r == 0) return 0;
  // S(n, r) = S(n-1, r-1) + r * S(n-1, r), rolling one row.
  std::vector<Int> row(static_cast<std::size_t>(r) + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, r); j >= 1; --j)
      row[static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(j) - 1] + j * row[static_cast<std::size_t>(j)];
    row[0] = 0;
  }
  if (stirling_fault && n >= 4 && r >= 2 && r < n) return row[static_cast<std::size_t>(r)] + 1;
  return row[static_cast<std::size_t>(r)];
}

namespace {

constexpr std::uint64_t table_ceiling = 5000;  // Bell(8) = 4140 fits, Bell(9) does not

// a refines b iff the map (a-label at i) -> (b-label at i) is a function.
bool refines_rgs(const std::uint8_t* a, const std::uint8_t* b, int k) {
  std::uint8_t to[64];
  std::memset(to, 0xff, sizeof to);
  for (int i = 0; i < k; ++i) {
    std::uint8_t& t = to[a[i]];
    if (t == 0xff)
      t = b[i];
    else if (t != b[i])
      return false;
  }
  return true;
}

// mu(a, b) for a <= b: product over b-blocks of (-1)^(l-1) (l-1)! where l is
// the number of distinct a-labels inside the block. int64 is exact for
// k <= 13 since |mu| <= (k-1)!.
std::int64_t mobius_rgs(const std::uint8_t* a, const std::uint8_t* b, int k) {
  std::uint8_t seen[64];
  int split[64];
  std::memset(seen, 0xff, sizeof seen);
  std::memset(split, 0, sizeof split);
  for (int i = 0; i < k; ++i) {
    if (seen[a[i]] == 0xff) {
      seen[a[i]] = 1;
      ++split[b[i]];
    }
  }
  std::int64_t mu = 1;
  for (int bl = 0; bl < k && split[bl] > 0; ++bl) {
    for (int j = 2; j < split[bl]; ++j) mu *= j;  // (l-1)! without the sign
    if (split[bl] % 2 == 0) mu = -mu;
  }
  return mu;
}

}  // namespace

PartitionLattice::PartitionLattice(int k, Tables policy, std::uint64_t enumeration_ceiling)
    : k_(k) {
  if (k < 1 || k > 13)
    throw invalid_config("partition lattice: k must be in [1, 13], got " + std::to_string(k));
  Int total = bell(k);
  if (total > enumeration_ceiling)
    throw invalid_config("partition lattice: Bell(" + std::to_string(k) + ") = " +
                         to_string(total) + " exceeds the enumeration ceiling " +
                         std::to_string(enumeration_ceiling));
  count_ = static_cast<std::size_t>(total.convert_to<std::uint64_t>());

  // Enumerate growth strings in lexicographic order.
  std::vector<std::uint8_t> lex_flat;
  lex_flat.reserve(count_ * static_cast<std::size_t>(k_));
  std::vector<std::uint8_t> a(static_cast<std::size_t>(k_), 0);
  for (;;) {
    lex_flat.insert(lex_flat.end(), a.begin(), a.end());
    int i = k_ - 1;
    for (; i >= 1; --i) {
      std::uint8_t mx = 0;
      for (int j = 0; j < i; ++j) mx = std::max(mx, a[static_cast<std::size_t>(j)]);
      if (a[static_cast<std::size_t>(i)] <= mx) break;
    }
    if (i < 1) break;
    ++a[static_cast<std::size_t>(i)];
    std::fill(a.begin() + i + 1, a.end(), std::uint8_t{0});
  }
  if (lex_flat.size() != count_ * static_cast<std::size_t>(k_))
    throw check_failure("partition lattice: enumeration count disagrees with Bell(" +
                        std::to_string(k) + ")");

  // Stable counting sort by rank keeps lexicographic order inside each rank.
  std::vector<std::uint8_t> lex_rank(count_);
  std::vector<std::size_t> per_rank(static_cast<std::size_t>(k_), 0);
  for (std::size_t idx = 0; idx < count_; ++idx) {
    std::uint8_t mx = 0;
    const std::uint8_t* s = lex_flat.data() + idx * static_cast<std::size_t>(k_);
    for (int j = 0; j < k_; ++j) mx = std::max(mx, s[j]);
    std::uint8_t r = static_cast<std::uint8_t>(k_ - 1 - mx);
    lex_rank[idx] = r;
    ++per_rank[r];
  }
  rank_offset_.assign(static_cast<std::size_t>(k_) + 1, 0);
  for (int r = 0; r < k_; ++r) rank_offset_[static_cast<std::size_t>(r) + 1] = rank_offset_[static_cast<std::size_t>(r)] + per_rank[static_cast<std::size_t>(r)];
  flat_.resize(lex_flat.size());
  rank_.resize(count_);
  std::vector<std::size_t> cursor(rank_offset_.begin(), rank_offset_.end() - 1);
  for (std::size_t idx = 0; idx < count_; ++idx) {
    std::size_t pos = cursor[lex_rank[idx]]++;
    std::memcpy(flat_.data() + pos * static_cast<std::size_t>(k_),
                lex_flat.data() + idx * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_));
    rank_[pos] = lex_rank[idx];
  }

  bool want_tables = policy == Tables::full || (policy == Tables::automatic && count_ <= table_ceiling);
  if (policy == Tables::full && count_ > table_ceiling)
    throw invalid_config("partition lattice: full tables limited to " +
                         std::to_string(table_ceiling) + " elements, Bell(" + std::to_string(k) +
                         ") = " + std::to_string(count_));
  if (want_tables) build_tables();
}

void PartitionLattice::build_tables() {
  leq_bits_.assign((count_ * count_ + 63) / 64, 0);
  down_.assign(count_, {});
  for (std::size_t b = 0; b < count_; ++b) {
    const std::uint8_t* pb = flat_.data() + b * static_cast<std::size_t>(k_);
    auto& lst = down_[b];
    // a <= b forces rank(a) <= rank(b), so the scan stops at b's rank segment.
    for (std::size_t a = 0; a < rank_end(rank_[b]); ++a) {
      const std::uint8_t* pa = flat_.data() + a * static_cast<std::size_t>(k_);
      if (!refines_rgs(pa, pb, k_)) continue;
      std::size_t idx = a * count_ + b;
      leq_bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
      lst.push_back({static_cast<std::uint32_t>(a), mobius_rgs(pa, pb, k_)});
    }
  }
  has_tables_ = true;
}

SetPartition PartitionLattice::partition(std::size_t i) const {
  auto v = rgs_view(i);
  return SetPartition(std::vector<std::uint8_t>(v.begin(), v.end()));
}

std::span<const std::uint8_t> PartitionLattice::rgs_view(std::size_t i) const {
  if (i >= count_) throw invalid_config("partition lattice: index out of range");
  return {flat_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
}

std::size_t PartitionLattice::index_of(const SetPartition& p) const {
  if (p.k() != k_) throw invalid_config("partition lattice: element size mismatch");
  int r = p.rank();
  std::size_t lo = rank_begin(r), hi = rank_end(r);
  const std::uint8_t* target = p.rgs().data();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    const std::uint8_t* s = flat_.data() + mid * static_cast<std::size_t>(k_);
    int cmp = std::memcmp(s, target, static_cast<std::size_t>(k_));
    if (cmp < 0)
      lo = mid + 1;
    else if (cmp > 0)
      hi = mid;
    else
      return mid;
  }
  throw invalid_config("partition lattice: element not found (corrupt growth string?)");
}

bool PartitionLattice::leq(std::size_t a, std::size_t b) const {
  if (a >= count_ || b >= count_) throw invalid_config("partition lattice: index out of range");
  if (has_tables_) return leq_bit(a, b);
  return refines_rgs(flat_.data() + a * static_cast<std::size_t>(k_),
                     flat_.data() + b * static_cast<std::size_t>(k_), k_);
}

std::int64_t PartitionLattice::mobius(std::size_t a, std::size_t b) const {
  if (!leq(a, b)) return 0;
  if (has_tables_) {
    const auto& lst = down_[b];
    auto it = std::lower_bound(lst.begin(), lst.end(), a,
                               [](const DownEntry& e, std::size_t x) { return e.index < x; });
    return it->mu;  // a <= b guarantees presence
  }
  return mobius_rgs(flat_.data() + a * static_cast<std::size_t>(k_),
                    flat_.data() + b * static_cast<std::size_t>(k_), k_);
}

const std::vector<PartitionLattice::DownEntry>& PartitionLattice::down(std::size_t b) const {
  if (!has_tables_) throw invalid_config("partition lattice: tables not materialized");
  if (b >= count_) throw invalid_config("partition lattice: index out of range");
  return down_[b];
}

void PartitionLattice::corrupt_mobius_entry_for_tests() {
  if (!has_tables_) throw invalid_config("partition lattice: tables not materialized");
  down_[top()].front().mu += 1;  // mu(bottom, top) off by one
}

void PartitionLattice::corrupt_order_bit_for_tests() {
  if (!has_tables_) throw invalid_config("partition lattice: tables not materialized");
  std::size_t idx = 1 * count_ + top();  // first atom below top: flip to "incomparable"
  leq_bits_[idx >> 6] ^= std::uint64_t{1} << (idx & 63);
}

Int mobius_recursive(const PartitionLattice& lat, std::size_t a, std::size_t b) {
  if (!lat.leq(a, b)) return 0;
  // The linear extension puts every z in [a, b] at an index in [a, b], so a
  // single forward sweep fills the memo in dependency order.
  std::vector<Int> memo(b - a + 1);
  std::vector<std::size_t> interval;
  for (std::size_t z = a; z <= b; ++z)
    if (lat.leq(a, z) && lat.leq(z, b)) interval.push_back(z);
  for (std::size_t pos = 0; pos < interval.size(); ++pos) {
    std::size_t z = interval[pos];
    if (z == a) {
      memo[z - a] = 1;
      continue;
    }
    Int s = 0;
    for (std::size_t j = 0; j < pos; ++j)
      if (lat.leq(interval[j], z)) s += memo[interval[j] - a];
    memo[z - a] = -s;
  }
  return memo[b - a];
}

Int mobius_closed_form(const SetPartition& a, const SetPartition& b) {
  if (a.k() != b.k()) throw invalid_config("mobius: partition size mismatch");
  if (!refines(a, b)) return 0;
  std::vector<int> seen(static_cast<std::size_t>(a.block_count()), 0);
  std::vector<int> split(static_cast<std::size_t>(b.block_count()), 0);
  for (int i = 0; i < a.k(); ++i) {
    if (!seen[a.block_of(i)]) {
      seen[a.block_of(i)] = 1;
      ++split[b.block_of(i)];
    }
  }
  Int mu = 1;
  for (int l : split) {
    for (int j = 2; j < l; ++j) mu *= j;
    if (l % 2 == 0) mu = -mu;
  }
  return mu;
}

}  // namespace prlab
