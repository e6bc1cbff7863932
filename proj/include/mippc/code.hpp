#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace mippc {

using Symbol = std::uint16_t;
using Word = std::vector<Symbol>;

// Enumeration budget exhausted; use a fast characterization or raise the cap.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Captured evidence admits no coalition of size <= t: corrupted input.
struct InvalidEvidence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed text input (code / graph / packing / quadrangle files).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A q-ary (n, M, q) code. Canonical form: codewords sorted lexicographically,
// pairwise distinct, so equal codes serialize identically.
struct Code {
  int n = 0;
  int q = 0;
  std::vector<Word> words;

  int size() const { return static_cast<int>(words.size()); }
  bool operator==(const Code&) const = default;
};

inline Code make_code(int n, int q, std::vector<Word> words) {
  if (n < 2) throw std::invalid_argument("make_code: length n must be >= 2");
  if (q < 2) throw std::invalid_argument("make_code: alphabet size q must be >= 2");
  if (words.empty()) throw std::invalid_argument("make_code: code must have at least one codeword");
  for (const auto& w : words) {
    if (static_cast<int>(w.size()) != n) throw std::invalid_argument("make_code: codeword length mismatch");
    for (Symbol s : w)
      if (s >= q) throw std::invalid_argument("make_code: symbol out of range");
  }
  std::sort(words.begin(), words.end());
  if (std::adjacent_find(words.begin(), words.end()) != words.end())
    throw std::invalid_argument("make_code: duplicate codeword");
  return Code{n, q, std::move(words)};
}

// The product set C'(1) x ... x C'(n), stored per coordinate as a sorted
// nonempty symbol subset.
struct DescendantSet {
  std::vector<std::vector<Symbol>> coord_sets;

  int n() const { return static_cast<int>(coord_sets.size()); }
  bool operator==(const DescendantSet&) const = default;
};

inline DescendantSet make_descendant_set(std::vector<std::vector<Symbol>> sets) {
  if (sets.empty()) throw std::invalid_argument("descendant set must have at least one coordinate");
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw std::invalid_argument("descendant set coordinate must be nonempty");
  }
  return DescendantSet{std::move(sets)};
}

inline void check_subset_indices(const Code& c, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
  for (int i : subset)
    if (i < 0 || i >= c.size()) throw std::invalid_argument("codeword index out of range");
  auto sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("subset indices must be distinct");
}

inline DescendantSet desc(const Code& c, const std::vector<int>& subset) {
  check_subset_indices(c, subset);
  std::vector<std::vector<Symbol>> sets(c.n);
  for (int i = 0; i < c.n; ++i) {
    sets[i].reserve(subset.size());
    for (int w : subset) sets[i].push_back(c.words[w][i]);
    std::sort(sets[i].begin(), sets[i].end());
    sets[i].erase(std::unique(sets[i].begin(), sets[i].end()), sets[i].end());
  }
  return DescendantSet{std::move(sets)};
}

struct BruteOptions {
  std::uint64_t max_subsets = 10'000'000;  // cap on #subsets of size <= t
  int jobs = 1;                            // parallel workers for the enumeration
};

// Number of nonempty subsets of size <= t, clamped to avoid overflow.
inline std::uint64_t subset_count(int M, int t) {
  unsigned __int128 total = 0;
  for (int s = 1; s <= std::min(t, M); ++s) {
    unsigned __int128 c = 1;
    for (int i = 0; i < s; ++i) c = c * (M - i) / (i + 1);
    total += c;
    if (total > (unsigned __int128)1 << 100) return UINT64_MAX;
  }
  return total > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

namespace detail {

struct SubsetMask {
  std::vector<std::uint64_t> bits;
  explicit SubsetMask(int M = 0) : bits((M + 63) / 64, 0) {}
  void set(int i) { bits[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void intersect(const SubsetMask& o) {
    for (size_t i = 0; i < bits.size(); ++i) bits[i] &= o.bits[i];
  }
  bool any() const {
    for (auto w : bits)
      if (w) return true;
    return false;
  }
};

struct DescGroup {
  std::uint64_t count = 0;
  SubsetMask inter;
};

using GroupMap = std::unordered_map<std::string, DescGroup>;

// Canonical key of desc(subset): per coordinate, the sorted distinct symbols
// prefixed by their count, packed as raw uint16 bytes.
inline std::string desc_key(const Code& c, const std::vector<int>& idx) {
  std::string key;
  key.reserve(static_cast<size_t>(c.n) * (idx.size() + 1) * 2);
  Symbol buf[64];
  for (int i = 0; i < c.n; ++i) {
    int k = 0;
    for (int w : idx) buf[k++] = c.words[w][i];
    std::sort(buf, buf + k);
    k = static_cast<int>(std::unique(buf, buf + k) - buf);
    Symbol cnt = static_cast<Symbol>(k);
    key.append(reinterpret_cast<const char*>(&cnt), sizeof(Symbol));
    key.append(reinterpret_cast<const char*>(buf), sizeof(Symbol) * k);
  }
  return key;
}

// Enumerates every subset of size 1..t whose smallest index lands in this
// worker's stripe, in lexicographic order over index sequences, and groups
// them by descendant-set key. Merging worker maps is associative and
// commutative, so the verdicts below do not depend on the worker count.
inline void enumerate_stripe(const Code& c, int t, int stripe, int jobs, GroupMap& map) {
  const int M = c.size();
  std::vector<int> idx;
  idx.reserve(t);
  auto visit = [&](const std::vector<int>& subset) {
    std::string key = desc_key(c, subset);
    auto [it, fresh] = map.try_emplace(std::move(key));
    SubsetMask mask(M);
    for (int w : subset) mask.set(w);
    if (fresh) {
      it->second.inter = std::move(mask);
      it->second.count = 1;
    } else {
      it->second.inter.intersect(mask);
      ++it->second.count;
    }
  };
  auto rec = [&](auto&& self, int next) -> void {
    visit(idx);
    if (static_cast<int>(idx.size()) == t) return;
    for (int j = next; j < M; ++j) {
      idx.push_back(j);
      self(self, j + 1);
      idx.pop_back();
    }
  };
  for (int first = stripe; first < M; first += jobs) {
    idx.push_back(first);
    rec(rec, first + 1);
    idx.pop_back();
  }
}

inline GroupMap group_by_descendant(const Code& c, int t, const BruteOptions& opt) {
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (std::min(t, c.size()) > 60 || subset_count(c.size(), t) > opt.max_subsets)
    throw BudgetExceeded("subset enumeration exceeds budget; use a fast characterization or raise the cap");
  int jobs = std::max(1, std::min(opt.jobs, c.size()));
  if (jobs == 1) {
    GroupMap map;
    enumerate_stripe(c, t, 0, 1, map);
    return map;
  }
  std::vector<GroupMap> maps(jobs);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] { enumerate_stripe(c, t, w, jobs, maps[w]); });
  for (auto& th : pool) th.join();
  GroupMap merged = std::move(maps[0]);
  for (int w = 1; w < jobs; ++w)
    for (auto& [key, grp] : maps[w]) {
      auto [it, fresh] = merged.try_emplace(key);
      if (fresh) {
        it->second = std::move(grp);
      } else {
        it->second.count += grp.count;
        it->second.inter.intersect(grp.inter);
      }
    }
  return merged;
}

}  // namespace detail

// True iff all distinct subsets of size <= t have distinct descendant codes
// (the t-bar-separable property), by exhaustive grouping.
inline bool is_separable(const Code& c, int t, const BruteOptions& opt = {}) {
  auto groups = detail::group_by_descendant(c, t, opt);
  for (const auto& [key, grp] : groups)
    if (grp.count > 1) return false;
  return true;
}

// True iff every family of size-<=t subsets sharing one descendant code has a
// common codeword (the multimedia identifiable parent property), by
// exhaustive grouping.
inline bool is_mippc(const Code& c, int t, const BruteOptions& opt = {}) {
  auto groups = detail::group_by_descendant(c, t, opt);
  for (const auto& [key, grp] : groups)
    if (!grp.inter.any()) return false;
  return true;
}

// All parent sets P_t(S) = { C' : |C'| <= t, desc(C') = S }, each a sorted
// index set, enumerated in lexicographic order over index sequences.
inline std::vector<std::vector<int>> parent_sets(const Code& c, const DescendantSet& S, int t,
                                                 const BruteOptions& opt = {}) {
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (S.n() != c.n) throw InvalidEvidence("evidence length does not match code length");
  for (const auto& set : S.coord_sets) {
    if (set.empty()) throw InvalidEvidence("evidence coordinate set is empty");
    for (Symbol s : set)
      if (s >= c.q) throw InvalidEvidence("evidence symbol out of range");
  }

  // Only codewords lying inside S coordinate-wise can belong to a parent set.
  std::vector<int> compatible;
  for (int w = 0; w < c.size(); ++w) {
    bool ok = true;
    for (int i = 0; i < c.n && ok; ++i)
      ok = std::binary_search(S.coord_sets[i].begin(), S.coord_sets[i].end(), c.words[w][i]);
    if (ok) compatible.push_back(w);
  }

  if (std::min<size_t>(t, compatible.size()) > 60 ||
      subset_count(static_cast<int>(compatible.size()), t) > opt.max_subsets)
    throw BudgetExceeded("parent set enumeration exceeds budget");

  // A subset of compatible codewords has desc == S iff it covers every
  // coordinate set exactly (inclusion holds by construction).
  auto covers = [&](const std::vector<int>& idx) {
    Symbol buf[64];
    for (int i = 0; i < c.n; ++i) {
      int k = 0;
      for (int w : idx) buf[k++] = c.words[w][i];
      std::sort(buf, buf + k);
      k = static_cast<int>(std::unique(buf, buf + k) - buf);
      if (k != static_cast<int>(S.coord_sets[i].size())) return false;
    }
    return true;
  };

  std::vector<std::vector<int>> result;
  std::vector<int> idx;
  auto rec = [&](auto&& self, int next) -> void {
    if (!idx.empty() && covers(idx)) result.push_back(idx);
    if (static_cast<int>(idx.size()) == t) return;
    for (size_t j = next; j < compatible.size(); ++j) {
      idx.push_back(compatible[j]);
      self(self, static_cast<int>(j) + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return result;
}

// Outcome of the tracing algorithm: either the identified colluder indices
// (the intersection of all parent sets), or the report that the coalition
// has size at least t+1.
struct TraceOutcome {
  bool overflow = false;
  std::vector<int> identified;
};

inline TraceOutcome trace(const Code& c, const DescendantSet& S, int t, const BruteOptions& opt = {}) {
  auto ps = parent_sets(c, S, t, opt);
  if (ps.empty()) throw InvalidEvidence("evidence admits no coalition of size <= t");
  std::vector<int> inter = ps.front();
  for (size_t i = 1; i < ps.size() && !inter.empty(); ++i) {
    std::vector<int> next;
    std::set_intersection(inter.begin(), inter.end(), ps[i].begin(), ps[i].end(),
                          std::back_inserter(next));
    inter = std::move(next);
  }
  if (static_cast<int>(inter.size()) <= t) return TraceOutcome{false, std::move(inter)};
  return TraceOutcome{true, {}};
}

// The composition (n,M,q) -> (nq,M,2): each symbol i becomes the unit column
// with a 1 in position i, so every output codeword has weight exactly n.
inline Code to_binary(const Code& c) {
  std::vector<Word> out;
  out.reserve(c.words.size());
  for (const auto& w : c.words) {
    Word b(static_cast<size_t>(c.n) * c.q, 0);
    for (int i = 0; i < c.n; ++i) b[static_cast<size_t>(i) * c.q + w[i]] = 1;
    out.push_back(std::move(b));
  }
  return make_code(c.n * c.q, 2, std::move(out));
}

// --- text format -----------------------------------------------------------
// line 1: "n q M"; lines 2..M+1: one codeword per line, n space-separated
// symbols in [0,q). Lines beginning with '#' are comments. Codewords are
// canonicalized on load.

namespace detail {

inline bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return true;
  }
  return false;
}

inline std::vector<long long> parse_ints(const std::string& line, const char* what) {
  std::istringstream ss(line);
  std::vector<long long> vals;
  long long v;
  while (ss >> v) vals.push_back(v);
  std::string rest;
  if ((ss.fail() && !ss.eof()) || (ss.clear(), static_cast<bool>(ss >> rest)))
    throw FormatError(std::string("malformed ") + what + " line: " + line);
  return vals;
}

}  // namespace detail

inline Code load_code(std::istream& in) {
  std::string line;
  if (!detail::next_data_line(in, line)) throw FormatError("empty code file");
  auto header = detail::parse_ints(line, "code header");
  if (header.size() != 3) throw FormatError("code header must be 'n q M'");
  long long n = header[0], q = header[1], M = header[2];
  if (n < 2 || q < 2 || q > 65535 || M < 1) throw FormatError("invalid code header values");
  std::vector<Word> words;
  for (long long r = 0; r < M; ++r) {
    if (!detail::next_data_line(in, line)) throw FormatError("unexpected end of code file");
    auto vals = detail::parse_ints(line, "codeword");
    if (static_cast<long long>(vals.size()) != n) throw FormatError("codeword length mismatch");
    Word w;
    for (long long v : vals) {
      if (v < 0 || v >= q) throw FormatError("codeword symbol out of range");
      w.push_back(static_cast<Symbol>(v));
    }
    words.push_back(std::move(w));
  }
  try {
    return make_code(static_cast<int>(n), static_cast<int>(q), std::move(words));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline void save_code(std::ostream& out, const Code& c,
                      const std::vector<std::string>& comments = {}) {
  for (const auto& cm : comments) out << "# " << cm << "\n";
  out << c.n << " " << c.q << " " << c.size() << "\n";
  for (const auto& w : c.words) {
    for (int i = 0; i < c.n; ++i) out << (i ? " " : "") << w[i];
    out << "\n";
  }
}

}  // namespace mippc
