#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <unordered_map>
#include <utility>

#include "mippc/code.hpp"

namespace mippc {

// The column vector sets A_i^j: for each symbol i, the punctured codewords
// (coordinate j removed) of the codewords whose j-th symbol is i.
struct CoordinateProfile {
  int coord = 1;  // 1-based
  std::vector<std::vector<Word>> sets;
};

inline CoordinateProfile profile(const Code& c, int j) {
  if (j < 1 || j > c.n) throw std::invalid_argument("profile: coordinate out of range");
  CoordinateProfile p;
  p.coord = j;
  p.sets.assign(c.q, {});
  for (const auto& w : c.words) {
    Word punctured;
    punctured.reserve(c.n - 1);
    for (int i = 0; i < c.n; ++i)
      if (i != j - 1) punctured.push_back(w[i]);
    p.sets[w[j - 1]].push_back(std::move(punctured));
  }
  return p;
}

namespace detail {

// For n = 2: the sets A_i^1 as sorted symbol lists, indexed by first symbol.
inline std::vector<std::vector<Symbol>> first_coordinate_blocks(const Code& c) {
  if (c.n != 2) throw std::invalid_argument("operation requires a length-2 code");
  std::vector<std::vector<Symbol>> blocks(c.q);
  for (const auto& w : c.words) blocks[w[0]].push_back(w[1]);
  return blocks;  // sorted already: codewords are in lexicographic order
}

inline std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Maps every point pair covered by some block to that block's index.
// Returns false if a pair is covered twice (condition (I) fails).
template <class Block>
bool build_pair_map(const std::vector<Block>& blocks,
                    std::unordered_map<std::uint64_t, int>& map) {
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& blk = blocks[bi];
    for (size_t x = 0; x < blk.size(); ++x)
      for (size_t y = x + 1; y < blk.size(); ++y)
        if (!map.emplace(pair_key(blk[x], blk[y]), static_cast<int>(bi)).second) return false;
  }
  return true;
}

}  // namespace detail

// Fast 2-separability test for length-2 codes: all pairwise intersections of
// the first-coordinate profile sets have size at most 1.
inline bool is_separable2_fast(const Code& c) {
  auto blocks = detail::first_coordinate_blocks(c);
  std::unordered_map<std::uint64_t, int> pairs;
  return detail::build_pair_map(blocks, pairs);
}

// Fast 3-MIPP test for length-2 codes. Condition (I): pairwise profile
// intersections of size at most 1. Condition (II): no three distinct symbols
// a1,a2,a3 and points b1,b2,b3 with b1,b2 in A_a1, b2,b3 in A_a2, b1,b3 in
// A_a3. Given (I), each pair lies in at most one block, so (II) is detected by
// scanning block pairs through a common point against the pair->block map.
inline bool is_mippc3_fast(const Code& c) {
  auto blocks = detail::first_coordinate_blocks(c);
  std::unordered_map<std::uint64_t, int> pairs;
  if (!detail::build_pair_map(blocks, pairs)) return false;

  std::vector<std::vector<int>> through(c.q);
  for (size_t bi = 0; bi < blocks.size(); ++bi)
    for (Symbol x : blocks[bi]) through[x].push_back(static_cast<int>(bi));

  for (int x = 0; x < c.q; ++x) {
    const auto& tb = through[x];
    for (size_t i = 0; i < tb.size(); ++i)
      for (size_t j = i + 1; j < tb.size(); ++j)
        for (Symbol b1 : blocks[tb[i]]) {
          if (b1 == x) continue;
          for (Symbol b3 : blocks[tb[j]]) {
            if (b3 == x || b3 == b1) continue;
            if (pairs.count(detail::pair_key(b1, b3))) return false;
          }
        }
  }
  return true;
}

// --- bipartite graphs -------------------------------------------------------

struct BipartiteGraph {
  int x_size = 0;
  int y_size = 0;
  std::vector<std::pair<int, int>> edges;  // sorted, unique

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool operator==(const BipartiteGraph&) const = default;
};

inline BipartiteGraph make_bipartite_graph(int x_size, int y_size,
                                           std::vector<std::pair<int, int>> edges) {
  if (x_size < 1 || y_size < 1) throw std::invalid_argument("graph parts must be nonempty");
  for (auto [x, y] : edges)
    if (x < 0 || x >= x_size || y < 0 || y >= y_size)
      throw std::invalid_argument("edge endpoint out of range");
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  return BipartiteGraph{x_size, y_size, std::move(edges)};
}

inline constexpr int kInfiniteGirth = std::numeric_limits<int>::max();

// Length of a shortest cycle, or kInfiniteGirth for forests. Breadth-first
// search from every vertex; a non-tree edge (u,w) seen from u gives the cycle
// bound dist[u] + dist[w] + 1, exact once minimized over all roots.
inline int girth(const BipartiteGraph& g) {
  const int n = g.x_size + g.y_size;
  std::vector<std::vector<int>> adj(n);
  for (auto [x, y] : g.edges) {
    adj[x].push_back(g.x_size + y);
    adj[g.x_size + y].push_back(x);
  }
  int best = kInfiniteGirth;
  std::vector<int> dist(n), parent(n);
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::deque<int> queue{root};
    dist[root] = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      if (2 * dist[u] >= best) break;
      for (int w : adj[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

// Splits each codeword into prefix/suffix halves (prefix gets the extra
// coordinate when n is odd) and connects the mixed-radix encodings; one edge
// per codeword.
inline BipartiteGraph to_graph(const Code& c, std::int64_t part_cap = 1'000'000) {
  const int xlen = (c.n + 1) / 2;
  const int ylen = c.n - xlen;
  std::int64_t xs = 1, ys = 1;
  for (int i = 0; i < xlen; ++i) {
    xs *= c.q;
    if (xs > part_cap) throw std::invalid_argument("to_graph: part size exceeds cap");
  }
  for (int i = 0; i < ylen; ++i) {
    ys *= c.q;
    if (ys > part_cap) throw std::invalid_argument("to_graph: part size exceeds cap");
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(c.words.size());
  for (const auto& w : c.words) {
    std::int64_t x = 0, y = 0;
    for (int i = 0; i < xlen; ++i) x = x * c.q + w[i];
    for (int i = xlen; i < c.n; ++i) y = y * c.q + w[i];
    edges.emplace_back(static_cast<int>(x), static_cast<int>(y));
  }
  return make_bipartite_graph(static_cast<int>(xs), static_cast<int>(ys), std::move(edges));
}

// Inverse of to_graph for length-2 codes, with the identity bijection between
// the second part and the alphabet.
inline Code from_graph(const BipartiteGraph& g) {
  if (g.x_size != g.y_size)
    throw std::invalid_argument("from_graph: graph parts must have equal size");
  if (g.x_size < 2 || g.x_size > 65535)
    throw std::invalid_argument("from_graph: alphabet size out of range");
  std::vector<Word> words;
  words.reserve(g.edges.size());
  for (auto [x, y] : g.edges)
    words.push_back({static_cast<Symbol>(x), static_cast<Symbol>(y)});
  return make_code(2, g.x_size, std::move(words));
}

// --- generalized packings ---------------------------------------------------

// A generalized (v, b, K, 1) packing: b blocks over v points, every point pair
// in at most one block. Empty blocks are allowed.
struct GeneralizedPacking {
  int v = 0;
  std::vector<std::vector<int>> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool operator==(const GeneralizedPacking&) const = default;
};

inline GeneralizedPacking make_packing(int v, std::vector<std::vector<int>> blocks) {
  if (v < 1) throw std::invalid_argument("packing must have at least one point");
  for (auto& blk : blocks) {
    std::sort(blk.begin(), blk.end());
    if (std::adjacent_find(blk.begin(), blk.end()) != blk.end())
      throw std::invalid_argument("repeated point inside a block");
    for (int x : blk)
      if (x < 0 || x >= v) throw std::invalid_argument("block point out of range");
  }
  std::unordered_map<std::uint64_t, int> pairs;
  if (!detail::build_pair_map(blocks, pairs))
    throw std::invalid_argument("point pair covered by two blocks");
  return GeneralizedPacking{v, std::move(blocks)};
}

// Sorted multiset of block sizes (the K of the packing).
inline std::vector<int> block_sizes(const GeneralizedPacking& p) {
  std::vector<int> k;
  k.reserve(p.blocks.size());
  for (const auto& b : p.blocks) k.push_back(static_cast<int>(b.size()));
  std::sort(k.begin(), k.end());
  return k;
}

// True iff no three distinct points are pairwise covered by three blocks.
// Scans block triples over a table of pairwise block intersections (at most
// one shared point per pair once the packing invariant holds).
inline bool is_delta_free(const GeneralizedPacking& p) {
  {
    std::unordered_map<std::uint64_t, int> pairs;
    if (!detail::build_pair_map(p.blocks, pairs))
      throw std::invalid_argument("is_delta_free: input is not a packing");
  }
  const int b = p.block_count();
  std::vector<int> shared(static_cast<size_t>(b) * b, -1);
  for (int i = 0; i < b; ++i)
    for (int j = i + 1; j < b; ++j) {
      const auto& bi = p.blocks[i];
      const auto& bj = p.blocks[j];
      size_t x = 0, y = 0;
      while (x < bi.size() && y < bj.size()) {
        if (bi[x] < bj[y]) ++x;
        else if (bi[x] > bj[y]) ++y;
        else { shared[static_cast<size_t>(i) * b + j] = bi[x]; break; }
      }
    }
  auto sh = [&](int i, int j) { return shared[static_cast<size_t>(i) * b + j]; };
  for (int i = 0; i < b; ++i)
    for (int j = i + 1; j < b; ++j) {
      if (sh(i, j) < 0) continue;
      for (int k = j + 1; k < b; ++k) {
        int x = sh(i, j), y = sh(i, k), z = sh(j, k);
        if (y < 0 || z < 0) continue;
        if (x != y && x != z && y != z) return false;
      }
    }
  return true;
}

// The profile sets A_i^1 of a length-2 code as blocks over the alphabet.
// Fails when a point pair is covered twice (condition (I) violated).
inline GeneralizedPacking to_packing(const Code& c) {
  auto blocks = detail::first_coordinate_blocks(c);
  std::vector<std::vector<int>> cast(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) cast[i].assign(blocks[i].begin(), blocks[i].end());
  return make_packing(c.q, std::move(cast));
}

// Block i becomes the codewords (i, x) for x in the block; needs b = v so the
// block index range matches the alphabet.
inline Code from_packing(const GeneralizedPacking& p) {
  if (p.block_count() != p.v)
    throw std::invalid_argument("from_packing: packing must have exactly v blocks");
  std::vector<Word> words;
  for (int i = 0; i < p.block_count(); ++i)
    for (int x : p.blocks[i])
      words.push_back({static_cast<Symbol>(i), static_cast<Symbol>(x)});
  return make_code(2, p.v, std::move(words));
}

// --- text formats -----------------------------------------------------------
// Graph: line 1 "u v e", then e lines "x y".
// Packing: line 1 "v b", then b lines of space-separated point indices, where
// a blank line is an empty block.

inline BipartiteGraph load_graph(std::istream& in) {
  std::string line;
  if (!detail::next_data_line(in, line)) throw FormatError("empty graph file");
  auto header = detail::parse_ints(line, "graph header");
  if (header.size() != 3) throw FormatError("graph header must be 'u v e'");
  long long u = header[0], v = header[1], e = header[2];
  if (u < 1 || v < 1 || e < 0) throw FormatError("invalid graph header values");
  std::vector<std::pair<int, int>> edges;
  for (long long r = 0; r < e; ++r) {
    if (!detail::next_data_line(in, line)) throw FormatError("unexpected end of graph file");
    auto vals = detail::parse_ints(line, "edge");
    if (vals.size() != 2) throw FormatError("edge line must be 'x y'");
    edges.emplace_back(static_cast<int>(vals[0]), static_cast<int>(vals[1]));
  }
  try {
    return make_bipartite_graph(static_cast<int>(u), static_cast<int>(v), std::move(edges));
  } catch (const std::invalid_argument& err) {
    throw FormatError(err.what());
  }
}

inline void save_graph(std::ostream& out, const BipartiteGraph& g,
                       const std::vector<std::string>& comments = {}) {
  for (const auto& cm : comments) out << "# " << cm << "\n";
  out << g.x_size << " " << g.y_size << " " << g.edge_count() << "\n";
  for (auto [x, y] : g.edges) out << x << " " << y << "\n";
}

inline GeneralizedPacking load_packing(std::istream& in) {
  std::string line;
  if (!detail::next_data_line(in, line)) throw FormatError("empty packing file");
  auto header = detail::parse_ints(line, "packing header");
  if (header.size() != 2) throw FormatError("packing header must be 'v b'");
  long long v = header[0], b = header[1];
  if (v < 1 || b < 0) throw FormatError("invalid packing header values");
  std::vector<std::vector<int>> blocks;
  while (static_cast<long long>(blocks.size()) < b) {
    if (!std::getline(in, line)) throw FormatError("unexpected end of packing file");
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos != std::string::npos && line[pos] == '#') continue;
    std::vector<int> blk;
    if (pos != std::string::npos)
      for (long long x : detail::parse_ints(line, "block")) blk.push_back(static_cast<int>(x));
    blocks.push_back(std::move(blk));
  }
  try {
    return make_packing(static_cast<int>(v), std::move(blocks));
  } catch (const std::invalid_argument& err) {
    throw FormatError(err.what());
  }
}

inline void save_packing(std::ostream& out, const GeneralizedPacking& p,
                         const std::vector<std::string>& comments = {}) {
  for (const auto& cm : comments) out << "# " << cm << "\n";
  out << p.v << " " << p.block_count() << "\n";
  for (const auto& blk : p.blocks) {
    for (size_t i = 0; i < blk.size(); ++i) out << (i ? " " : "") << blk[i];
    out << "\n";
  }
}

}  // namespace mippc
