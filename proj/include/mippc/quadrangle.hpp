#pragma once

#include <set>

#include "mippc/characterization.hpp"
#include "mippc/field.hpp"

namespace mippc {

// A finite generalized quadrangle of order (s,t): point indices 0..v-1, lines
// as sorted point sets in lexicographic order.
struct GeneralizedQuadrangle {
  int v = 0;
  int s = 0;
  int t = 0;
  std::vector<std::vector<int>> lines;

  int line_count() const { return static_cast<int>(lines.size()); }
  bool operator==(const GeneralizedQuadrangle&) const = default;
};

inline GeneralizedQuadrangle make_quadrangle(int v, int s, int t,
                                             std::vector<std::vector<int>> lines) {
  if (v < 1) throw std::invalid_argument("quadrangle must have at least one point");
  if (s < 1 || t < 1) throw std::invalid_argument("quadrangle order parameters must be >= 1");
  for (auto& ln : lines) {
    std::sort(ln.begin(), ln.end());
    if (std::adjacent_find(ln.begin(), ln.end()) != ln.end())
      throw std::invalid_argument("repeated point on a line");
    for (int p : ln)
      if (p < 0 || p >= v) throw std::invalid_argument("line point out of range");
  }
  std::sort(lines.begin(), lines.end());
  return GeneralizedQuadrangle{v, s, t, std::move(lines)};
}

struct GqCheck {
  bool ok = true;
  std::string violation;

  explicit operator bool() const { return ok; }
};

// Exhaustive axiom check against the claimed order (s,t); reports the first
// violation found.
inline GqCheck verify_gq(const GeneralizedQuadrangle& g) {
  auto fail = [](std::string msg) { return GqCheck{false, std::move(msg)}; };
  const int b = g.line_count();

  std::vector<std::vector<int>> through(g.v);
  for (int li = 0; li < b; ++li) {
    if (static_cast<int>(g.lines[li].size()) != 1 + g.s)
      return fail("axiom (2): line " + std::to_string(li) + " has " +
                  std::to_string(g.lines[li].size()) + " points, expected " +
                  std::to_string(1 + g.s));
    for (int p : g.lines[li]) through[p].push_back(li);
  }

  std::unordered_map<std::uint64_t, int> pairs;
  if (!detail::build_pair_map(g.lines, pairs))
    return fail("axiom (1): two points lie on two common lines");

  for (int p = 0; p < g.v; ++p)
    if (static_cast<int>(through[p].size()) != 1 + g.t)
      return fail("axiom (1): point " + std::to_string(p) + " lies on " +
                  std::to_string(through[p].size()) + " lines, expected " +
                  std::to_string(1 + g.t));

  std::vector<char> collinear(static_cast<size_t>(g.v) * g.v, 0);
  for (const auto& ln : g.lines)
    for (size_t i = 0; i < ln.size(); ++i)
      for (size_t j = i + 1; j < ln.size(); ++j) {
        collinear[static_cast<size_t>(ln[i]) * g.v + ln[j]] = 1;
        collinear[static_cast<size_t>(ln[j]) * g.v + ln[i]] = 1;
      }

  for (int x = 0; x < g.v; ++x) {
    std::vector<char> on_line(b, 0);
    for (int li : through[x]) on_line[li] = 1;
    for (int li = 0; li < b; ++li) {
      if (on_line[li]) continue;
      int hits = 0;
      for (int y : g.lines[li]) hits += collinear[static_cast<size_t>(x) * g.v + y];
      if (hits != 1)
        return fail("axiom (3): point " + std::to_string(x) + " sees " + std::to_string(hits) +
                    " points of line " + std::to_string(li) + ", expected 1");
    }
  }

  if (g.v != (1 + g.s) * (1 + g.s * g.t))
    return fail("point count differs from (1+s)(1+st)");
  if (b != (1 + g.t) * (1 + g.s * g.t))
    return fail("line count differs from (1+t)(1+st)");
  return GqCheck{};
}

namespace detail {

inline std::uint64_t pack_point(const ProjectivePoint& p) {
  return (static_cast<std::uint64_t>(p.coords[0]) << 48) |
         (static_cast<std::uint64_t>(p.coords[1]) << 32) |
         (static_cast<std::uint64_t>(p.coords[2]) << 16) | static_cast<std::uint64_t>(p.coords[3]);
}

struct Pg3 {
  FiniteField field;
  std::vector<ProjectivePoint> points;
  std::unordered_map<std::uint64_t, int> index;
};

inline Pg3 make_pg3(int k) {
  auto [p, m] = prime_power_decompose(k);
  Pg3 pg{make_field(p, m), {}, {}};
  pg.points = pg3_points(pg.field);
  for (size_t i = 0; i < pg.points.size(); ++i)
    pg.index.emplace(pack_point(pg.points[i]), static_cast<int>(i));
  return pg;
}

// The q+1 points of the projective line spanned by two distinct points,
// as sorted point indices.
inline std::vector<int> span_line(const Pg3& pg, int i, int j) {
  const auto& F = pg.field;
  std::vector<int> line{i, j};
  for (int lambda = 1; lambda < F.q; ++lambda) {
    auto sum = vec_add(F, pg.points[i].coords, vec_scale(F, lambda, pg.points[j].coords));
    line.push_back(pg.index.at(pack_point(normalize_point(F, sum))));
  }
  std::sort(line.begin(), line.end());
  return line;
}

inline void require_verified(const GeneralizedQuadrangle& g, const char* what) {
  auto check = verify_gq(g);
  if (!check.ok) throw std::logic_error(std::string(what) + ": " + check.violation);
}

}  // namespace detail

// The symplectic quadrangle of order (k,k): all points of PG(3,k), lines the
// totally isotropic lines of the alternating form x0*y1 - x1*y0 + x2*y3 - x3*y2.
inline GeneralizedQuadrangle w3(int k, bool verify = true) {
  auto pg = detail::make_pg3(k);
  const auto& F = pg.field;
  auto form = [&](const ProjectivePoint& a, const ProjectivePoint& b) {
    int r = F.sub(F.mul(a.coords[0], b.coords[1]), F.mul(a.coords[1], b.coords[0]));
    return F.add(r, F.sub(F.mul(a.coords[2], b.coords[3]), F.mul(a.coords[3], b.coords[2])));
  };
  std::set<std::vector<int>> lines;
  const int n = static_cast<int>(pg.points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (form(pg.points[i], pg.points[j]) == 0) lines.insert(detail::span_line(pg, i, j));
  auto g = make_quadrangle(n, k, k, {lines.begin(), lines.end()});
  if (verify) detail::require_verified(g, "w3");
  return g;
}

// The hyperoval quadrangle of order (k-1, k+1) for k a power of 2: points are
// the affine points of PG(3,k) off the plane x3 = 0, lines are the projective
// lines meeting that plane in exactly one point of the hyperoval
// {(1,t,t^2,0)} + {(0,0,1,0), (0,1,0,0)} (conic plus nucleus).
inline GeneralizedQuadrangle t2_star(int k, bool verify = true) {
  auto [p, m] = prime_power_decompose(k);
  if (p != 2) throw std::invalid_argument("t2_star: k must be a power of 2");
  auto pg = detail::make_pg3(k);
  const auto& F = pg.field;

  std::vector<int> hyperoval;
  for (int t = 0; t < F.q; ++t)
    hyperoval.push_back(pg.index.at(detail::pack_point(ProjectivePoint{{1, t, F.mul(t, t), 0}})));
  hyperoval.push_back(pg.index.at(detail::pack_point(ProjectivePoint{{0, 0, 1, 0}})));
  hyperoval.push_back(pg.index.at(detail::pack_point(ProjectivePoint{{0, 1, 0, 0}})));

  std::vector<int> affine_id(pg.points.size(), -1);
  int count = 0;
  for (size_t i = 0; i < pg.points.size(); ++i)
    if (pg.points[i].coords[3] != 0) affine_id[i] = count++;

  std::set<std::vector<int>> lines;
  for (int o : hyperoval)
    for (size_t a = 0; a < pg.points.size(); ++a) {
      if (affine_id[a] < 0) continue;
      auto span = detail::span_line(pg, o, static_cast<int>(a));
      std::vector<int> line;
      for (int pt : span)
        if (affine_id[pt] >= 0) line.push_back(affine_id[pt]);
      if (static_cast<int>(line.size()) != F.q)
        throw std::logic_error("t2_star: span meets the plane more than once");
      std::sort(line.begin(), line.end());
      lines.insert(std::move(line));
    }
  auto g = make_quadrangle(count, k - 1, k + 1, {lines.begin(), lines.end()});
  if (verify) detail::require_verified(g, "t2_star");
  return g;
}

namespace detail {

// Expansion about a regular point x0: points not collinear with x0; lines are
// the lines missing x0 (each drops its unique point collinear with x0) plus
// the hyperbolic spans through x0 (each drops x0). Applied to the symplectic
// quadrangle, where every point is regular, this yields a GQ(k-1, k+1).
inline GeneralizedQuadrangle expand_about_point(const GeneralizedQuadrangle& g, int x0) {
  const int v = g.v;
  std::vector<char> collinear(static_cast<size_t>(v) * v, 0);
  for (const auto& ln : g.lines)
    for (size_t i = 0; i < ln.size(); ++i)
      for (size_t j = i + 1; j < ln.size(); ++j) {
        collinear[static_cast<size_t>(ln[i]) * v + ln[j]] = 1;
        collinear[static_cast<size_t>(ln[j]) * v + ln[i]] = 1;
      }
  auto perp = [&](int a, int z) {  // z in a's perp (collinear or equal)
    return z == a || collinear[static_cast<size_t>(a) * v + z] != 0;
  };

  std::vector<int> new_id(v, -1);
  int count = 0;
  for (int p = 0; p < v; ++p)
    if (!perp(x0, p)) new_id[p] = count++;

  std::vector<std::vector<int>> lines;
  for (const auto& ln : g.lines) {
    if (std::binary_search(ln.begin(), ln.end(), x0)) continue;
    std::vector<int> kept;
    for (int p : ln)
      if (new_id[p] >= 0) kept.push_back(new_id[p]);
    if (kept.size() + 1 != ln.size())
      throw std::logic_error("expand_about_point: line off x0 must meet its perp once");
    lines.push_back(std::move(kept));
  }

  std::vector<char> covered(v, 0);
  for (int y = 0; y < v; ++y) {
    if (new_id[y] < 0 || covered[y]) continue;
    std::vector<int> tr;
    for (int z = 0; z < v; ++z)
      if (perp(x0, z) && perp(y, z)) tr.push_back(z);
    std::vector<int> span;
    for (int z = 0; z < v; ++z) {
      bool all = true;
      for (int w : tr)
        if (!perp(w, z)) { all = false; break; }
      if (all) span.push_back(z);
    }
    std::vector<int> kept;
    for (int z : span) {
      if (z == x0) continue;
      if (new_id[z] < 0) throw std::logic_error("expand_about_point: span leaks into the perp");
      covered[z] = 1;
      kept.push_back(new_id[z]);
    }
    if (kept.size() + 1 != span.size())
      throw std::logic_error("expand_about_point: span must contain the base point");
    lines.push_back(std::move(kept));
  }
  return make_quadrangle(count, g.s - 1, g.s + 1, std::move(lines));
}

}  // namespace detail

// The Ahrens-Szekeres quadrangle of order (k-1, k+1) for odd prime powers k,
// realized by expanding the symplectic quadrangle about its first point.
inline GeneralizedQuadrangle as_q(int k, bool verify = true) {
  auto [p, m] = prime_power_decompose(k);
  if (p == 2) throw std::invalid_argument("as_q: k must be odd");
  auto g = detail::expand_about_point(w3(k, verify), 0);
  if (verify) detail::require_verified(g, "as_q");
  return g;
}

// Point-line duality: new points are the old lines, new lines the pencils of
// old lines through each old point; swaps the order to (t,s).
inline GeneralizedQuadrangle dualize(const GeneralizedQuadrangle& g, bool verify = true) {
  if (verify) {
    auto check = verify_gq(g);
    if (!check.ok) throw std::invalid_argument("dualize: input fails verification: " + check.violation);
  }
  std::vector<std::vector<int>> pencils(g.v);
  for (int li = 0; li < g.line_count(); ++li)
    for (int p : g.lines[li]) pencils[p].push_back(li);
  auto dual = make_quadrangle(g.line_count(), g.t, g.s, std::move(pencils));
  if (verify) detail::require_verified(dual, "dualize");
  return dual;
}

// Lines as blocks: a verified GQ(s,t) is a delta-free generalized
// ((1+s)(1+st), (1+t)(1+st), 1+s, 1) packing.
inline GeneralizedPacking gq_to_packing(const GeneralizedQuadrangle& g) {
  return make_packing(g.v, g.lines);
}

// --- text format ------------------------------------------------------------
// line 1: "v b s t", then b lines of point indices.

inline GeneralizedQuadrangle load_quadrangle(std::istream& in) {
  std::string line;
  if (!detail::next_data_line(in, line)) throw FormatError("empty quadrangle file");
  auto header = detail::parse_ints(line, "quadrangle header");
  if (header.size() != 4) throw FormatError("quadrangle header must be 'v b s t'");
  long long v = header[0], b = header[1], s = header[2], t = header[3];
  if (v < 1 || b < 0 || s < 1 || t < 1) throw FormatError("invalid quadrangle header values");
  std::vector<std::vector<int>> lines;
  for (long long r = 0; r < b; ++r) {
    if (!detail::next_data_line(in, line)) throw FormatError("unexpected end of quadrangle file");
    std::vector<int> ln;
    for (long long x : detail::parse_ints(line, "line")) ln.push_back(static_cast<int>(x));
    lines.push_back(std::move(ln));
  }
  try {
    return make_quadrangle(static_cast<int>(v), static_cast<int>(s), static_cast<int>(t),
                           std::move(lines));
  } catch (const std::invalid_argument& err) {
    throw FormatError(err.what());
  }
}

inline void save_quadrangle(std::ostream& out, const GeneralizedQuadrangle& g,
                            const std::vector<std::string>& comments = {}) {
  for (const auto& cm : comments) out << "# " << cm << "\n";
  out << g.v << " " << g.line_count() << " " << g.s << " " << g.t << "\n";
  for (const auto& ln : g.lines) {
    for (size_t i = 0; i < ln.size(); ++i) out << (i ? " " : "") << ln[i];
    out << "\n";
  }
}

}  // namespace mippc
