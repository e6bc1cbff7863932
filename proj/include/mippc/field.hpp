#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mippc {

// Exact arithmetic in GF(p^m) with table-based multiplication.
// Elements are encoded as integers in [0, q): the base-p digits of the code
// are the coefficients of the representative polynomial (digit i = coeff of x^i).
class FiniteField {
 public:
  static constexpr int kDefaultOrderCap = 4096;

  int p = 0;                  // prime characteristic
  int m = 0;                  // extension degree
  int q = 0;                  // order p^m
  std::vector<int> modulus;   // monic irreducible, modulus[i] = coeff of x^i, size m+1

  int add(int a, int b) const {
    check(a); check(b);
    if (m == 1) return (a + b) % p;
    int r = 0, pw = 1;
    for (int i = 0; i < m; ++i) {
      r += ((a % p + b % p) % p) * pw;
      a /= p; b /= p; pw *= p;
    }
    return r;
  }

  int neg(int a) const {
    check(a);
    if (m == 1) return (p - a) % p;
    int r = 0, pw = 1;
    for (int i = 0; i < m; ++i) {
      r += ((p - a % p) % p) * pw;
      a /= p; pw *= p;
    }
    return r;
  }

  int sub(int a, int b) const { return add(a, neg(b)); }

  int mul(int a, int b) const {
    check(a); check(b);
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q - 1)];
  }

  int inv(int a) const {
    check(a);
    if (a == 0) throw std::invalid_argument("FiniteField::inv: zero has no inverse");
    return exp_[(q - 1 - log_[a]) % (q - 1)];
  }

  int pow(int a, long long e) const {
    check(a);
    if (a == 0) return e == 0 ? 1 : 0;
    long long le = log_[a] % (q - 1) * (e % (q - 1)) % (q - 1);
    return exp_[(le % (q - 1) + (q - 1)) % (q - 1)];
  }

 private:
  friend FiniteField make_field(int, int, int);
  std::vector<int> log_, exp_;

  void check(int a) const {
    if (a < 0 || a >= q) throw std::invalid_argument("FiniteField: element code out of range");
  }
};

namespace detail {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over GF(p), little-endian coefficient vectors.
inline void poly_trim(std::vector<int>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p) {
  // b monic
  while (a.size() >= b.size()) {
    int lead = a.back();
    if (lead != 0) {
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    a.pop_back();
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

inline std::vector<int> code_to_poly(int code, int p, int m) {
  std::vector<int> f(m, 0);
  for (int i = 0; i < m; ++i) { f[i] = code % p; code /= p; }
  poly_trim(f);
  return f;
}

inline bool poly_is_irreducible(const std::vector<int>& f, int p) {
  int deg = static_cast<int>(f.size()) - 1;
  // trial division against all monic polynomials of degree 1..deg/2
  for (int d = 1; 2 * d <= deg; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int low = 0; low < count; ++low) {
      std::vector<int> g(d + 1, 0);
      int x = low;
      for (int i = 0; i < d; ++i) { g[i] = x % p; x /= p; }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

// Builds GF(p^m) with the lexicographically smallest monic irreducible modulus
// (smallest integer encoding of the lower coefficients).
inline FiniteField make_field(int p, int m, int order_cap = FiniteField::kDefaultOrderCap) {
  if (!detail::is_prime(p)) throw std::invalid_argument("make_field: p must be prime");
  if (m < 1) throw std::invalid_argument("make_field: m must be >= 1");
  long long q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (q > order_cap) throw std::invalid_argument("make_field: order p^m exceeds cap");
  }

  FiniteField F;
  F.p = p; F.m = m; F.q = static_cast<int>(q);

  if (m == 1) {
    F.modulus = {0, 1};  // x
  } else {
    int count = F.q;  // p^m choices of lower coefficients
    for (int low = 0; low < count; ++low) {
      std::vector<int> f = detail::code_to_poly(low, p, m);
      f.resize(m + 1, 0);
      f[m] = 1;
      if (detail::poly_is_irreducible(f, p)) { F.modulus = f; break; }
    }
    if (F.modulus.empty()) throw std::logic_error("make_field: no irreducible polynomial found");
  }

  // Bootstrap multiplication (polynomial product mod modulus) to build log/exp tables.
  auto poly_mul_mod = [&](int a, int b) -> int {
    std::vector<int> fa = detail::code_to_poly(a, p, m);
    std::vector<int> fb = detail::code_to_poly(b, p, m);
    if (fa.empty() || fb.empty()) return 0;
    std::vector<int> prod(fa.size() + fb.size() - 1, 0);
    for (size_t i = 0; i < fa.size(); ++i)
      for (size_t j = 0; j < fb.size(); ++j)
        prod[i + j] = (prod[i + j] + fa[i] * fb[j]) % p;
    prod = detail::poly_rem(prod, F.modulus, p);
    int code = 0, pw = 1;
    for (size_t i = 0; i < prod.size(); ++i) { code += prod[i] * pw; pw *= p; }
    return code;
  };

  F.exp_.assign(F.q - 1, 0);
  F.log_.assign(F.q, -1);
  for (int g = (F.q == 2 ? 1 : 2); g < F.q; ++g) {
    std::fill(F.log_.begin(), F.log_.end(), -1);
    int cur = 1;
    bool primitive = true;
    for (int e = 0; e < F.q - 1; ++e) {
      if (F.log_[cur] != -1) { primitive = false; break; }
      F.exp_[e] = cur;
      F.log_[cur] = e;
      cur = poly_mul_mod(cur, g);
    }
    if (primitive && cur == 1) break;
  }
  if (F.log_[1] != 0) throw std::logic_error("make_field: no primitive element found");
  return F;
}

// Factors k as p^m for prime p; rejects anything that is not a prime power.
inline std::pair<int, int> prime_power_decompose(int k) {
  if (k < 2) throw std::invalid_argument("prime_power_decompose: k must be >= 2");
  for (int d = 2; d <= k; ++d) {
    if (k % d == 0) {
      int m = 0, rem = k;
      while (rem % d == 0) { rem /= d; ++m; }
      if (rem != 1) throw std::invalid_argument("prime_power_decompose: not a prime power");
      return {d, m};
    }
  }
  throw std::invalid_argument("prime_power_decompose: not a prime power");
}

// A point of PG(3,q): homogeneous coordinates normalized so the first nonzero
// coordinate equals 1. The normal form is the canonical representative.
struct ProjectivePoint {
  std::array<int, 4> coords{0, 0, 0, 0};
  bool operator==(const ProjectivePoint&) const = default;
  bool operator<(const ProjectivePoint& o) const { return coords < o.coords; }
};

inline ProjectivePoint normalize_point(const FiniteField& F, std::array<int, 4> c) {
  int pivot = -1;
  for (int i = 0; i < 4; ++i)
    if (c[i] != 0) { pivot = i; break; }
  if (pivot < 0) throw std::invalid_argument("normalize_point: zero vector is not a projective point");
  int s = F.inv(c[pivot]);
  ProjectivePoint pt;
  for (int i = 0; i < 4; ++i) pt.coords[i] = F.mul(c[i], s);
  return pt;
}

inline std::array<int, 4> vec_add(const FiniteField& F, const std::array<int, 4>& a,
                                  const std::array<int, 4>& b) {
  return {F.add(a[0], b[0]), F.add(a[1], b[1]), F.add(a[2], b[2]), F.add(a[3], b[3])};
}

inline std::array<int, 4> vec_scale(const FiniteField& F, int s, const std::array<int, 4>& a) {
  return {F.mul(s, a[0]), F.mul(s, a[1]), F.mul(s, a[2]), F.mul(s, a[3])};
}

// All q^3 + q^2 + q + 1 points of PG(3,q) in a fixed deterministic order:
// leading-one patterns (1,*,*,*), (0,1,*,*), (0,0,1,*), (0,0,0,1), inner
// coordinates in lexicographic order.
inline std::vector<ProjectivePoint> pg3_points(const FiniteField& F) {
  std::vector<ProjectivePoint> pts;
  const int q = F.q;
  pts.reserve(static_cast<size_t>(q) * q * q + q * q + q + 1);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        pts.push_back(ProjectivePoint{{1, a, b, c}});
  for (int b = 0; b < q; ++b)
    for (int c = 0; c < q; ++c)
      pts.push_back(ProjectivePoint{{0, 1, b, c}});
  for (int c = 0; c < q; ++c)
    pts.push_back(ProjectivePoint{{0, 0, 1, c}});
  pts.push_back(ProjectivePoint{{0, 0, 0, 1}});
  return pts;
}

}  // namespace mippc
