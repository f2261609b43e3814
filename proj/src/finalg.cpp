#include "symp/finalg.hpp"

#include <algorithm>
#include <numeric>

namespace symp::finalg {

long long mod_reduce(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

long long mod_pow(long long b, long long e, long long m) {
  long long r = 1 % m;
  b = mod_reduce(b, m);
  while (e > 0) {
    if (e & 1) r = (__int128)r * b % m;
    b = (__int128)b * b % m;
    e >>= 1;
  }
  return r;
}

static long long egcd(long long a, long long b, long long &x, long long &y) {
  if (b == 0) { x = 1; y = 0; return a; }
  long long x1, y1;
  long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long long mod_inverse_scalar(long long v, long long m) {
  long long x, y;
  long long g = egcd(mod_reduce(v, m), m, x, y);
  if (g != 1) throw NotInvertible(mod_reduce(v, m), m);
  return mod_reduce(x, m);
}

ModMatrix ModMatrix::identity(int n, long long m) {
  ModMatrix r(n, n, m);
  for (int i = 0; i < n; i++) r.at(i, i) = 1 % m;
  return r;
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix r(cols, rows, mod);
  for (int i = 0; i < rows; i++)
    for (int j = 0; j < cols; j++) r.at(j, i) = at(i, j);
  return r;
}

ModMatrix mat_mul_mod(const ModMatrix &x, const ModMatrix &y) {
  if (x.cols != y.rows || x.mod != y.mod)
    throw std::invalid_argument("mat_mul_mod: shape or modulus mismatch");
  ModMatrix r(x.rows, y.cols, x.mod);
  for (int i = 0; i < x.rows; i++)
    for (int k = 0; k < x.cols; k++) {
      long long v = x.at(i, k);
      if (!v) continue;
      for (int j = 0; j < y.cols; j++)
        r.at(i, j) = (r.at(i, j) + v * y.at(k, j)) % x.mod;
    }
  return r;
}

ModMatrix mat_add_mod(const ModMatrix &x, const ModMatrix &y) {
  if (x.rows != y.rows || x.cols != y.cols || x.mod != y.mod)
    throw std::invalid_argument("mat_add_mod: shape or modulus mismatch");
  ModMatrix r(x.rows, x.cols, x.mod);
  for (size_t i = 0; i < x.a.size(); i++) r.a[i] = (x.a[i] + y.a[i]) % x.mod;
  return r;
}

ModMatrix mat_scale_mod(long long c, const ModMatrix &x) {
  ModMatrix r(x.rows, x.cols, x.mod);
  c = mod_reduce(c, x.mod);
  for (size_t i = 0; i < x.a.size(); i++) r.a[i] = c * x.a[i] % x.mod;
  return r;
}

ModMatrix mat_reduce_to(const ModMatrix &x, long long m) {
  if (x.mod % m != 0) throw std::invalid_argument("mat_reduce_to: m must divide mod");
  ModMatrix r(x.rows, x.cols, m);
  for (size_t i = 0; i < x.a.size(); i++) r.a[i] = x.a[i] % m;
  return r;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> f;
  for (long long p = 2; p * p <= n; p++) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) { n /= p; e++; }
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

// Gaussian elimination inverse, valid when the modulus is prime.
static ModMatrix inv_mod_prime(const ModMatrix &x) {
  int n = x.rows;
  long long p = x.mod;
  ModMatrix m = x, r = ModMatrix::identity(n, p);
  for (int c = 0; c < n; c++) {
    int piv = -1;
    for (int i = c; i < n; i++)
      if (m.at(i, c) % p != 0) { piv = i; break; }
    if (piv < 0) throw NotInvertible(0, p);
    if (piv != c)
      for (int j = 0; j < n; j++) {
        std::swap(m.at(piv, j), m.at(c, j));
        std::swap(r.at(piv, j), r.at(c, j));
      }
    long long inv = mod_inverse_scalar(m.at(c, c), p);
    for (int j = 0; j < n; j++) {
      m.at(c, j) = m.at(c, j) * inv % p;
      r.at(c, j) = r.at(c, j) * inv % p;
    }
    for (int i = 0; i < n; i++) {
      if (i == c) continue;
      long long f = m.at(i, c);
      if (!f) continue;
      for (int j = 0; j < n; j++) {
        m.at(i, j) = mod_reduce(m.at(i, j) - f * m.at(c, j), p);
        r.at(i, j) = mod_reduce(r.at(i, j) - f * r.at(c, j), p);
      }
    }
  }
  return r;
}

// Hensel: X' = X (2I - A X) doubles the precision of an approximate inverse.
static ModMatrix inv_mod_prime_power(const ModMatrix &x, long long p, int e) {
  ModMatrix x0 = mat_reduce_to(x, p);
  ModMatrix inv = inv_mod_prime(x0);
  long long q = p;
  while (q < x.mod) {
    q = std::min(q * q, x.mod);
    ModMatrix xm(x.rows, x.cols, q);
    for (size_t i = 0; i < x.a.size(); i++) xm.a[i] = x.a[i] % q;
    ModMatrix cur(inv.rows, inv.cols, q);
    for (size_t i = 0; i < inv.a.size(); i++) cur.a[i] = inv.a[i] % q;
    ModMatrix t = mat_mul_mod(xm, cur);
    ModMatrix two_i = mat_scale_mod(2, ModMatrix::identity(x.rows, q));
    ModMatrix corr(t.rows, t.cols, q);
    for (size_t i = 0; i < t.a.size(); i++) corr.a[i] = mod_reduce(two_i.a[i] - t.a[i], q);
    inv = mat_mul_mod(cur, corr);
  }
  (void)e;
  return inv;
}

ModMatrix mat_inv_mod(const ModMatrix &x) {
  if (x.rows != x.cols) throw std::invalid_argument("mat_inv_mod: square only");
  auto fac = factorize(x.mod);
  if (fac.size() == 1) {
    auto [p, e] = fac[0];
    return e == 1 ? inv_mod_prime(x) : inv_mod_prime_power(x, p, e);
  }
  // CRT over prime-power factors
  ModMatrix r(x.rows, x.cols, x.mod);
  for (auto [p, e] : fac) {
    long long q = 1;
    for (int i = 0; i < e; i++) q *= p;
    ModMatrix xq(x.rows, x.cols, q);
    for (size_t i = 0; i < x.a.size(); i++) xq.a[i] = x.a[i] % q;
    ModMatrix iq = (e == 1) ? inv_mod_prime(xq) : inv_mod_prime_power(xq, p, e);
    long long m_over = x.mod / q;
    long long w = (__int128)m_over * mod_inverse_scalar(m_over % q, q) % x.mod;
    for (size_t i = 0; i < r.a.size(); i++)
      r.a[i] = (r.a[i] + (__int128)w * iq.a[i]) % x.mod;
  }
  return r;
}

int rank_mod(const ModMatrix &x) {
  long long p = x.mod;
  ModMatrix m = x;
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; c++) {
    int piv = -1;
    for (int i = rank; i < m.rows; i++)
      if (m.at(i, c) % p != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < m.cols; j++) std::swap(m.at(piv, j), m.at(rank, j));
    long long inv = mod_inverse_scalar(m.at(rank, c), p);
    for (int i = rank + 1; i < m.rows; i++) {
      long long f = m.at(i, c) * inv % p;
      if (!f) continue;
      for (int j = c; j < m.cols; j++)
        m.at(i, j) = mod_reduce(m.at(i, j) - f * m.at(rank, j), p);
    }
    rank++;
  }
  return rank;
}

// ---------------------------------------------------------------------------

IntMatrix IntMatrix::identity(int n) {
  IntMatrix r(n, n);
  for (int i = 0; i < n; i++) r.at(i, i) = 1;
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols, rows);
  for (int i = 0; i < rows; i++)
    for (int j = 0; j < cols; j++) r.at(j, i) = at(i, j);
  return r;
}

IntMatrix int_mul(const IntMatrix &x, const IntMatrix &y) {
  if (x.cols != y.rows) throw std::invalid_argument("int_mul: shape mismatch");
  IntMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; i++)
    for (int k = 0; k < x.cols; k++) {
      const Int &v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; j++) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

IntMatrix int_scale(const Int &c, const IntMatrix &x) {
  IntMatrix r = x;
  for (auto &v : r.a) v *= c;
  return r;
}

SNFResult smith_normal_form(const IntMatrix &x) {
  IntMatrix d = x;
  IntMatrix u = IntMatrix::identity(x.rows);
  IntMatrix v = IntMatrix::identity(x.cols);
  int n = std::min(x.rows, x.cols);

  auto row_op = [&](IntMatrix &m, int i, int k, const Int &f) {
    // row_i -= f * row_k
    for (int j = 0; j < m.cols; j++) m.at(i, j) -= f * m.at(k, j);
  };
  auto col_op = [&](IntMatrix &m, int j, int k, const Int &f) {
    for (int i = 0; i < m.rows; i++) m.at(i, j) -= f * m.at(i, k);
  };
  auto swap_rows = [&](IntMatrix &m, int i, int k) {
    for (int j = 0; j < m.cols; j++) std::swap(m.at(i, j), m.at(k, j));
  };
  auto swap_cols = [&](IntMatrix &m, int j, int k) {
    for (int i = 0; i < m.rows; i++) std::swap(m.at(i, j), m.at(i, k));
  };

  for (int t = 0; t < n; t++) {
    // move a nonzero of minimal magnitude to (t, t)
    for (;;) {
      int bi = -1, bj = -1;
      Int best = 0;
      for (int i = t; i < d.rows; i++)
        for (int j = t; j < d.cols; j++) {
          if (d.at(i, j) == 0) continue;
          Int m = abs(d.at(i, j));
          if (bi < 0 || m < best) { best = m; bi = i; bj = j; }
        }
      if (bi < 0) { bi = t; bj = t; }  // block all zero
      if (bi != t) { swap_rows(d, bi, t); swap_rows(u, bi, t); }
      if (bj != t) { swap_cols(d, bj, t); swap_cols(v, bj, t); }
      if (d.at(t, t) == 0) break;
      bool clean = true;
      for (int i = t + 1; i < d.rows; i++) {
        if (d.at(i, t) == 0) continue;
        Int f = d.at(i, t) / d.at(t, t);
        row_op(d, i, t, f);
        row_op(u, i, t, f);
        if (d.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < d.cols; j++) {
        if (d.at(t, j) == 0) continue;
        Int f = d.at(t, j) / d.at(t, t);
        col_op(d, j, t, f);
        col_op(v, j, t, f);
        if (d.at(t, j) != 0) clean = false;
      }
      if (clean) {
        // enforce divisibility d_t | d.at(i, j) for the remaining block
        bool divides_all = true;
        for (int i = t + 1; i < d.rows && divides_all; i++)
          for (int j = t + 1; j < d.cols; j++)
            if (d.at(i, j) % d.at(t, t) != 0) {
              // fold row i into row t and restart the pivot
              row_op(d, t, i, Int(-1));
              row_op(u, t, i, Int(-1));
              divides_all = false;
              break;
            }
        if (divides_all) break;
      }
    }
    if (d.at(t, t) < 0) {
      for (int j = 0; j < d.cols; j++) d.at(t, j) = -d.at(t, j);
      for (int j = 0; j < u.cols; j++) u.at(t, j) = -u.at(t, j);
    }
  }
  return {u, d, v};
}

IntMatrix hnf_rows(const IntMatrix &x) {
  IntMatrix m = x;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; c++) {
    // gcd-reduce column c among rows >= r
    for (;;) {
      int piv = -1;
      Int best = 0;
      for (int i = r; i < m.rows; i++) {
        if (m.at(i, c) == 0) continue;
        Int v = abs(m.at(i, c));
        if (piv < 0 || v < best) { best = v; piv = i; }
      }
      if (piv < 0) break;
      if (piv != r)
        for (int j = 0; j < m.cols; j++) std::swap(m.at(piv, j), m.at(r, j));
      bool done = true;
      for (int i = r + 1; i < m.rows; i++) {
        if (m.at(i, c) == 0) continue;
        Int f = m.at(i, c) / m.at(r, c);
        for (int j = 0; j < m.cols; j++) m.at(i, j) -= f * m.at(r, j);
        if (m.at(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r < m.rows && m.at(r, c) != 0) {
      if (m.at(r, c) < 0)
        for (int j = 0; j < m.cols; j++) m.at(r, j) = -m.at(r, j);
      // reduce entries above the pivot into [0, pivot)
      for (int i = 0; i < r; i++) {
        Int f = m.at(i, c) / m.at(r, c);
        if (m.at(i, c) - f * m.at(r, c) < 0) f -= 1;
        if (f != 0)
          for (int j = 0; j < m.cols; j++) m.at(i, j) -= f * m.at(r, j);
      }
      r++;
    }
  }
  IntMatrix out(r, m.cols);
  for (int i = 0; i < r; i++)
    for (int j = 0; j < m.cols; j++) out.at(i, j) = m.at(i, j);
  return out;
}

IntMatrix int_kernel(const IntMatrix &x) {
  SNFResult s = smith_normal_form(x);
  int n = std::min(x.rows, x.cols);
  std::vector<int> zero_cols;
  for (int j = 0; j < x.cols; j++)
    if (j >= n || s.d.at(j, j) == 0) zero_cols.push_back(j);
  IntMatrix k(x.cols, (int)zero_cols.size());
  for (size_t t = 0; t < zero_cols.size(); t++)
    for (int i = 0; i < x.cols; i++) k.at(i, (int)t) = s.v.at(i, zero_cols[t]);
  return k;
}

// Bareiss fraction-free elimination; returns (rank, det-of-leading-block).
static std::pair<int, Int> bareiss(IntMatrix m) {
  int n = m.rows, c = m.cols;
  Int prev = 1;
  int rank = 0;
  int sign = 1;
  for (int col = 0; col < c && rank < n; col++) {
    int piv = -1;
    for (int i = rank; i < n; i++)
      if (m.at(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rank) {
      for (int j = 0; j < c; j++) std::swap(m.at(piv, j), m.at(rank, j));
      sign = -sign;
    }
    for (int i = rank + 1; i < n; i++) {
      for (int j = col + 1; j < c; j++) {
        Int t = m.at(i, j) * m.at(rank, col) - m.at(i, col) * m.at(rank, j);
        m.at(i, j) = t / prev;  // exact by Bareiss
      }
      m.at(i, col) = 0;
    }
    prev = m.at(rank, col);
    rank++;
  }
  return {rank, Int(sign) * prev};
}

Int int_det(const IntMatrix &x) {
  if (x.rows != x.cols) throw std::invalid_argument("int_det: square only");
  auto [rank, det] = bareiss(x);
  return rank == x.rows ? det : Int(0);
}

int rank_int(const IntMatrix &x) { return bareiss(x).first; }

// ---------------------------------------------------------------------------

RatMatrix RatMatrix::identity(int n) {
  RatMatrix r(n, n);
  for (int i = 0; i < n; i++) r.at(i, i) = 1;
  return r;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix r(cols, rows);
  for (int i = 0; i < rows; i++)
    for (int j = 0; j < cols; j++) r.at(j, i) = at(i, j);
  return r;
}

RatMatrix rat_mul(const RatMatrix &x, const RatMatrix &y) {
  if (x.cols != y.rows) throw std::invalid_argument("rat_mul: shape mismatch");
  RatMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; i++)
    for (int k = 0; k < x.cols; k++) {
      const Rat &v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; j++) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

RatMatrix rat_from_int(const IntMatrix &x) {
  RatMatrix r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); i++) r.a[i] = x.a[i];
  return r;
}

IntMatrix rat_clear_denominators(const RatMatrix &x) {
  IntMatrix r(x.rows, x.cols);
  for (int i = 0; i < x.rows; i++) {
    Int l = 1;
    for (int j = 0; j < x.cols; j++) {
      Int den = denominator(x.at(i, j));
      l = lcm(l, den);
    }
    for (int j = 0; j < x.cols; j++) {
      const Rat &q = x.at(i, j);
      r.at(i, j) = numerator(q) * (l / denominator(q));
    }
  }
  return r;
}

int rank_exact(const RatMatrix &x) { return rank_int(rat_clear_denominators(x)); }

// exact reduced row echelon form; returns pivot columns
static std::vector<int> rref(RatMatrix &m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; c++) {
    int piv = -1;
    for (int i = r; i < m.rows; i++)
      if (m.at(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols; j++) std::swap(m.at(piv, j), m.at(r, j));
    Rat inv = m.at(r, c);
    for (int j = c; j < m.cols; j++) m.at(r, j) /= inv;
    for (int i = 0; i < m.rows; i++) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < m.cols; j++) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    r++;
  }
  return pivots;
}

RatMatrix nullspace_exact(const RatMatrix &x) {
  RatMatrix m = x;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(x.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < x.cols; c++)
    if (!is_pivot[c]) free_cols.push_back(c);
  RatMatrix basis(x.cols, (int)free_cols.size());
  for (size_t t = 0; t < free_cols.size(); t++) {
    int fc = free_cols[t];
    basis.at(fc, (int)t) = 1;
    for (size_t r = 0; r < pivots.size(); r++)
      basis.at(pivots[r], (int)t) = -m.at((int)r, fc);
  }
  return basis;
}

RatMatrix concat_cols(const RatMatrix &a, const RatMatrix &b) {
  if (a.rows != b.rows) throw std::invalid_argument("concat_cols: row mismatch");
  RatMatrix r(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; i++) {
    for (int j = 0; j < a.cols; j++) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; j++) r.at(i, a.cols + j) = b.at(i, j);
  }
  return r;
}

RatMatrix intersect_spans(const RatMatrix &a, const RatMatrix &b) {
  // v in both spans  <=>  v = a x = b y  <=>  [a | -b] (x; y) = 0
  RatMatrix neg_b = b;
  for (auto &v : neg_b.a) v = -v;
  RatMatrix k = nullspace_exact(concat_cols(a, neg_b));
  RatMatrix xs(a.cols, k.cols);
  for (int i = 0; i < a.cols; i++)
    for (int j = 0; j < k.cols; j++) xs.at(i, j) = k.at(i, j);
  RatMatrix gens = rat_mul(a, xs);
  // prune to a basis
  RatMatrix m = gens.transpose();
  std::vector<int> pivots = rref(m);
  RatMatrix out(a.rows, (int)pivots.size());
  for (size_t t = 0; t < pivots.size(); t++)
    for (int i = 0; i < a.rows; i++) out.at(i, (int)t) = m.at((int)t, i);
  return out;
}

bool span_contains(const RatMatrix &big, const RatMatrix &sub) {
  int rb = rank_exact(big);
  return rank_exact(concat_cols(big, sub)) == rb;
}

bool spans_equal(const RatMatrix &a, const RatMatrix &b) {
  int ra = rank_exact(a), rb = rank_exact(b);
  if (ra != rb) return false;
  return rank_exact(concat_cols(a, b)) == ra;
}

}  // namespace symp::finalg
