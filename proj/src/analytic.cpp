#include "symp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symp::analytic {

namespace {

constexpr double kPivotFloor = 1e-12;

// dense LU with partial pivoting; returns the permuted triangular factor in
// place and the row order, det sign tracked by swaps
struct Lu {
  CMat m;
  std::vector<int> perm;
  int swaps = 0;
};

Lu lu_factor(const CMat &in) {
  Lu lu{in, {}, 0};
  const int n = in.rows;
  lu.perm.resize(n);
  for (int i = 0; i < n; ++i) lu.perm[i] = i;
  for (int col = 0; col < n; ++col) {
    int best = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(lu.m.at(r, col)) > std::abs(lu.m.at(best, col))) best = r;
    if (std::abs(lu.m.at(best, col)) < kPivotFloor)
      throw std::runtime_error("analytic: matrix numerically singular");
    if (best != col) {
      for (int c = 0; c < n; ++c) std::swap(lu.m.at(best, c), lu.m.at(col, c));
      std::swap(lu.perm[best], lu.perm[col]);
      ++lu.swaps;
    }
    for (int r = col + 1; r < n; ++r) {
      Cplx f = lu.m.at(r, col) / lu.m.at(col, col);
      lu.m.at(r, col) = f;
      for (int c = col + 1; c < n; ++c) lu.m.at(r, c) -= f * lu.m.at(col, c);
    }
  }
  return lu;
}

// row-by-row solve of x * m = rhs through the transposed factors: with
// P m = L U this is U^T L^T P x^T = rhs^T, a forward and a back substitution
// and a final scatter through the row order
CMat solve_columns(const Lu &lu, const CMat &rhs) {
  const int n = lu.m.rows;
  CMat out(rhs.rows, n);
  std::vector<Cplx> x(n);
  for (int row = 0; row < rhs.rows; ++row) {
    for (int i = 0; i < n; ++i) x[i] = rhs.at(row, i);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) x[i] -= lu.m.at(j, i) * x[j];
      x[i] /= lu.m.at(i, i);
    }
    for (int i = n - 1; i >= 0; --i)
      for (int j = i + 1; j < n; ++j) x[i] -= lu.m.at(j, i) * x[j];
    for (int i = 0; i < n; ++i) out.at(row, lu.perm[i]) = x[i];
  }
  return out;
}

}  // namespace

CMat CMat::identity(int n) {
  CMat out(n, n);
  for (int i = 0; i < n; ++i) out.at(i, i) = 1.0;
  return out;
}

CMat cmat_mul(const CMat &x, const CMat &y) {
  CMat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      Cplx v = x.at(i, k);
      if (v == Cplx{}) continue;
      for (int j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
    }
  return out;
}

CMat cmat_add(const CMat &x, const CMat &y) {
  CMat out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
  return out;
}

Cplx cmat_det(const CMat &m) {
  Lu lu = lu_factor(m);
  Cplx det = lu.swaps % 2 == 0 ? 1.0 : -1.0;
  for (int i = 0; i < m.rows; ++i) det *= lu.m.at(i, i);
  return det;
}

double cmat_norm(const CMat &m) {
  double best = 0;
  for (const Cplx &v : m.a) best = std::max(best, std::abs(v));
  return best;
}

bool siegel_valid(const SiegelPoint &s, double tol) {
  const int g = s.g;
  if (s.omega.rows != g || s.omega.cols != g) return false;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      if (std::abs(s.omega.at(i, j) - s.omega.at(j, i)) > tol) return false;
  // Cholesky of Im(Omega) - tol: succeeds exactly when the smallest
  // eigenvalue clears the tolerance
  std::vector<double> y(size_t(g) * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      y[size_t(i) * g + j] = s.omega.at(i, j).imag();
      if (i == j) y[size_t(i) * g + j] -= tol;
    }
  for (int col = 0; col < g; ++col) {
    double d = y[size_t(col) * g + col];
    for (int k = 0; k < col; ++k) d -= y[size_t(col) * g + k] * y[size_t(col) * g + k];
    if (d <= 0) return false;
    d = std::sqrt(d);
    y[size_t(col) * g + col] = d;
    for (int r = col + 1; r < g; ++r) {
      double v = y[size_t(r) * g + col];
      for (int k = 0; k < col; ++k) v -= y[size_t(r) * g + k] * y[size_t(col) * g + k];
      y[size_t(r) * g + col] = v / d;
    }
  }
  return true;
}

bool real_symplectic(const CMat &gamma, double tol) {
  const int n = gamma.rows;
  if (gamma.cols != n || n % 2 != 0) return false;
  for (const Cplx &v : gamma.a)
    if (std::abs(v.imag()) > tol) return false;
  const int g = n / 2;
  CMat j(n, n);
  for (int i = 0; i < g; ++i) {
    j.at(i, g + i) = 1.0;
    j.at(g + i, i) = -1.0;
  }
  CMat gt(n, n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) gt.at(i, c) = gamma.at(c, i);
  CMat lhs = cmat_mul(cmat_mul(gt, j), gamma);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c)
      if (std::abs(lhs.at(i, c) - j.at(i, c)) > tol) return false;
  return true;
}

SiegelPoint random_siegel(int g, std::mt19937 &rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SiegelPoint s;
  s.g = g;
  s.omega = CMat(g, g);
  CMat m(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) m.at(i, j) = unit(rng);
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      double x = unit(rng);
      double y = 0.5 * (i == j ? 1.0 : 0.0);
      for (int k = 0; k < g; ++k) y += (m.at(k, i) * m.at(k, j)).real();
      s.omega.at(i, j) = Cplx(x, y);
      s.omega.at(j, i) = Cplx(x, y);
    }
  return s;
}

CMat random_symplectic_word(int g, int max_len, std::mt19937 &rng) {
  const int n = 2 * g;
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> coord(0, g - 1);
  std::uniform_int_distribution<int> len_d(1, max_len);

  CMat out = CMat::identity(n);
  const int len = len_d(rng);
  for (int step = 0; step < len; ++step) {
    CMat gen = CMat::identity(n);
    switch (kind(rng)) {
      case 0:  // the standard involution
        for (int i = 0; i < n; ++i)
          for (int c = 0; c < n; ++c) gen.at(i, c) = 0.0;
        for (int i = 0; i < g; ++i) {
          gen.at(i, g + i) = 1.0;
          gen.at(g + i, i) = -1.0;
        }
        break;
      case 1: {  // symmetric translation
        int i = coord(rng), j = coord(rng);
        double v = small(rng);
        gen.at(i, g + j) = v;
        gen.at(j, g + i) = v;
        break;
      }
      default: {  // elementary linear substitution, inverse transpose below
        int i = coord(rng), j = coord(rng);
        if (g == 1) {
          break;  // nothing beyond the identity in the linear block
        }
        if (i == j) j = (j + 1) % g;
        double v = small(rng) >= 0 ? 1.0 : -1.0;
        gen.at(i, j) = v;
        gen.at(g + j, g + i) = -v;
        break;
      }
    }
    out = cmat_mul(out, gen);
  }
  return out;
}

CMat cmat_solve_right(const CMat &m, const CMat &rhs) {
  return solve_columns(lu_factor(m), rhs);
}

namespace {

void split_blocks(const CMat &gamma, int g, CMat &a, CMat &b, CMat &c, CMat &d) {
  a = CMat(g, g);
  b = CMat(g, g);
  c = CMat(g, g);
  d = CMat(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      a.at(i, j) = gamma.at(i, j);
      b.at(i, j) = gamma.at(i, g + j);
      c.at(i, j) = gamma.at(g + i, j);
      d.at(i, j) = gamma.at(g + i, g + j);
    }
}

CMat denominator(const CMat &gamma, const SiegelPoint &s) {
  CMat a, b, c, d;
  split_blocks(gamma, s.g, a, b, c, d);
  return cmat_add(cmat_mul(c, s.omega), d);
}

// evaluation of the fixed polynomial test function: 1 + sum of entries plus
// the determinant, enough to separate slashed transforms
Cplx test_function(const SiegelPoint &s) {
  Cplx acc = 1.0;
  for (const Cplx &v : s.omega.a) acc += v;
  acc += cmat_det(s.omega);
  return acc;
}

Cplx cplx_pow_int(Cplx base, int e) {
  Cplx out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

SiegelPoint moebius(const CMat &gamma, const SiegelPoint &s) {
  if (!real_symplectic(gamma, 1e-6))
    throw std::invalid_argument("analytic: moebius needs a real symplectic matrix");
  if (!siegel_valid(s, 1e-9))
    throw std::invalid_argument("analytic: moebius needs a valid upper half-space point");
  CMat a, b, c, d;
  split_blocks(gamma, s.g, a, b, c, d);
  CMat num = cmat_add(cmat_mul(a, s.omega), b);
  CMat den = cmat_add(cmat_mul(c, s.omega), d);
  SiegelPoint out;
  out.g = s.g;
  out.omega = cmat_solve_right(den, num);
  return out;
}

Cplx automorphy_factor(const CMat &gamma, const SiegelPoint &s) {
  return cmat_det(denominator(gamma, s));
}

double moebius_assoc_residual(const CMat &g1, const CMat &g2, const SiegelPoint &s) {
  SiegelPoint lhs = moebius(cmat_mul(g1, g2), s);
  SiegelPoint rhs = moebius(g1, moebius(g2, s));
  double best = 0;
  for (size_t i = 0; i < lhs.omega.a.size(); ++i)
    best = std::max(best, std::abs(lhs.omega.a[i] - rhs.omega.a[i]));
  return best;
}

double cocycle_residual(const CMat &g1, const CMat &g2, const SiegelPoint &s) {
  Cplx whole = automorphy_factor(cmat_mul(g1, g2), s);
  Cplx split = automorphy_factor(g1, moebius(g2, s)) * automorphy_factor(g2, s);
  return std::abs(whole - split) / std::max(1.0, std::abs(whole));
}

double slash_residual(const CMat &g1, const CMat &g2, const SiegelPoint &s, int k) {
  // right action: slashing by g1 then g2 equals slashing by the product
  Cplx j2 = automorphy_factor(g2, s);
  SiegelPoint s2 = moebius(g2, s);
  Cplx j1 = automorphy_factor(g1, s2);
  Cplx staged = cplx_pow_int(1.0 / j2, k) * cplx_pow_int(1.0 / j1, k) *
                test_function(moebius(g1, s2));
  CMat prod = cmat_mul(g1, g2);
  Cplx direct = cplx_pow_int(1.0 / automorphy_factor(prod, s), k) *
                test_function(moebius(prod, s));
  return std::abs(staged - direct) / std::max(1.0, std::abs(direct));
}

}  // namespace symp::analytic
