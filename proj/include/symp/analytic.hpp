#pragma once

// Floating-point checks of the transcendental layer: the action of real
// symplectic matrices on the Siegel upper half-space by fractional linear
// transformations, and the determinant automorphy factor with its cocycle
// rule.  Everything here is double precision with explicit tolerances; the
// exact statements live in the integer modules.

#include <complex>
#include <random>
#include <vector>

namespace symp::analytic {

using Cplx = std::complex<double>;

struct CMat {
  int rows = 0, cols = 0;
  std::vector<Cplx> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

  Cplx &at(int i, int j) { return a[size_t(i) * cols + j]; }
  Cplx at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static CMat identity(int n);
};

CMat cmat_mul(const CMat &x, const CMat &y);
CMat cmat_add(const CMat &x, const CMat &y);
// solve x * m = rhs by Gaussian elimination with partial pivoting; throws on
// a pivot below the conditioning floor
CMat cmat_solve_right(const CMat &m, const CMat &rhs);
Cplx cmat_det(const CMat &m);
double cmat_norm(const CMat &m);  // max absolute entry

struct SiegelPoint {
  int g = 0;
  CMat omega;  // symmetric with positive definite imaginary part
};

// symmetry defect and positive definiteness of the imaginary part
bool siegel_valid(const SiegelPoint &s, double tol = 1e-9);
// gamma real within tol and gamma^T J gamma = J within tol
bool real_symplectic(const CMat &gamma, double tol = 1e-9);

// interior point X + i Y with Y = M^T M + 1/2, entries of modest size
SiegelPoint random_siegel(int g, std::mt19937 &rng);
// word of length <= max_len in the integer generators (J, symmetric
// translations, elementary linear substitutions)
CMat random_symplectic_word(int g, int max_len, std::mt19937 &rng);

// (A Omega + B)(C Omega + D)^{-1}
SiegelPoint moebius(const CMat &gamma, const SiegelPoint &s);
// det(C Omega + D)
Cplx automorphy_factor(const CMat &gamma, const SiegelPoint &s);

// |(g1 g2).O - g1.(g2.O)| in the entry norm
double moebius_assoc_residual(const CMat &g1, const CMat &g2, const SiegelPoint &s);
// relative defect of j(g1 g2, O) = j(g1, g2.O) j(g2, O)
double cocycle_residual(const CMat &g1, const CMat &g2, const SiegelPoint &s);
// relative defect of (f|[g1]_k)|[g2]_k = f|[g1 g2]_k on a fixed polynomial
// test function, with trivial multiplier
double slash_residual(const CMat &g1, const CMat &g2, const SiegelPoint &s, int k);

}  // namespace symp::analytic
