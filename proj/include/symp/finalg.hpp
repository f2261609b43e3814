#pragma once

// Exact linear algebra substrate: matrices over Z/nZ, over Z (arbitrary
// precision) and over Q.  Everything downstream (group enumeration, coset
// combinatorics, lattice bookkeeping) reduces to these kernels, so nothing
// here is allowed to round: Z/n arithmetic is int64 with explicit reduction,
// Z and Q entries are boost::multiprecision.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symp::finalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct NotInvertible : std::runtime_error {
  // pivot residue that stopped the elimination, and the modulus
  long long pivot;
  long long modulus;
  NotInvertible(long long piv, long long mod)
      : std::runtime_error("matrix not invertible mod " + std::to_string(mod) +
                           " (pivot " + std::to_string(piv) + ")"),
        pivot(piv), modulus(mod) {}
};

// ---------------------------------------------------------------------------
// matrices over Z/nZ, entries stored reduced to [0, n)

struct ModMatrix {
  long long mod = 0;
  int rows = 0, cols = 0;
  std::vector<long long> a;  // row major

  ModMatrix() = default;
  ModMatrix(int r, int c, long long m) : mod(m), rows(r), cols(c), a(size_t(r) * c, 0) {}

  long long &at(int i, int j) { return a[size_t(i) * cols + j]; }
  long long at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static ModMatrix identity(int n, long long m);
  ModMatrix transpose() const;

  bool operator==(const ModMatrix &o) const {
    return mod == o.mod && rows == o.rows && cols == o.cols && a == o.a;
  }
};

long long mod_reduce(long long x, long long m);
long long mod_pow(long long b, long long e, long long m);
long long mod_inverse_scalar(long long x, long long m);  // throws NotInvertible

ModMatrix mat_mul_mod(const ModMatrix &x, const ModMatrix &y);
ModMatrix mat_add_mod(const ModMatrix &x, const ModMatrix &y);
ModMatrix mat_scale_mod(long long c, const ModMatrix &x);

// Inverse over Z/n.  Prime n: Gaussian elimination.  Prime power p^k: invert
// mod p, then Hensel-lift.  Composite n: CRT over the prime-power factors.
ModMatrix mat_inv_mod(const ModMatrix &x);

// rank of a matrix over F_p (prime modulus only)
int rank_mod(const ModMatrix &x);

// reduction Z/n -> Z/m for m | n
ModMatrix mat_reduce_to(const ModMatrix &x, long long m);

std::vector<std::pair<long long, int>> factorize(long long n);

// ---------------------------------------------------------------------------
// matrices over Z

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

  Int &at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int &at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static IntMatrix identity(int n);
  IntMatrix transpose() const;

  bool operator==(const IntMatrix &o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

IntMatrix int_mul(const IntMatrix &x, const IntMatrix &y);
IntMatrix int_scale(const Int &c, const IntMatrix &x);

// Smith normal form: U * A * V = D with U, V unimodular, D diagonal with
// d_1 | d_2 | ... (nonnegative).  Naive gcd pivoting; inputs are <= 6x6 or
// similar, so no pivot-size cleverness is needed.
struct SNFResult {
  IntMatrix u, d, v;
};
SNFResult smith_normal_form(const IntMatrix &x);

// Hermite normal form of the lattice spanned by the ROWS of x
// (row-style: echelon, positive pivots, entries above a pivot reduced into
// [0, pivot)).  Returns only the nonzero rows.
IntMatrix hnf_rows(const IntMatrix &x);

// basis of the integer kernel {v : x v = 0}, columns of the result
IntMatrix int_kernel(const IntMatrix &x);

Int int_det(const IntMatrix &x);          // Bareiss, exact
int rank_int(const IntMatrix &x);         // fraction-free

// ---------------------------------------------------------------------------
// matrices over Q

struct RatMatrix {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

  Rat &at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat &at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static RatMatrix identity(int n);
  RatMatrix transpose() const;

  bool operator==(const RatMatrix &o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

RatMatrix rat_mul(const RatMatrix &x, const RatMatrix &y);
RatMatrix rat_from_int(const IntMatrix &x);
IntMatrix rat_clear_denominators(const RatMatrix &x);  // row-wise lcm scaling

// rank over Q.  Row-wise denominator clearing, then fraction-free Bareiss
// elimination over Z; no tolerances anywhere.
int rank_exact(const RatMatrix &x);

// basis of {v : x v = 0}, returned as columns; exact Gauss-Jordan
RatMatrix nullspace_exact(const RatMatrix &x);

// basis for colspan(a) ∩ colspan(b), via the kernel of [a | -b]
RatMatrix intersect_spans(const RatMatrix &a, const RatMatrix &b);

// colspan(sub) ⊆ colspan(big), decided by rank comparisons
bool span_contains(const RatMatrix &big, const RatMatrix &sub);
bool spans_equal(const RatMatrix &a, const RatMatrix &b);

RatMatrix concat_cols(const RatMatrix &a, const RatMatrix &b);

}  // namespace symp::finalg
