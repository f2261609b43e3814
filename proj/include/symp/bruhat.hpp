#pragma once

// Bruhat cells and their consequences: the cell-extraction map into the Weyl
// group (fast rank-profile path plus an exhaustive product-set oracle),
// standard parabolic subgroups as flag stabilizers, Tits axiom checks, the
// conjugate census, generation by pairs of parabolic conjugates, the
// sign-vector decomposition into (B, P) double cosets, and indices of the
// congruence images over Z/nZ.

#include "symp/finalg.hpp"
#include "symp/grp.hpp"
#include "symp/weyl.hpp"

#include <vector>

namespace symp::bruhat {

using finalg::Int;
using finalg::ModMatrix;
using weyl::WeylElt;

// ---------------------------------------------------------------------------
// block-shape subgroup predicates over Z/nZ (CRT-transparent: the conditions
// are entrywise zero constraints)

// lower-left block zero, A upper-triangular, D lower-triangular
bool in_borel(const ModMatrix &m);

// stabilizer of the partial flag <e_1..e_j> for j in kept_steps (1-based j)
bool stabilizes_flag_steps(const ModMatrix &m, const std::vector<int> &kept_steps);

// P_{I_k}, I_k = {s_1..s_k}: keeps the steps k+1 .. g.  k = 0 is the Borel,
// k = g-1 the Siegel parabolic (Lagrangian stabilizer).
bool in_chain_parabolic(const ModMatrix &m, int k);

bool is_diagonal(const ModMatrix &m);

// ---------------------------------------------------------------------------
// cells (prime modulus)

// the unique w with m in B lift(w) B, extracted from the rank profile of the
// matrix rewritten in the order (e_1..e_g, f_g..f_1), where the Borel becomes
// triangular
WeylElt bruhat_cell(const ModMatrix &m);

// encoded cell index per enumerated element, fast path
std::vector<int> cell_table_fast(const grp::EnumResult &e);

// encoded cell index per enumerated element, by expanding every product set
// b1 lift(w) b2; the ground truth the fast path is measured against
std::vector<int> cell_table_by_products(const grp::EnumResult &e);

// true iff bruhat_cell(m) lies in the subgroup generated by the listed
// generator indices
bool parabolic_membership(const ModMatrix &m, const std::vector<int> &gen_indices);

// ---------------------------------------------------------------------------
// reports

struct TitsReport {
  bool t1_holds = false;      // BsB BwB inside BswB union BwB, all s, w
  bool t2_holds = false;      // sBs differs from B for every s
  long long products_checked = 0;
};
TitsReport tits_axioms_check(int g, long long p, const grp::EnumResult &e);

struct CensusReport {
  long long distinct_conjugates = 0;   // distinct sigma P_{I_k} sigma^{-1}
  long long contained_in_next = 0;     // of those, subsets of P_{I_{k+1}}
};
CensusReport parabolic_conjugate_census(int g, long long p, int k,
                                        const grp::EnumResult &e,
                                        const std::vector<int> *cells_opt = nullptr);

// closure of Siegel P with its conjugate by lift(sigma); true iff the closure
// is the whole group
bool generation_check(int g, long long p, const WeylElt &sigma, size_t cap);

// sign vector of the (B, Siegel-P) double coset of m: bit j set iff the
// coordinate landing on slot j crosses blocks.  Constant on cosets of the
// cell modulo the permutation part.
int parahoric_sign_bits(const WeylElt &cell);

struct ParahoricReport {
  std::vector<long long> sizes;        // indexed by sign bits, 0 .. 2^g - 1
  bool partition_ok = false;           // disjoint and covering
  bool matches_products = false;       // equals the directly built product sets
};
ParahoricReport parahoric_decomposition(int g, long long p, const grp::EnumResult &e,
                                        bool verify_products);

// ---------------------------------------------------------------------------
// congruence images over Z/nZ

struct ImageTag {
  enum Kind { reduction_kernel, chain_parabolic, torus } kind;
  int k = 0;  // chain index when kind == chain_parabolic
};

bool in_image(const ModMatrix &m, int g, const ImageTag &t);

// closed forms; chain parabolics go through the flag count per prime power
Int image_order_formula(int g, long long n, const ImageTag &t);
Int congruence_index_formula(int g, long long n, const ImageTag &t);

// number of partial flags of type I_k over Z/n (free direct-summand flags)
Int flag_count_formula(int g, long long n, int k);

}  // namespace symp::bruhat
