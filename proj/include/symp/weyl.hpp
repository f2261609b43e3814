#pragma once

// The hyperoctahedral Weyl group of rank g: signed permutations (pi, eps)
// acting by w(e_i) = eps_i e_{pi(i)}.  Generators are the adjacent swaps
// s_1 .. s_{g-1} and the last-coordinate sign flip s_g.  Lengths are counted
// against the type C root system (e_i - e_j, e_i + e_j for i < j, and 2 e_i),
// and elements lift to monomial symplectic matrices.

#include "symp/finalg.hpp"

#include <vector>

namespace symp::weyl {

using finalg::ModMatrix;

struct WeylElt {
  std::vector<int> perm;   // 0-based permutation of {0..g-1}
  std::vector<int> signs;  // +1 or -1 per coordinate

  bool operator==(const WeylElt &o) const { return perm == o.perm && signs == o.signs; }
  bool operator<(const WeylElt &o) const {
    return perm != o.perm ? perm < o.perm : signs < o.signs;
  }
  int rank() const { return (int)perm.size(); }
};

WeylElt identity_elt(int g);

// (a b)(e_i) = a(b(e_i)): apply b first
WeylElt compose(const WeylElt &a, const WeylElt &b);
WeylElt inverse(const WeylElt &w);

// generator s_{i+1} for i in 0 .. g-1; the last one flips coordinate g-1
WeylElt generator(int g, int i);

// all 2^g g! elements, sorted
std::vector<WeylElt> all_elements(int g);

// number of positive roots sent negative
int length(const WeylElt &w);

// a shortest word in generator indices, leftmost factor first
std::vector<int> reduced_word(const WeylElt &w);

WeylElt longest_elt(int g);

int elt_order(const WeylElt &w);

// dense index: lexicographic rank of perm, times 2^g, plus the sign bits
int encode(const WeylElt &w);
WeylElt decode(int g, int idx);

// The induced permutation of the 2g basis vectors e_1..e_g, f_1..f_g
// (f_i stored at slot g + i): an unflipped coordinate keeps its block,
// a flipped one crosses over.
std::vector<int> two_block_perm(const WeylElt &w);
WeylElt from_two_block_perm(const std::vector<int> &sigma);

// monomial symplectic lift: e_i -> e_{pi(i)}, f_i -> f_{pi(i)} where the sign
// is +, and e_i -> -f_{pi(i)}, f_i -> e_{pi(i)} where it is -.  At g = 1 the
// flip lifts to the standard form matrix itself.
ModMatrix matrix_lift(const WeylElt &w, long long n);

// subgroup generated by { s_{i+1} : i in gen_indices }, sorted
std::vector<WeylElt> parabolic_subgroup(int g, const std::vector<int> &gen_indices);

// minimal-length representatives for the left cosets w W_I, sorted
std::vector<WeylElt> min_coset_reps(int g, const std::vector<int> &gen_indices);

}  // namespace symp::weyl
