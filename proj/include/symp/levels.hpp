#pragma once

// Combinatorial level structures on the module (Z/nZ)^{2g} with its standard
// alternating pairing: Lagrangian subgroups, isotropic flags, and ordered
// 2g-line hyperbolic frames, together with the group action, the forgetful
// projections between kinds, Weyl twists of frames, and the connectivity
// partitions those twists generate.

#include "symp/finalg.hpp"
#include "symp/grp.hpp"
#include "symp/weyl.hpp"

#include <vector>

namespace symp::levels {

using finalg::Int;
using finalg::ModMatrix;

// A subgroup of (Z/nZ)^{2g}, held as the canonical row Hermite form of the
// integer lattice generated by lifts of its generators together with n times
// the standard basis.  Equality of subgroups is equality of the form.
struct Subgroup {
  int g = 0;
  long long n = 0;
  finalg::IntMatrix basis;  // 2g x 2g upper triangular, canonical

  bool operator==(const Subgroup &o) const { return basis == o.basis; }
  bool operator<(const Subgroup &o) const { return basis.a < o.basis.a; }
};

Subgroup subgroup_span(int g, long long n,
                       const std::vector<std::vector<long long>> &gens);
Int subgroup_order(const Subgroup &s);
bool subgroup_contains(const Subgroup &s, const std::vector<long long> &x);
bool subgroup_isotropic(const Subgroup &s);

// ascending chain of isotropic subgroups; a full flag has g steps of orders
// n^1 .. n^g, a Lagrangian alone is the 1-step chain, and the tail chain
// keeping steps k+1 .. g models the intermediate kinds
using FlagLevel = std::vector<Subgroup>;

// ordered frame of 2g cyclic order-n lines; slots i and g+i span a hyperbolic
// plane, the two g-blocks span complementary Lagrangians, and lines in
// different planes pair to zero
struct TLevel {
  std::vector<Subgroup> lines;

  bool operator==(const TLevel &o) const { return lines == o.lines; }
  bool operator<(const TLevel &o) const { return lines < o.lines; }
};

FlagLevel standard_flag(int g, long long n);     // spans of e_1..e_j
FlagLevel standard_lagrangian(int g, long long n);
TLevel standard_frame(int g, long long n);       // lines of e_i and f_i

bool t_structure_valid(const TLevel &t);

// full enumerations over a prime field, sorted canonical lists
std::vector<FlagLevel> enumerate_lagrangians(int g, long long p);
std::vector<FlagLevel> enumerate_flags(int g, long long p);
std::vector<FlagLevel> enumerate_tail_flags(int g, long long p, int k);
std::vector<TLevel> enumerate_frames(int g, long long p);

Subgroup act_subgroup(const ModMatrix &gamma, const Subgroup &s);
FlagLevel act_flag(const ModMatrix &gamma, const FlagLevel &f);
TLevel act_frame(const ModMatrix &gamma, const TLevel &t);

// forgetful maps
FlagLevel flag_tail(const FlagLevel &full, int k);       // drop the first k steps
FlagLevel frame_to_flag(const TLevel &t);                // partial sums of the first block
FlagLevel frame_to_tail(const TLevel &t, int k);

// frame relabeling: the line in slot j moves in from slot sigma^{-1}(j) of
// the induced two-block permutation.  Composition-compatible:
// twist(a, twist(b, t)) = twist(ab, t).
TLevel weyl_twist(const weyl::WeylElt &sigma, const TLevel &t);

// finest partition of `targets` (tail flags at index k) where two entries are
// joined whenever some frame and some twist in the set project onto them;
// returns a component label per target, labels dense from 0 in first-seen
// order
std::vector<int> connected_components(const std::vector<FlagLevel> &targets,
                                      const std::vector<TLevel> &frames,
                                      const std::vector<weyl::WeylElt> &twists,
                                      int k);

// labels of the projection fibers: target i maps to the index of its image
// in the coarser list
std::vector<int> fiber_labels(const std::vector<FlagLevel> &targets,
                              const std::vector<FlagLevel> &coarser, int drop);

bool same_partition(const std::vector<int> &a, const std::vector<int> &b);

}  // namespace symp::levels
