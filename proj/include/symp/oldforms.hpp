#pragma once

// Permutation modules on finite coset spaces of the symplectic group: rational
// function spaces on G/K for K a torus, Borel, or chain parabolic, the
// pullback and fiber-sum operators along the natural projections, the right
// Weyl action on G/T, and the correspondence operators those compose to.
// Everything is exact over Q.

#include "symp/finalg.hpp"
#include "symp/grp.hpp"
#include "symp/weyl.hpp"

#include <string>
#include <vector>

namespace symp::oldforms {

using finalg::Int;
using finalg::ModMatrix;
using finalg::Rat;
using finalg::RatMatrix;

// a fully enumerated group with positional element ids
struct GroupTable {
  int g = 0;
  long long p = 0;
  grp::PackSpec spec;
  std::vector<grp::PackedKey> elems;  // sorted

  int size() const { return static_cast<int>(elems.size()); }
  int index_of(const grp::PackedKey &k) const;
  int index_of(const ModMatrix &m) const;
  ModMatrix element(int i) const;
  int mul(int a, int b) const;
};

GroupTable group_table(int g, long long p, size_t cap = 4000000);

// left cosets gK listed by their minimal member
struct CosetSpace {
  const GroupTable *table = nullptr;
  std::string subgroup_name;
  std::vector<int> members;   // element ids of K, sorted
  std::vector<int> coset_of;  // element id -> coset id
  std::vector<int> reps;      // coset id -> minimal element id
  int size() const { return static_cast<int>(reps.size()); }
};

CosetSpace coset_space(const GroupTable &t, std::vector<int> members,
                       std::string name);
CosetSpace torus_space(const GroupTable &t);
CosetSpace borel_space(const GroupTable &t);
CosetSpace chain_space(const GroupTable &t, int k);  // k = g-1 keeps only the
                                                     // Lagrangian step

// coset id map along G/K_fine -> G/K_coarse; requires K_fine inside K_coarse
std::vector<int> projection(const CosetSpace &fine, const CosetSpace &coarse);
int fiber_degree(const CosetSpace &fine, const CosetSpace &coarse);

// exact operator between function spaces, acting by f -> m f on coordinate
// vectors indexed by cosets
struct ModuleOperator {
  const CosetSpace *dom = nullptr;
  const CosetSpace *cod = nullptr;
  RatMatrix m;
};

ModuleOperator pullback(const CosetSpace &fine, const CosetSpace &coarse);
ModuleOperator pushforward(const CosetSpace &fine, const CosetSpace &coarse);
ModuleOperator compose(const ModuleOperator &a, const ModuleOperator &b);

// right multiplication by the monomial lift of sigma on G/T; well defined
// because the lift normalizes the torus, and independent of the torus defect
// of the lift for the same reason
std::vector<int> weyl_permutation(const CosetSpace &torus, const weyl::WeylElt &sigma);
ModuleOperator weyl_operator(const CosetSpace &torus, const weyl::WeylElt &sigma);

// push(v^sigma pull): the correspondence operator on functions over the target
// space, assembled in one pass over G/T
ModuleOperator correspondence_D(const CosetSpace &torus, const CosetSpace &target,
                                const weyl::WeylElt &sigma);

// (#(P\G/B), #(B\G/B)) by exhaustive double-coset marking, no Weyl theory
std::pair<int, int> double_coset_dimensions(const GroupTable &t);

struct EigenPullbackReport {
  int dim_plus = 0;        // eigenspace of +degree
  int dim_minus = 0;       // eigenspace of -degree
  Int merged_order = 0;    // order of the subgroup generated by B and sigma B sigma^-1
  int merged_cosets = 0;
  bool contained = true;   // both eigenspaces inside the pullback span
};

EigenPullbackReport eigen_pullback_check(const GroupTable &t, const weyl::WeylElt &sigma);

// Im(D^sigma D^sigma') = Im(D^{sigma sigma'}) over every Weyl pair, by exact
// span comparison with a modular full-rank fast path
struct ImagePairReport {
  int pairs = 0;
  bool all_equal = true;
  int full_rank_count = 0;  // operators whose image is already everything
};

ImagePairReport image_composition_check(const CosetSpace &torus,
                                        const CosetSpace &target);

struct CopyReport {
  int base_copy_dim = 0;        // rank of the pullback copy from the Lagrangian level
  int distinct_images = 0;      // distinct subspaces D^sigma(copy)
  int joint_span_dim = 0;
  int bi_invariant_dim = 0;     // g! 2^g, the room the double cosets leave
  bool room_attained = false;   // whether the D system alone fills that room
  unsigned seed = 0;
  int distinct_probe_vectors = 0;  // distinct D^sigma c for one generic probe c
};

CopyReport copy_independence_analog(const GroupTable &t, unsigned seed);

}  // namespace symp::oldforms
