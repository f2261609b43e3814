#pragma once

// Lattices in the two-step window p*L0 <= L <= p^{-1}*L0 around the standard
// symplectic lattice, at mod-p^2 precision: duals, p-isogeny pairs, full
// isotropic chains, their line decorations, and the duality swap that models
// the Atkin-Lehner involution, including its interaction with Weyl twists.
//
// Encoding: a lattice L in the window is stored through the subgroup
// {p x : x in L} of (Z/p^2)^{2g}, so every operation is exact integer
// arithmetic.  Homothety classes are compared through a normal form that
// pushes a configuration as high in the window as it goes.

#include "symp/finalg.hpp"
#include "symp/levels.hpp"
#include "symp/weyl.hpp"

#include <utility>
#include <vector>

namespace symp::lattice {

using finalg::Int;

struct Lattice {
  int g = 0;
  long long p = 0;
  levels::Subgroup enc;  // subgroup of (Z/p^2)^{2g} holding p * L

  bool operator==(const Lattice &o) const { return enc == o.enc; }
  bool operator<(const Lattice &o) const { return enc < o.enc; }
};

Lattice standard_lattice(int g, long long p);
Lattice lattice_from_enc(int g, long long p,
                         const std::vector<std::vector<long long>> &enc_gens);
std::vector<std::vector<long long>> lattice_rows(const Lattice &l);  // enc basis

// multiply by p^k for k in {-1, 0, 1}; scaling out of the window throws
Lattice scale_lattice(const Lattice &l, int k);
bool lattice_subset(const Lattice &inner, const Lattice &outer);
Int lattice_index(const Lattice &outer, const Lattice &inner);

// {x : <x, L> integral}, via the Smith form of the Gram data
Lattice dual_lattice(const Lattice &l);

// L <= L' of index p^g with p L' <= L and an isotropic kernel: L' pairs with
// itself inside p^{-1} Z
struct IsogenyPair {
  Lattice small, big;
  bool operator==(const IsogenyPair &o) const { return small == o.small && big == o.big; }
  bool operator<(const IsogenyPair &o) const {
    return small != o.small ? small < o.small : big < o.big;
  }
};

bool pair_valid(const IsogenyPair &pr);
IsogenyPair normalize_pair(const IsogenyPair &pr);
// (L <= L') -> (L' <= p^{-1} L), normalized; an involution on normal forms
IsogenyPair al_pair(const IsogenyPair &pr);
// all pairs with small = L0, one per Lagrangian of L0/p L0
std::vector<IsogenyPair> enumerate_based_pairs(int g, long long p);

// ascending members L_0 < L_1 < ... < L_g, each step of index p, ends tied
// together by duality
struct ChainOfLattices {
  std::vector<Lattice> members;
  bool operator==(const ChainOfLattices &o) const { return members == o.members; }
  bool operator<(const ChainOfLattices &o) const { return members < o.members; }
};

bool chain_valid(const ChainOfLattices &c);
ChainOfLattices normalize_chain(const ChainOfLattices &c);
// reversed dual chain, normalized; exact involution
ChainOfLattices al_chain(const ChainOfLattices &c);
IsogenyPair chain_to_pair(const ChainOfLattices &c);
std::vector<ChainOfLattices> enumerate_based_chains(int g, long long p);

// a chain remembered through its base lattice and an ordered system of 2g
// line generators; entry k holds the encoded generator of the k-th line as an
// element of the base, so the j-th member is base plus p^{-1} times the span
// of the first j lines
struct DecoratedChain {
  Lattice base;
  std::vector<std::vector<long long>> line_enc;

  bool operator==(const DecoratedChain &o) const {
    return base == o.base && line_enc == o.line_enc;
  }
};

DecoratedChain decorated_from_frame(const levels::TLevel &frame);
ChainOfLattices chain_of(const DecoratedChain &dc);  // normalized
// relabel the lines by the two-block permutation of sigma
DecoratedChain weyl_move(const weyl::WeylElt &sigma, const DecoratedChain &dc);
// transport the decoration through the duality swap: base moves to the top
// member, partner lines come in reversed with their scales exchanged
DecoratedChain al_decorated(const DecoratedChain &dc);

struct SquareReport {
  int chains = 0;
  bool commutes = true;
};
// project-then-swap versus swap-then-project over every based chain
SquareReport square_commutes(int g, long long p);

struct NoncommutationReport {
  int frames = 0;
  bool id_commutes = true;
  bool witness_found = false;
  int witness_sigma = -1;  // weyl encoding of the twist
  int witness_frame = -1;  // index into the frame enumeration
  ChainOfLattices lhs, rhs;
  // weyl encoding of sigma -> encoding of the unique sigma' with
  // al(v^sigma(c)) = v^{sigma'}(al(c)) for every frame, or -1 if none exists
  std::vector<std::pair<int, int>> companions;
};

NoncommutationReport al_weyl_noncommutation(int g, long long p,
                                            bool search_companions = true);

}  // namespace symp::lattice
