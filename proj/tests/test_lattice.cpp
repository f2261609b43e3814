#include "doctest.h"

#include "symp/grp.hpp"
#include "symp/lattice.hpp"
#include "symp/levels.hpp"
#include "symp/weyl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

using namespace symp;
using lattice::ChainOfLattices;
using lattice::DecoratedChain;
using lattice::IsogenyPair;
using lattice::Lattice;

namespace {

finalg::Int int_pow(long long b, int e) {
  finalg::Int out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

Lattice enc_span(int g, long long p, std::vector<std::vector<long long>> gens) {
  return lattice::lattice_from_enc(g, p, gens);
}

bool pair_isotropic(const IsogenyPair &pr) {
  const long long p = pr.big.p;
  auto rows = lattice::lattice_rows(pr.big);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j)
      if (grp::pair_vectors(rows[i], rows[j], p * p) % p != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("window scaling, containment and indices") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    Lattice l0 = lattice::standard_lattice(g, p);
    Lattice up = lattice::scale_lattice(l0, -1);   // p^{-1} L0
    Lattice down = lattice::scale_lattice(l0, 1);  // p L0

    CHECK(lattice::lattice_subset(down, l0));
    CHECK(lattice::lattice_subset(l0, up));
    CHECK_FALSE(lattice::lattice_subset(up, l0));

    CHECK(lattice::lattice_index(l0, down) == int_pow(p, 2 * g));
    CHECK(lattice::lattice_index(up, down) == int_pow(p, 4 * g));
    CHECK(lattice::lattice_index(l0, l0) == 1);

    CHECK(lattice::scale_lattice(up, 1) == l0);
    CHECK(lattice::scale_lattice(down, -1) == l0);
    CHECK_THROWS_AS(lattice::scale_lattice(up, -1), std::logic_error);
    CHECK_THROWS_AS((void)lattice::lattice_index(down, l0), std::logic_error);
  }
}

TEST_CASE("duals of the window markers and double duality") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    Lattice l0 = lattice::standard_lattice(g, p);
    Lattice up = lattice::scale_lattice(l0, -1);
    Lattice down = lattice::scale_lattice(l0, 1);

    CHECK(lattice::dual_lattice(l0) == l0);
    CHECK(lattice::dual_lattice(down) == up);
    CHECK(lattice::dual_lattice(up) == down);

    finalg::Int whole = int_pow(p, 4 * g);
    for (const ChainOfLattices &c : lattice::enumerate_based_chains(g, p)) {
      for (size_t j = 0; j + 1 < c.members.size(); ++j) {
        // duality reverses inclusions
        CHECK(lattice::lattice_subset(lattice::dual_lattice(c.members[j + 1]),
                                      lattice::dual_lattice(c.members[j])));
      }
      for (const Lattice &l : c.members) {
        Lattice dd = lattice::dual_lattice(lattice::dual_lattice(l));
        CHECK(dd == l);
        CHECK(levels::subgroup_order(l.enc) *
                  levels::subgroup_order(lattice::dual_lattice(l).enc) ==
              whole);
      }
    }
  }

  // a mixed-profile fixed point: span(p^{-1} e, p f) is its own dual without
  // being a rescale of the standard lattice
  Lattice mixed = enc_span(1, 2, {{1, 0}});
  CHECK(lattice::dual_lattice(mixed) == mixed);
  CHECK_FALSE(mixed == lattice::standard_lattice(1, 2));
  CHECK_FALSE(mixed == lattice::scale_lattice(lattice::standard_lattice(1, 2), -1));
}

TEST_CASE("based pair enumeration matches the mod-p count") {
  const std::map<std::pair<int, long long>, size_t> expect = {
      {{1, 2}, 3}, {{1, 3}, 4}, {{2, 2}, 15}, {{2, 3}, 40}};
  for (const auto &[key, count] : expect) {
    auto [g, p] = key;
    auto pairs = lattice::enumerate_based_pairs(g, p);
    CHECK(pairs.size() == count);
    CHECK(pairs.size() == levels::enumerate_lagrangians(g, p).size());
    std::set<IsogenyPair> seen(pairs.begin(), pairs.end());
    CHECK(seen.size() == count);
    Lattice l0 = lattice::standard_lattice(g, p);
    for (const IsogenyPair &pr : pairs) {
      CHECK(pr.small == l0);
      CHECK(lattice::pair_valid(pr));
      CHECK(pair_isotropic(pr));
      CHECK(lattice::normalize_pair(pr) == pr);
    }
  }
}

TEST_CASE("pair swap is an involution up to homothety") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    Lattice l0 = lattice::standard_lattice(g, p);
    Lattice up = lattice::scale_lattice(l0, -1);
    for (const IsogenyPair &pr : lattice::enumerate_based_pairs(g, p)) {
      IsogenyPair swapped = lattice::al_pair(pr);
      CHECK(swapped.small == pr.big);
      CHECK(swapped.big == up);
      CHECK(lattice::lattice_subset(swapped.small, swapped.big));
      CHECK(lattice::lattice_index(swapped.big, swapped.small) == int_pow(p, g));
      CHECK(lattice::lattice_subset(lattice::scale_lattice(swapped.big, 1), swapped.small));
      CHECK(lattice::al_pair(swapped) == pr);

      // the configuration is homothety-normalized, so a shifted copy of the
      // input lands on the same orbit representatives
      IsogenyPair shifted;
      shifted.small = lattice::scale_lattice(pr.small, 1);
      shifted.big = lattice::scale_lattice(pr.big, 1);
      CHECK(lattice::normalize_pair(shifted) == pr);
      CHECK(lattice::al_pair(shifted) == swapped);
    }
  }

  // the swapped side of a based pair pairs non-integrally with itself
  auto pairs12 = lattice::enumerate_based_pairs(1, 2);
  for (const IsogenyPair &pr : pairs12) CHECK_FALSE(pair_isotropic(lattice::al_pair(pr)));
}

TEST_CASE("based chain enumeration matches the flag count") {
  const std::map<std::pair<int, long long>, size_t> expect = {
      {{1, 2}, 3}, {{1, 3}, 4}, {{2, 2}, 45}, {{2, 3}, 160}};
  for (const auto &[key, count] : expect) {
    auto [g, p] = key;
    auto chains = lattice::enumerate_based_chains(g, p);
    CHECK(chains.size() == count);
    CHECK(chains.size() == levels::enumerate_flags(g, p).size());
    std::set<ChainOfLattices> seen(chains.begin(), chains.end());
    CHECK(seen.size() == count);
    Lattice l0 = lattice::standard_lattice(g, p);
    for (const ChainOfLattices &c : chains) {
      CHECK(c.members.size() == size_t(g + 1));
      CHECK(c.members.front() == l0);
      CHECK(lattice::chain_valid(c));
      CHECK(lattice::pair_valid(lattice::chain_to_pair(c)));
      CHECK(lattice::normalize_chain(c) == c);
    }
  }
}

TEST_CASE("chain swap is an exact involution and reverses duals") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    Lattice up = lattice::scale_lattice(lattice::standard_lattice(g, p), -1);
    for (const ChainOfLattices &c : lattice::enumerate_based_chains(g, p)) {
      ChainOfLattices swapped = lattice::al_chain(c);
      CHECK(lattice::chain_valid(swapped));
      CHECK(swapped.members.front() == c.members.back());
      CHECK(swapped.members.back() == up);
      CHECK(lattice::al_chain(swapped) == c);
      // each member of the swap is the dual of the mirror member, scaled one
      // step back up
      for (int j = 0; j <= g; ++j)
        CHECK(swapped.members[j] ==
              lattice::scale_lattice(lattice::dual_lattice(c.members[g - j]), -1));
    }
  }

  // frozen middle member of the swapped standard chain at g = 2, p = 2:
  // adding the last partner direction to the top Lagrangian member
  auto chains = lattice::enumerate_based_chains(2, 2);
  ChainOfLattices std_chain;
  std_chain.members.push_back(lattice::standard_lattice(2, 2));
  std_chain.members.push_back(enc_span(2, 2, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}, {1, 0, 0, 0}}));
  std_chain.members.push_back(enc_span(2, 2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}}));
  CHECK(std::find(chains.begin(), chains.end(), std_chain) != chains.end());
  ChainOfLattices swapped = lattice::al_chain(std_chain);
  CHECK(swapped.members[0] == std_chain.members[2]);
  CHECK(swapped.members[1] == enc_span(2, 2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}}));
  CHECK(swapped.members[2] == lattice::scale_lattice(lattice::standard_lattice(2, 2), -1));

  // at rank one the chain swap and the pair swap are the same operation
  for (long long p : {2LL, 3LL}) {
    for (const ChainOfLattices &c : lattice::enumerate_based_chains(1, p)) {
      IsogenyPair via_pair = lattice::al_pair(lattice::chain_to_pair(c));
      ChainOfLattices sc = lattice::al_chain(c);
      CHECK(sc.members.front() == via_pair.small);
      CHECK(sc.members.back() == via_pair.big);
    }
  }
}

TEST_CASE("projecting to the end pair commutes with the swap") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {2, 2}, {2, 3}}) {
    lattice::SquareReport rep = lattice::square_commutes(g, p);
    CHECK(rep.commutes);
    CHECK(rep.chains == (int)lattice::enumerate_based_chains(g, p).size());
  }
  CHECK(lattice::square_commutes(2, 2).chains == 45);
}

TEST_CASE("decorated chains rebuild their flags and compose under twists") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}}) {
    levels::TLevel std_frame = levels::standard_frame(g, p);
    DecoratedChain dec = lattice::decorated_from_frame(std_frame);

    // the standard frame decorates the standard flag chain
    ChainOfLattices built = lattice::chain_of(dec);
    ChainOfLattices expect;
    expect.members.push_back(lattice::standard_lattice(g, p));
    for (const levels::Subgroup &step : levels::standard_flag(g, p)) {
      std::vector<std::vector<long long>> gens;
      for (int r = 0; r < 2 * g; ++r) {
        std::vector<long long> row(2 * g);
        for (int c2 = 0; c2 < 2 * g; ++c2)
          row[c2] = static_cast<long long>(step.basis.at(r, c2));
        gens.push_back(row);
      }
      expect.members.push_back(enc_span(g, p, gens));
    }
    CHECK(built == expect);

    // twisting the decoration composes, and the induced chain is the chain of
    // the twisted frame
    std::vector<weyl::WeylElt> ws = weyl::all_elements(g);
    for (const weyl::WeylElt &a : ws) {
      DecoratedChain da = lattice::weyl_move(a, dec);
      ChainOfLattices ca = lattice::chain_of(da);
      levels::TLevel ta = levels::weyl_twist(a, std_frame);
      levels::FlagLevel fa = levels::frame_to_flag(ta);
      for (int j = 1; j <= g; ++j) {
        std::vector<std::vector<long long>> gens;
        for (int r = 0; r < 2 * g; ++r) {
          std::vector<long long> row(2 * g);
          for (int c2 = 0; c2 < 2 * g; ++c2)
            row[c2] = static_cast<long long>(fa[j - 1].basis.at(r, c2));
          gens.push_back(row);
        }
        CHECK(ca.members[j] == enc_span(g, p, gens));
      }
      for (const weyl::WeylElt &b : ws)
        CHECK(lattice::weyl_move(weyl::compose(a, b), dec) ==
              lattice::weyl_move(a, lattice::weyl_move(b, dec)));
    }
  }

  // a sign flip on the swapped side pushes a line past the window edge; the
  // rebuilt chain comes back one homothety step lower, with a mixed-profile
  // top member
  DecoratedChain dec12 = lattice::decorated_from_frame(levels::standard_frame(1, 2));
  DecoratedChain al12 = lattice::al_decorated(dec12);
  weyl::WeylElt flip{{0}, {-1}};
  ChainOfLattices diag = lattice::chain_of(lattice::weyl_move(flip, al12));
  CHECK(diag.members[0] == enc_span(1, 2, {{2, 0}}));
  CHECK(diag.members[1] == enc_span(1, 2, {{1, 0}}));
  CHECK(lattice::dual_lattice(diag.members[1]) == diag.members[1]);
}

TEST_CASE("twisting and swapping decorated chains do not commute") {
  std::map<std::pair<int, long long>, lattice::NoncommutationReport> reports;
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}}) {
    lattice::NoncommutationReport rep = lattice::al_weyl_noncommutation(g, p);
    reports[{g, p}] = rep;

    CHECK(rep.frames == (int)levels::enumerate_frames(g, p).size());
    CHECK(rep.id_commutes);
    CHECK(rep.witness_found);
    CHECK(rep.witness_sigma >= 0);
    CHECK(rep.witness_frame >= 0);
    CHECK_FALSE(rep.lhs == rep.rhs);
    CHECK(rep.lhs.members.size() == size_t(g + 1));

    // the witness twist involves a sign flip
    weyl::WeylElt sigma = weyl::decode(g, rep.witness_sigma);
    CHECK(std::count(sigma.signs.begin(), sigma.signs.end(), -1) > 0);

    // reproduce the recorded chains from the recorded coordinates
    levels::TLevel frame = levels::enumerate_frames(g, p)[rep.witness_frame];
    DecoratedChain dec = lattice::decorated_from_frame(frame);
    CHECK(lattice::chain_of(lattice::al_decorated(lattice::weyl_move(sigma, dec))) == rep.lhs);
    CHECK(lattice::chain_of(lattice::weyl_move(sigma, lattice::al_decorated(dec))) == rep.rhs);

    // companions: the identity pairs with itself, sign-free twists pair with
    // a sign-free twist, genuine flips have no exact companion
    std::map<int, int> comp(rep.companions.begin(), rep.companions.end());
    CHECK(comp.size() == weyl::all_elements(g).size());
    weyl::WeylElt id = weyl::identity_elt(g);
    CHECK(comp.at(weyl::encode(id)) == weyl::encode(id));
    for (const weyl::WeylElt &s : weyl::all_elements(g)) {
      bool flip_free = std::count(s.signs.begin(), s.signs.end(), -1) == 0;
      if (flip_free) {
        CHECK(comp.at(weyl::encode(s)) >= 0);
        weyl::WeylElt partner = weyl::decode(g, comp.at(weyl::encode(s)));
        CHECK(std::count(partner.signs.begin(), partner.signs.end(), -1) == 0);
      } else {
        CHECK(comp.at(weyl::encode(s)) == -1);
      }
    }
  }

  // the swap-then-twist mismatch at g = 2 and the coordinate-swap companion
  const lattice::NoncommutationReport &r22 = reports[{2, 2}];
  std::map<int, int> comp22(r22.companions.begin(), r22.companions.end());
  weyl::WeylElt s1{{1, 0}, {1, 1}};
  CHECK(comp22.at(weyl::encode(s1)) == weyl::encode(s1));

  // wider witness-only scan
  lattice::NoncommutationReport r23 = lattice::al_weyl_noncommutation(2, 3, false);
  CHECK(r23.id_commutes);
  CHECK(r23.witness_found);
  CHECK(r23.companions.empty());

  // the search is deterministic
  lattice::NoncommutationReport again = lattice::al_weyl_noncommutation(1, 2);
  CHECK(again.witness_sigma == reports[{1, 2}].witness_sigma);
  CHECK(again.witness_frame == reports[{1, 2}].witness_frame);
  CHECK(again.lhs == reports[{1, 2}].lhs);
  CHECK(again.companions == reports[{1, 2}].companions);
}
