#include "doctest.h"
#include "symp/bruhat.hpp"

#include <map>
#include <set>

using namespace symp;
using namespace symp::bruhat;
using finalg::Int;
using finalg::ModMatrix;
using weyl::WeylElt;

namespace {

grp::EnumResult &group(int g, long long p) {
  static std::map<std::pair<int, long long>, grp::EnumResult> cache;
  auto key = std::make_pair(g, p);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, grp::enumerate_sp(g, p, 2000000)).first;
  return it->second;
}

}  // namespace

TEST_CASE("fast cell extraction agrees with the product-set oracle") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    auto &e = group(g, p);
    REQUIRE(e.complete);
    auto fast = cell_table_fast(e);
    auto oracle = cell_table_by_products(e);
    CHECK(fast == oracle);
  }
}

TEST_CASE("cells of distinguished elements") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{2, 3}, {3, 2}}) {
    CHECK(bruhat_cell(ModMatrix::identity(2 * g, p)) == weyl::identity_elt(g));
    for (auto &w : weyl::all_elements(g))
      CHECK(bruhat_cell(weyl::matrix_lift(w, p)) == w);
    // any Borel element sits in the identity cell
    ModMatrix b = ModMatrix::identity(2 * g, p);
    b.at(0, g) = 1;
    b.at(0, g - 1) = p - 1;
    CHECK(in_borel(b));
    CHECK(bruhat_cell(b) == weyl::identity_elt(g));
  }
}

TEST_CASE("stratification: disjoint cells of size |B| p^len covering the group") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    auto &e = group(g, p);
    auto cells = cell_table_fast(e);
    auto all = weyl::all_elements(g);
    long long borel_order = 1;
    for (int i = 0; i < g; i++) borel_order *= p - 1;
    for (int i = 0; i < g * g; i++) borel_order *= p;
    std::map<int, long long> counts;
    for (int c : cells) counts[c]++;
    CHECK((int)counts.size() == (int)all.size());  // g! 2^g double cosets
    long long total = 0;
    for (auto &w : all) {
      long long want = borel_order;
      for (int t = 0; t < weyl::length(w); t++) want *= p;
      CHECK(counts[weyl::encode(w)] == want);
      total += want;
    }
    CHECK(Int(total) == grp::sp_order(g, p));
  }
}

TEST_CASE("cell of the inverse is the inverse cell") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{2, 2}, {2, 3}}) {
    auto &e = group(g, p);
    for (auto &k : e.elems) {
      ModMatrix m = grp::unpack(k, e.spec);
      WeylElt w = bruhat_cell(m);
      CHECK(bruhat_cell(finalg::mat_inv_mod(m)) == weyl::inverse(w));
    }
  }
}

TEST_CASE("parabolic membership by cell") {
  int g = 2;
  long long p = 2;
  auto &e = group(g, p);
  // Borel elements belong to every P_I
  ModMatrix b = ModMatrix::identity(2 * g, p);
  b.at(0, 2) = 1;
  for (auto I : std::vector<std::vector<int>>{{}, {0}, {1}, {0, 1}})
    CHECK(parabolic_membership(b, I));
  // the flip generator escapes the Siegel parabolic
  CHECK(!parabolic_membership(weyl::matrix_lift(weyl::generator(g, g - 1), p), {0}));
  // realized membership set for I = {s_1}: B plus the s_1 cell, 16 + 32
  long long count = 0;
  for (auto &k : e.elems)
    if (parabolic_membership(grp::unpack(k, e.spec), {0})) count++;
  CHECK(count == 48);
}

TEST_CASE("containment ladder of realized parabolics mirrors subset order") {
  int g = 2;
  long long p = 2;
  auto &e = group(g, p);
  auto cells = cell_table_fast(e);
  std::vector<std::vector<int>> subsets{{}, {0}, {1}, {0, 1}};
  std::map<int, std::set<size_t>> realized;  // subset idx -> element indices
  for (size_t si = 0; si < subsets.size(); si++) {
    std::set<int> codes;
    for (auto &w : weyl::parabolic_subgroup(g, subsets[si])) codes.insert(weyl::encode(w));
    for (size_t i = 0; i < e.elems.size(); i++)
      if (codes.count(cells[i])) realized[(int)si].insert(i);
  }
  for (size_t a = 0; a < subsets.size(); a++)
    for (size_t b = 0; b < subsets.size(); b++) {
      bool subset_rel = std::includes(subsets[b].begin(), subsets[b].end(),
                                      subsets[a].begin(), subsets[a].end());
      bool realized_rel = std::includes(realized[(int)b].begin(), realized[(int)b].end(),
                                        realized[(int)a].begin(), realized[(int)a].end());
      CHECK(subset_rel == realized_rel);
    }
  // conjugate standard parabolics are equal: no Weyl conjugation maps one
  // realized parabolic onto a different one
  for (size_t a = 0; a < subsets.size(); a++) {
    std::set<std::set<size_t>> targets;
    for (auto &sigma : weyl::all_elements(g)) {
      ModMatrix ls = weyl::matrix_lift(sigma, p);
      ModMatrix ls_inv = finalg::mat_inv_mod(ls);
      std::set<size_t> conj;
      for (size_t i : realized[(int)a]) {
        ModMatrix m = grp::unpack(e.elems[i], e.spec);
        grp::PackedKey key =
            grp::pack(finalg::mat_mul_mod(finalg::mat_mul_mod(ls, m), ls_inv), e.spec);
        auto pos = std::lower_bound(e.elems.begin(), e.elems.end(), key);
        conj.insert((size_t)(pos - e.elems.begin()));
      }
      targets.insert(conj);
    }
    for (size_t b = 0; b < subsets.size(); b++)
      if (a != b) CHECK(targets.count(realized[(int)b]) == 0);
  }
}

TEST_CASE("Tits axioms hold exhaustively") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    auto rep = tits_axioms_check(g, p, group(g, p));
    CHECK(rep.t1_holds);
    CHECK(rep.t2_holds);
    CHECK(rep.products_checked > 0);
  }
}

TEST_CASE("conjugate census at rank 2") {
  for (long long p : {2, 3}) {
    auto &e = group(2, p);
    auto c0 = parabolic_conjugate_census(2, p, 0, e);
    CHECK(c0.distinct_conjugates == 8);   // g! 2^g
    CHECK(c0.contained_in_next == 2);     // k + 2
    auto c1 = parabolic_conjugate_census(2, p, 1, e);
    CHECK(c1.distinct_conjugates == 4);   // g!/(k+1)! 2^g
    CHECK(c1.contained_in_next == 4);     // next level is the whole group
  }
}

TEST_CASE("two parabolic conjugates generate the group exactly when twisted") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 2}, {1, 3}, {2, 2}}) {
    for (int eps = 0; eps < (1 << g); eps++) {
      WeylElt sigma = weyl::identity_elt(g);
      for (int i = 0; i < g; i++)
        if ((eps >> i) & 1) sigma.signs[i] = -1;
      CHECK(generation_check(g, p, sigma, 2000000) == (eps != 0));
    }
  }
  // one spot check at the largest prime handled exhaustively elsewhere
  WeylElt sigma = weyl::identity_elt(2);
  sigma.signs[1] = -1;
  CHECK(generation_check(2, 3, sigma, 2000000));
}

TEST_CASE("sign-vector decomposition into (B, P) double cosets") {
  for (auto [g, p] : std::vector<std::pair<int, long long>>{{1, 3}, {2, 2}}) {
    auto rep = parahoric_decomposition(g, p, group(g, p), true);
    CHECK(rep.partition_ok);
    CHECK(rep.matches_products);
    CHECK((int)rep.sizes.size() == 1 << g);
    // predicted size per sign vector: |B| sum of p^len over the coset
    long long borel_order = 1;
    for (int i = 0; i < g; i++) borel_order *= p - 1;
    for (int i = 0; i < g * g; i++) borel_order *= p;
    std::vector<int> siegel_gens;
    for (int i = 0; i + 1 < g; i++) siegel_gens.push_back(i);
    auto wp = weyl::parabolic_subgroup(g, siegel_gens);
    for (int eps = 0; eps < (1 << g); eps++) {
      WeylElt sigma = weyl::identity_elt(g);
      for (int i = 0; i < g; i++)
        if ((eps >> i) & 1) sigma.signs[i] = -1;
      // the coset rep lies in its own piece
      CHECK(parahoric_sign_bits(bruhat_cell(weyl::matrix_lift(sigma, p))) == eps);
      long long want = 0;
      for (auto &v : wp) {
        WeylElt w = weyl::compose(sigma, v);
        long long term = borel_order;
        for (int t = 0; t < weyl::length(w); t++) term *= p;
        want += term;
      }
      CHECK(rep.sizes[eps] == want);
    }
  }
  // the rank-1 picture: two pieces of sizes 6 and 18 covering 24
  auto rep13 = parahoric_decomposition(1, 3, group(1, 3), true);
  CHECK(rep13.sizes == std::vector<long long>{6, 18});
}

TEST_CASE("congruence image indices: formulas against filtered enumerations") {
  struct Case {
    int g;
    long long n;
    ImageTag tag;
    long long expect;  // -1 means compare formula vs measurement only
  };
  std::vector<Case> cases{
      {1, 2, {ImageTag::reduction_kernel, 0}, 6},
      {1, 2, {ImageTag::chain_parabolic, 0}, 3},   // the Borel = Siegel at rank 1
      {2, 2, {ImageTag::chain_parabolic, 0}, 45},
      {2, 2, {ImageTag::chain_parabolic, 1}, 15},
      {2, 3, {ImageTag::chain_parabolic, 0}, 160},  // sum of 3^len over the eight cells
      {2, 3, {ImageTag::chain_parabolic, 1}, 40},
      {2, 3, {ImageTag::torus, 0}, 12960},
      {1, 4, {ImageTag::chain_parabolic, 0}, 6},   // projective line over Z/4
      {1, 6, {ImageTag::chain_parabolic, 0}, 12},
      {1, 12, {ImageTag::chain_parabolic, 0}, 24},
      {1, 9, {ImageTag::reduction_kernel, 0}, 648},
  };
  for (auto &c : cases) {
    Int formula = congruence_index_formula(c.g, c.n, c.tag);
    if (c.expect >= 0) CHECK(formula == c.expect);
    auto &e = group(c.g, c.n);
    REQUIRE(e.complete);
    long long inside = 0;
    for (auto &k : e.elems)
      if (in_image(grp::unpack(k, e.spec), c.g, c.tag)) inside++;
    REQUIRE(inside > 0);
    CHECK(Int((long long)e.elems.size()) == grp::sp_order(c.g, c.n));
    CHECK(formula * inside == Int((long long)e.elems.size()));
  }
}

TEST_CASE("flag counts over composite and prime-power moduli") {
  // free flag counts multiply over coprime factors and lift smoothly
  CHECK(flag_count_formula(1, 2, 0) == 3);
  CHECK(flag_count_formula(1, 4, 0) == 6);
  CHECK(flag_count_formula(1, 12, 0) == 24);
  CHECK(flag_count_formula(2, 2, 0) == 45);
  CHECK(flag_count_formula(2, 2, 1) == 15);
  CHECK(flag_count_formula(2, 3, 1) == 40);
}
