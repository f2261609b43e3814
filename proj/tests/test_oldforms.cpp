#include "doctest.h"
#include "symp/levels.hpp"
#include "symp/oldforms.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace symp;
using oldforms::CosetSpace;
using oldforms::GroupTable;

namespace {

const GroupTable &table(int g, long long p) {
  static std::map<std::pair<int, long long>, GroupTable> cache;
  auto it = cache.find({g, p});
  if (it == cache.end()) it = cache.emplace(std::pair<int, long long>{g, p}, oldforms::group_table(g, p)).first;
  return it->second;
}

bool is_integer_matrix(const finalg::RatMatrix &m) {
  return std::all_of(m.a.begin(), m.a.end(), [](const finalg::Rat &x) {
    return boost::multiprecision::denominator(x) == 1;
  });
}

}  // namespace

TEST_CASE("coset spaces partition the group with the predicted sizes") {
  const auto &t13 = table(1, 3);
  auto T13 = oldforms::torus_space(t13);
  auto B13 = oldforms::borel_space(t13);
  CHECK(T13.members.size() == 2);
  CHECK(B13.members.size() == 6);
  CHECK(T13.size() == 12);
  CHECK(B13.size() == 4);

  const auto &t22 = table(2, 2);
  auto T22 = oldforms::torus_space(t22);
  auto B22 = oldforms::borel_space(t22);
  auto P22 = oldforms::chain_space(t22, 1);
  CHECK(T22.size() == 720);
  CHECK(B22.size() == 45);
  CHECK(P22.size() == 15);

  // coset counts agree with the independent structure enumerations
  CHECK(T22.size() == (int)levels::enumerate_frames(2, 2).size());
  CHECK(B22.size() == (int)levels::enumerate_flags(2, 2).size());
  CHECK(P22.size() == (int)levels::enumerate_lagrangians(2, 2).size());

  // representatives are minimal in their coset, so rep of coset 0 is the
  // identity's coset
  CHECK(T22.coset_of[0] == 0);
  CHECK(T22.reps[0] == 0);
}

TEST_CASE("pullback and fiber sum behave like a degree-d covering") {
  const auto &t = table(1, 3);
  auto T = oldforms::torus_space(t);
  auto B = oldforms::borel_space(t);
  auto up = oldforms::pullback(T, B);
  auto down = oldforms::pushforward(T, B);
  int deg = oldforms::fiber_degree(T, B);
  CHECK(deg == 3);

  auto round = oldforms::compose(down, up);
  auto scaled = finalg::RatMatrix::identity(B.size());
  for (auto &x : scaled.a) x *= deg;
  CHECK(round.m == scaled);

  // constants pull back to constants
  finalg::RatMatrix ones(B.size(), 1);
  for (auto &x : ones.a) x = 1;
  auto pulled = finalg::rat_mul(up.m, ones);
  CHECK(std::all_of(pulled.a.begin(), pulled.a.end(),
                    [](const finalg::Rat &x) { return x == 1; }));

  // zero pushes to zero
  finalg::RatMatrix zero(T.size(), 1);
  CHECK(finalg::rat_mul(down.m, zero).a == finalg::RatMatrix(B.size(), 1).a);

  // fiber sums: each row of the fiber-sum matrix counts one fiber
  for (int y = 0; y < B.size(); ++y) {
    finalg::Rat sum = 0;
    for (int x = 0; x < T.size(); ++x) sum += down.m.at(y, x);
    CHECK(sum == deg);
  }
}

TEST_CASE("pullback ranks equal the coarse dimensions") {
  const auto &t = table(2, 2);
  auto T = oldforms::torus_space(t);
  auto B = oldforms::borel_space(t);
  for (int k = 0; k <= 1; ++k) {
    auto Pk = oldforms::chain_space(t, k);
    auto up = oldforms::pullback(B, Pk);
    CHECK(finalg::rank_exact(up.m) == Pk.size());
  }
  auto upT = oldforms::pullback(T, B);
  CHECK(finalg::rank_exact(upT.m) == B.size());

  // the indicator of one Lagrangian coset pulls back to the indicator of its
  // three-element flag fiber
  auto P = oldforms::chain_space(t, 1);
  auto up = oldforms::pullback(B, P);
  auto proj = oldforms::projection(B, P);
  for (int w = 0; w < P.size(); ++w) {
    finalg::RatMatrix ind(P.size(), 1);
    ind.at(w, 0) = 1;
    auto lifted = finalg::rat_mul(up.m, ind);
    int hits = 0;
    for (int y = 0; y < B.size(); ++y) {
      CHECK(lifted.at(y, 0) == (proj[y] == w ? 1 : 0));
      if (proj[y] == w) ++hits;
    }
    CHECK(hits == 3);
  }
}

TEST_CASE("the right Weyl action permutes the torus cosets") {
  for (auto [g, p] : {std::pair<int, long long>{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    CAPTURE(g);
    CAPTURE(p);
    const auto &t = table(g, p);
    auto T = oldforms::torus_space(t);
    auto W = weyl::all_elements(g);
    std::map<int, std::vector<int>> perms;
    for (const auto &s : W) {
      auto perm = oldforms::weyl_permutation(T, s);
      // a bijection, i.e. the operator matrix is a permutation matrix
      std::vector<char> hit(T.size(), 0);
      for (int x : perm) hit[x] = 1;
      CHECK(std::count(hit.begin(), hit.end(), 1) == T.size());
      perms[weyl::encode(s)] = perm;
    }
    // the permutation of the composite equals the composite of the
    // permutations, applied left factor first
    for (const auto &a : W)
      for (const auto &b : W) {
        const auto &pa = perms[weyl::encode(a)];
        const auto &pb = perms[weyl::encode(b)];
        const auto &pab = perms[weyl::encode(weyl::compose(a, b))];
        for (int x = 0; x < T.size(); ++x) CHECK(pab[x] == pb[pa[x]]);
      }
  }

  const auto &t13 = table(1, 3);
  auto T13 = oldforms::torus_space(t13);
  weyl::WeylElt id{{0}, {1}}, flip{{0}, {-1}};
  CHECK(oldforms::weyl_operator(T13, id).m == finalg::RatMatrix::identity(12));
  auto V = oldforms::weyl_operator(T13, flip);
  CHECK(finalg::rat_mul(V.m, V.m) == finalg::RatMatrix::identity(12));
}

TEST_CASE("correspondence operators are integral with constant row sums") {
  for (auto [g, p] : {std::pair<int, long long>{1, 3}, {2, 2}, {2, 3}}) {
    CAPTURE(g);
    CAPTURE(p);
    const auto &t = table(g, p);
    auto T = oldforms::torus_space(t);
    auto B = oldforms::borel_space(t);
    int deg = oldforms::fiber_degree(T, B);
    for (const auto &s : weyl::all_elements(g)) {
      auto D = oldforms::correspondence_D(T, B, s);
      CHECK(is_integer_matrix(D.m));
      for (int y = 0; y < B.size(); ++y) {
        finalg::Rat sum = 0;
        for (int x = 0; x < B.size(); ++x) {
          CHECK(D.m.at(y, x) >= 0);
          sum += D.m.at(y, x);
        }
        CHECK(sum == deg);
      }
    }
    // identity twist gives degree times the identity
    auto Did = oldforms::correspondence_D(T, B, weyl::identity_elt(g));
    auto scaled = finalg::RatMatrix::identity(B.size());
    for (auto &x : scaled.a) x *= deg;
    CHECK(Did.m == scaled);
  }
}

TEST_CASE("composite correspondences generate the same image subspaces") {
  for (auto [g, p] : {std::pair<int, long long>{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    CAPTURE(g);
    CAPTURE(p);
    const auto &t = table(g, p);
    auto T = oldforms::torus_space(t);
    auto B = oldforms::borel_space(t);
    auto rep = oldforms::image_composition_check(T, B);
    CHECK(rep.all_equal);
    int w = (int)weyl::all_elements(g).size();
    CHECK(rep.pairs == w * w);
  }
}

TEST_CASE("double coset counts match the Weyl-side counts") {
  std::vector<int> chain_gens;  // the swap generators, 0 .. g-2
  auto check = [&](int g, long long p) {
    CAPTURE(g);
    CAPTURE(p);
    auto dims = oldforms::double_coset_dimensions(table(g, p));
    CHECK(dims.first == (1 << g));
    CHECK(dims.second == (int)weyl::all_elements(g).size());
    chain_gens.clear();
    for (int i = 0; i + 1 < g; ++i) chain_gens.push_back(i);
    CHECK(dims.first == (int)weyl::min_coset_reps(g, chain_gens).size());
  };
  check(1, 3);
  check(2, 2);
  check(2, 3);
}

TEST_CASE("extreme eigenvectors come from the merged parabolic level") {
  const auto &t13 = table(1, 3);
  weyl::WeylElt flip{{0}, {-1}};
  auto rep = oldforms::eigen_pullback_check(t13, flip);
  CHECK(rep.merged_order == 24);  // Borel and its flip generate everything
  CHECK(rep.merged_cosets == 1);
  CHECK(rep.dim_plus == 1);       // constants only
  CHECK(rep.dim_minus == 0);
  CHECK(rep.contained);

  auto rep_id = oldforms::eigen_pullback_check(t13, weyl::identity_elt(1));
  CHECK(rep_id.merged_cosets == 4);
  CHECK(rep_id.dim_plus == 4);
  CHECK(rep_id.dim_minus == 0);
  CHECK(rep_id.contained);

  const auto &t22 = table(2, 2);
  for (const auto &s : weyl::all_elements(2)) {
    auto r = oldforms::eigen_pullback_check(t22, s);
    CAPTURE(weyl::encode(s));
    CHECK(r.contained);
  }
  // the single swap merges into the first chain parabolic
  auto rswap = oldforms::eigen_pullback_check(t22, weyl::generator(2, 0));
  CHECK(rswap.merged_cosets == 15);
  CHECK(rswap.merged_order == 48);
}

TEST_CASE("the correspondence system alone reproduces one pullback copy") {
  for (auto [g, p] : {std::pair<int, long long>{1, 3}, {2, 2}, {2, 3}}) {
    CAPTURE(g);
    CAPTURE(p);
    auto rep = oldforms::copy_independence_analog(table(g, p), 20240817u);
    CHECK(rep.base_copy_dim == 1);
    CHECK(rep.distinct_images == 1);
    CHECK(rep.joint_span_dim == 1);
    CHECK(rep.bi_invariant_dim == (g == 1 ? 2 : 8));
    CHECK(!rep.room_attained);
    CHECK(rep.distinct_probe_vectors >= 1);
    CHECK(rep.distinct_probe_vectors <= (int)weyl::all_elements(g).size());
  }
}

TEST_CASE("intermediate-level images move exactly when the twist has flips") {
  // the composite projection down to the structureless level absorbs every
  // twist; the projection to the Lagrangian level only absorbs flip-free
  // twists, so the pulled-back copy from there must move under some flip
  const auto &t = table(2, 2);
  auto T = oldforms::torus_space(t);
  auto B = oldforms::borel_space(t);
  auto P = oldforms::chain_space(t, 1);
  auto copy = oldforms::pullback(B, P);
  int moved = 0;
  for (const auto &s : weyl::all_elements(2)) {
    auto D = oldforms::correspondence_D(T, B, s);
    auto image = finalg::rat_mul(D.m, copy.m);
    bool same = finalg::spans_equal(image, copy.m);
    bool flip_free = std::all_of(s.signs.begin(), s.signs.end(),
                                 [](int e) { return e == 1; });
    if (flip_free) CHECK(same);
    if (!same) ++moved;
  }
  CHECK(moved > 0);
}
