#include "doctest.h"
#include "symp/grp.hpp"
#include "symp/weyl.hpp"

#include <map>
#include <set>

using namespace symp;
using namespace symp::weyl;

namespace {

// word-length oracle: breadth-first distance from the identity
std::map<WeylElt, int> bfs_lengths(int g) {
  std::map<WeylElt, int> dist;
  std::vector<WeylElt> frontier{identity_elt(g)};
  dist[frontier[0]] = 0;
  int d = 0;
  while (!frontier.empty()) {
    std::vector<WeylElt> next;
    for (auto &w : frontier)
      for (int i = 0; i < g; i++) {
        WeylElt v = compose(w, generator(g, i));
        if (dist.emplace(v, d + 1).second) next.push_back(v);
      }
    frontier = std::move(next);
    d++;
  }
  return dist;
}

WeylElt eval_word(int g, const std::vector<int> &word) {
  WeylElt w = identity_elt(g);
  for (int i : word) w = compose(w, generator(g, i));
  return w;
}

}  // namespace

TEST_CASE("group structure: sizes, inverses, associativity") {
  for (int g : {1, 2, 3}) {
    auto all = all_elements(g);
    int want = 1;
    for (int i = 2; i <= g; i++) want *= i;
    CHECK((int)all.size() == want << g);
    for (auto &w : all) {
      CHECK(compose(w, inverse(w)) == identity_elt(g));
      CHECK(compose(inverse(w), w) == identity_elt(g));
    }
    // spot associativity on a few triples
    for (size_t t = 0; t + 2 < all.size(); t += std::max<size_t>(1, all.size() / 7)) {
      auto &a = all[t];
      auto &b = all[t + 1];
      auto &c = all[t + 2];
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
  }
}

TEST_CASE("Coxeter relations of type C") {
  for (int g : {2, 3}) {
    for (int i = 0; i < g; i++) CHECK(elt_order(generator(g, i)) == 2);
    for (int i = 0; i + 1 < g; i++) {
      int m = (i + 1 == g - 1) ? 4 : 3;  // last bond is the double one
      CHECK(elt_order(compose(generator(g, i), generator(g, i + 1))) == m);
    }
    for (int i = 0; i < g; i++)
      for (int j = i + 2; j < g; j++)
        CHECK(elt_order(compose(generator(g, i), generator(g, j))) == 2);
  }
  // rank 2: the product of the swap and the flip has order 4
  CHECK(elt_order(compose(generator(2, 0), generator(2, 1))) == 4);
}

TEST_CASE("root-counting length equals word-length distance") {
  for (int g : {1, 2, 3}) {
    auto dist = bfs_lengths(g);
    CHECK((int)dist.size() == (int)all_elements(g).size());
    for (auto &[w, d] : dist) CHECK(length(w) == d);
  }
}

TEST_CASE("longest element: all-minus, length g^2, unique maximum") {
  for (int g : {1, 2, 3}) {
    WeylElt w0 = longest_elt(g);
    CHECK(length(w0) == g * g);
    for (auto &w : all_elements(g))
      if (!(w == w0)) CHECK(length(w) < g * g);
    // w0 is central for type C
    for (int i = 0; i < g; i++)
      CHECK(compose(w0, generator(g, i)) == compose(generator(g, i), w0));
  }
}

TEST_CASE("reduced words evaluate back and realize the length") {
  for (int g : {1, 2, 3})
    for (auto &w : all_elements(g)) {
      auto word = reduced_word(w);
      CHECK((int)word.size() == length(w));
      CHECK(eval_word(g, word) == w);
    }
}

TEST_CASE("encode/decode is a dense bijection") {
  for (int g : {1, 2, 3}) {
    auto all = all_elements(g);
    std::set<int> codes;
    for (auto &w : all) {
      int c = encode(w);
      CHECK(c >= 0);
      CHECK(c < (int)all.size());
      codes.insert(c);
      CHECK(decode(g, c) == w);
    }
    CHECK(codes.size() == all.size());
  }
}

TEST_CASE("two-block permutation matches the matrix lift support") {
  for (int g : {1, 2, 3})
    for (auto &w : all_elements(g)) {
      auto sigma = two_block_perm(w);
      CHECK(from_two_block_perm(sigma) == w);
      ModMatrix m = matrix_lift(w, 5);
      for (int j = 0; j < 2 * g; j++)
        for (int i = 0; i < 2 * g; i++)
          CHECK((m.at(i, j) != 0) == (i == sigma[j]));
    }
}

TEST_CASE("matrix lift: symplectic section, exact up to the sign torus") {
  // at rank 1 the flip lifts to the standard form
  CHECK(matrix_lift(generator(1, 0), 7) == grp::symplectic_form(1, 7));

  for (int g : {1, 2, 3})
    for (long long n : {2, 3, 5}) {
      auto all = all_elements(g);
      for (auto &w : all) CHECK(grp::is_symplectic(matrix_lift(w, n)));
      // lift(a) lift(b) = lift(ab) D with D diagonal, entries +-1, and the
      // e and f copies of each coordinate carrying the same sign.  The section
      // is a true homomorphism only modulo 2.
      size_t step = std::max<size_t>(1, all.size() / 11);
      for (size_t a = 0; a < all.size(); a += step)
        for (size_t b = 0; b < all.size(); b += step) {
          ModMatrix prod =
              finalg::mat_mul_mod(matrix_lift(all[a], n), matrix_lift(all[b], n));
          ModMatrix lifted = matrix_lift(compose(all[a], all[b]), n);
          if (n == 2) {
            CHECK(prod == lifted);
            continue;
          }
          ModMatrix d = finalg::mat_mul_mod(finalg::mat_inv_mod(lifted), prod);
          for (int i = 0; i < 2 * g; i++)
            for (int j = 0; j < 2 * g; j++)
              if (i != j) CHECK(d.at(i, j) == 0);
          for (int i = 0; i < g; i++) {
            CHECK((d.at(i, i) == 1 || d.at(i, i) == n - 1));
            CHECK(d.at(i, i) == d.at(g + i, g + i));
          }
        }
    }
}

TEST_CASE("parabolic subgroups and minimal coset representatives") {
  // chains {s_1 .. s_k} give symmetric groups S_{k+1}
  for (int g : {2, 3}) {
    int wsize = (1 << g);
    for (int i = 2; i <= g; i++) wsize *= i;
    for (int k = 0; k <= g; k++) {
      std::vector<int> idx;
      for (int i = 0; i < k; i++) idx.push_back(i);
      auto sub = parabolic_subgroup(g, idx);
      int want = 1;
      if (k == g) {
        // the full generator set gives the whole group
        want = wsize;
      } else {
        for (int i = 2; i <= k + 1; i++) want *= i;
      }
      CHECK((int)sub.size() == want);
      auto reps = min_coset_reps(g, idx);
      CHECK((int)reps.size() * (int)sub.size() == wsize);
      // each rep is the shortest in its coset
      for (auto &r : reps)
        for (auto &h : sub)
          if (!(h == identity_elt(g))) CHECK(length(compose(r, h)) > length(r));
    }
  }
}
