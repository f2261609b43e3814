#include "symp/weyl.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace symp::weyl {

WeylElt identity_elt(int g) {
  WeylElt w;
  w.perm.resize(g);
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.signs.assign(g, 1);
  return w;
}

WeylElt compose(const WeylElt &a, const WeylElt &b) {
  int g = a.rank();
  WeylElt r;
  r.perm.resize(g);
  r.signs.resize(g);
  for (int i = 0; i < g; i++) {
    r.perm[i] = a.perm[b.perm[i]];
    r.signs[i] = b.signs[i] * a.signs[b.perm[i]];
  }
  return r;
}

WeylElt inverse(const WeylElt &w) {
  int g = w.rank();
  WeylElt r;
  r.perm.resize(g);
  r.signs.resize(g);
  for (int i = 0; i < g; i++) {
    r.perm[w.perm[i]] = i;
    r.signs[w.perm[i]] = w.signs[i];
  }
  return r;
}

WeylElt generator(int g, int i) {
  WeylElt w = identity_elt(g);
  if (i < g - 1) {
    std::swap(w.perm[i], w.perm[i + 1]);
  } else {
    w.signs[g - 1] = -1;
  }
  return w;
}

std::vector<WeylElt> all_elements(int g) {
  std::vector<WeylElt> out;
  WeylElt w = identity_elt(g);
  std::vector<int> perm = w.perm;
  do {
    for (int bits = 0; bits < (1 << g); bits++) {
      WeylElt e;
      e.perm = perm;
      e.signs.resize(g);
      for (int i = 0; i < g; i++) e.signs[i] = (bits >> i) & 1 ? -1 : 1;
      out.push_back(e);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// roots as integer coordinate vectors; positive iff first nonzero coord > 0
std::vector<std::vector<int>> positive_roots(int g) {
  std::vector<std::vector<int>> roots;
  for (int i = 0; i < g; i++) {
    std::vector<int> r(g, 0);
    r[i] = 2;
    roots.push_back(r);  // 2 e_i
    for (int j = i + 1; j < g; j++) {
      std::vector<int> s(g, 0);
      s[i] = 1;
      s[j] = -1;
      roots.push_back(s);  // e_i - e_j
      std::vector<int> t(g, 0);
      t[i] = 1;
      t[j] = 1;
      roots.push_back(t);  // e_i + e_j
    }
  }
  return roots;
}

std::vector<int> apply_to_root(const WeylElt &w, const std::vector<int> &r) {
  int g = w.rank();
  std::vector<int> out(g, 0);
  for (int i = 0; i < g; i++) out[w.perm[i]] += w.signs[i] * r[i];
  return out;
}

bool root_positive(const std::vector<int> &r) {
  for (int v : r)
    if (v != 0) return v > 0;
  return false;  // zero never occurs for a root
}

}  // namespace

int length(const WeylElt &w) {
  int count = 0;
  for (auto &r : positive_roots(w.rank()))
    if (!root_positive(apply_to_root(w, r))) count++;
  return count;
}

std::vector<int> reduced_word(const WeylElt &w) {
  std::vector<int> word;
  WeylElt cur = w;
  int g = w.rank();
  int len = length(cur);
  while (len > 0) {
    for (int i = 0; i < g; i++) {
      WeylElt next = compose(generator(g, i), cur);
      int nl = length(next);
      if (nl == len - 1) {
        word.push_back(i);
        cur = next;
        len = nl;
        break;
      }
    }
  }
  // peeling left descents: w = s_a w', w' = s_b w'', ... gives the word
  // w = s_a s_b ... in collection order
  return word;
}

WeylElt longest_elt(int g) {
  WeylElt w = identity_elt(g);
  w.signs.assign(g, -1);
  return w;
}

int elt_order(const WeylElt &w) {
  WeylElt cur = w;
  WeylElt id = identity_elt(w.rank());
  int k = 1;
  while (!(cur == id)) {
    cur = compose(cur, w);
    k++;
  }
  return k;
}

int encode(const WeylElt &w) {
  int g = w.rank();
  // lexicographic rank of the permutation
  int rank = 0;
  for (int i = 0; i < g; i++) {
    int smaller = 0;
    for (int j = i + 1; j < g; j++)
      if (w.perm[j] < w.perm[i]) smaller++;
    int fact = 1;
    for (int t = 2; t <= g - 1 - i; t++) fact *= t;
    rank += smaller * fact;
  }
  int bits = 0;
  for (int i = 0; i < g; i++)
    if (w.signs[i] < 0) bits |= 1 << i;
  return rank * (1 << g) + bits;
}

WeylElt decode(int g, int idx) {
  int bits = idx & ((1 << g) - 1);
  int rank = idx >> g;
  WeylElt w;
  w.perm.resize(g);
  w.signs.resize(g);
  std::vector<int> avail(g);
  std::iota(avail.begin(), avail.end(), 0);
  for (int i = 0; i < g; i++) {
    int fact = 1;
    for (int t = 2; t <= g - 1 - i; t++) fact *= t;
    int pick = rank / fact;
    rank %= fact;
    w.perm[i] = avail[pick];
    avail.erase(avail.begin() + pick);
  }
  for (int i = 0; i < g; i++) w.signs[i] = (bits >> i) & 1 ? -1 : 1;
  return w;
}

std::vector<int> two_block_perm(const WeylElt &w) {
  int g = w.rank();
  std::vector<int> sigma(2 * g);
  for (int i = 0; i < g; i++) {
    if (w.signs[i] > 0) {
      sigma[i] = w.perm[i];
      sigma[g + i] = g + w.perm[i];
    } else {
      sigma[i] = g + w.perm[i];
      sigma[g + i] = w.perm[i];
    }
  }
  return sigma;
}

WeylElt from_two_block_perm(const std::vector<int> &sigma) {
  int g = (int)sigma.size() / 2;
  WeylElt w;
  w.perm.resize(g);
  w.signs.resize(g);
  for (int i = 0; i < g; i++) {
    w.signs[i] = sigma[i] < g ? 1 : -1;
    w.perm[i] = sigma[i] % g;
  }
  return w;
}

ModMatrix matrix_lift(const WeylElt &w, long long n) {
  int g = w.rank();
  ModMatrix m(2 * g, 2 * g, n);
  for (int i = 0; i < g; i++) {
    if (w.signs[i] > 0) {
      m.at(w.perm[i], i) = 1 % n;
      m.at(g + w.perm[i], g + i) = 1 % n;
    } else {
      m.at(g + w.perm[i], i) = finalg::mod_reduce(-1, n);
      m.at(w.perm[i], g + i) = 1 % n;
    }
  }
  return m;
}

std::vector<WeylElt> parabolic_subgroup(int g, const std::vector<int> &gen_indices) {
  std::set<WeylElt> seen;
  std::vector<WeylElt> queue{identity_elt(g)};
  seen.insert(queue[0]);
  while (!queue.empty()) {
    WeylElt cur = queue.back();
    queue.pop_back();
    for (int i : gen_indices) {
      WeylElt next = compose(cur, generator(g, i));
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<WeylElt> min_coset_reps(int g, const std::vector<int> &gen_indices) {
  auto sub = parabolic_subgroup(g, gen_indices);
  std::map<WeylElt, std::pair<int, WeylElt>> best;  // coset key -> (len, rep)
  for (auto &w : all_elements(g)) {
    // canonical coset key: the sorted-minimal member of w W_I
    WeylElt key = w;
    for (auto &h : sub) {
      WeylElt c = compose(w, h);
      if (c < key) key = c;
    }
    int len = length(w);
    auto it = best.find(key);
    if (it == best.end() || len < it->second.first ||
        (len == it->second.first && w < it->second.second))
      best[key] = {len, w};
  }
  std::vector<WeylElt> reps;
  for (auto &[k, v] : best) reps.push_back(v.second);
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace symp::weyl
