#include "symp/oldforms.hpp"

#include "symp/bruhat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace symp::oldforms {

namespace {

long long smallest_primitive_root(long long p) {
  for (long long r = 1; r < p; ++r) {
    long long x = r % p, order = 1;
    while (x != 1) {
      x = x * r % p;
      ++order;
    }
    if (order == p - 1) return r;
  }
  return 1;  // p == 2
}

// the torus and every positive root element; together they generate the Borel
std::vector<ModMatrix> borel_generators(int g, long long p) {
  std::vector<ModMatrix> out;
  long long r = smallest_primitive_root(p);
  for (int i = 0; i < g && p > 2; ++i) {
    auto m = ModMatrix::identity(2 * g, p);
    m.at(i, i) = r;
    m.at(g + i, g + i) = finalg::mod_inverse_scalar(r, p);
    out.push_back(m);
  }
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      auto m = ModMatrix::identity(2 * g, p);
      m.at(i, g + j) = 1;
      m.at(j, g + i) = 1;
      out.push_back(m);
    }
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j) {
      auto m = ModMatrix::identity(2 * g, p);
      m.at(i, j) = 1;
      m.at(g + j, g + i) = p - 1;
      out.push_back(m);
    }
  return out;
}

// Borel generators plus the lower elementary Levi moves: the Siegel parabolic
std::vector<ModMatrix> siegel_generators(int g, long long p) {
  auto out = borel_generators(g, p);
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j) {
      auto m = ModMatrix::identity(2 * g, p);
      m.at(j, i) = 1;
      m.at(g + i, g + j) = p - 1;
      out.push_back(m);
    }
  return out;
}

finalg::IntMatrix correspondence_counts(const CosetSpace &torus,
                                        const CosetSpace &target,
                                        const weyl::WeylElt &sigma) {
  auto proj = projection(torus, target);
  auto perm = weyl_permutation(torus, sigma);
  finalg::IntMatrix counts(target.size(), target.size());
  for (int z = 0; z < torus.size(); ++z) counts.at(proj[z], proj[perm[z]]) += 1;
  return counts;
}

RatMatrix rat_of_counts(const finalg::IntMatrix &c) { return finalg::rat_from_int(c); }

}  // namespace

int GroupTable::index_of(const grp::PackedKey &k) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), k);
  if (it == elems.end() || *it != k) throw std::logic_error("element not in group table");
  return static_cast<int>(it - elems.begin());
}

int GroupTable::index_of(const ModMatrix &m) const { return index_of(grp::pack(m, spec)); }

ModMatrix GroupTable::element(int i) const { return grp::unpack(elems[i], spec); }

int GroupTable::mul(int a, int b) const {
  return index_of(finalg::mat_mul_mod(element(a), element(b)));
}

GroupTable group_table(int g, long long p, size_t cap) {
  auto res = grp::enumerate_sp(g, p, cap);
  if (!res.complete) throw std::runtime_error("group enumeration hit the cap");
  GroupTable t;
  t.g = g;
  t.p = p;
  t.spec = res.spec;
  t.elems = std::move(res.elems);
  return t;
}

CosetSpace coset_space(const GroupTable &t, std::vector<int> members,
                       std::string name) {
  std::sort(members.begin(), members.end());
  CosetSpace x;
  x.table = &t;
  x.subgroup_name = std::move(name);
  x.members = std::move(members);
  x.coset_of.assign(t.size(), -1);
  for (int i = 0; i < t.size(); ++i) {
    if (x.coset_of[i] != -1) continue;
    int id = static_cast<int>(x.reps.size());
    x.reps.push_back(i);
    auto mi = t.element(i);
    for (int k : x.members) {
      int j = t.index_of(finalg::mat_mul_mod(mi, t.element(k)));
      if (x.coset_of[j] != -1 && x.coset_of[j] != id)
        throw std::logic_error("cosets overlap");
      x.coset_of[j] = id;
    }
  }
  for (int c : x.coset_of)
    if (c == -1) throw std::logic_error("coset labeling left a gap");
  if (x.reps.size() * x.members.size() != static_cast<size_t>(t.size()))
    throw std::logic_error("coset count mismatch");
  return x;
}

static std::vector<int> filter_members(const GroupTable &t,
                                       bool (*pred)(const ModMatrix &)) {
  std::vector<int> out;
  for (int i = 0; i < t.size(); ++i)
    if (pred(t.element(i))) out.push_back(i);
  return out;
}

CosetSpace torus_space(const GroupTable &t) {
  return coset_space(t, filter_members(t, &bruhat::is_diagonal), "T");
}

CosetSpace borel_space(const GroupTable &t) {
  return coset_space(t, filter_members(t, &bruhat::in_borel), "B");
}

CosetSpace chain_space(const GroupTable &t, int k) {
  std::vector<int> members;
  for (int i = 0; i < t.size(); ++i)
    if (bruhat::in_chain_parabolic(t.element(i), k)) members.push_back(i);
  return coset_space(t, std::move(members), "P" + std::to_string(k));
}

std::vector<int> projection(const CosetSpace &fine, const CosetSpace &coarse) {
  if (fine.table != coarse.table) throw std::invalid_argument("different groups");
  if (!std::includes(coarse.members.begin(), coarse.members.end(),
                     fine.members.begin(), fine.members.end()))
    throw std::invalid_argument("projection needs nested subgroups");
  std::vector<int> out(fine.size());
  for (int c = 0; c < fine.size(); ++c) out[c] = coarse.coset_of[fine.reps[c]];
  return out;
}

int fiber_degree(const CosetSpace &fine, const CosetSpace &coarse) {
  if (coarse.members.size() % fine.members.size() != 0)
    throw std::logic_error("subgroup orders not nested");
  return static_cast<int>(coarse.members.size() / fine.members.size());
}

ModuleOperator pullback(const CosetSpace &fine, const CosetSpace &coarse) {
  auto proj = projection(fine, coarse);
  ModuleOperator op;
  op.dom = &coarse;
  op.cod = &fine;
  op.m = RatMatrix(fine.size(), coarse.size());
  for (int x = 0; x < fine.size(); ++x) op.m.at(x, proj[x]) = 1;
  return op;
}

ModuleOperator pushforward(const CosetSpace &fine, const CosetSpace &coarse) {
  auto proj = projection(fine, coarse);
  ModuleOperator op;
  op.dom = &fine;
  op.cod = &coarse;
  op.m = RatMatrix(coarse.size(), fine.size());
  for (int x = 0; x < fine.size(); ++x) op.m.at(proj[x], x) = 1;
  return op;
}

ModuleOperator compose(const ModuleOperator &a, const ModuleOperator &b) {
  if (a.dom != b.cod) throw std::invalid_argument("operator shapes do not chain");
  return {b.dom, a.cod, finalg::rat_mul(a.m, b.m)};
}

std::vector<int> weyl_permutation(const CosetSpace &torus, const weyl::WeylElt &sigma) {
  const GroupTable &t = *torus.table;
  auto lift = weyl::matrix_lift(sigma, t.p);
  std::vector<int> out(torus.size());
  for (int x = 0; x < torus.size(); ++x) {
    int moved = t.index_of(finalg::mat_mul_mod(t.element(torus.reps[x]), lift));
    out[x] = torus.coset_of[moved];
  }
  return out;
}

ModuleOperator weyl_operator(const CosetSpace &torus, const weyl::WeylElt &sigma) {
  auto perm = weyl_permutation(torus, sigma);
  ModuleOperator op;
  op.dom = &torus;
  op.cod = &torus;
  op.m = RatMatrix(torus.size(), torus.size());
  for (int x = 0; x < torus.size(); ++x) op.m.at(x, perm[x]) = 1;
  return op;
}

ModuleOperator correspondence_D(const CosetSpace &torus, const CosetSpace &target,
                                const weyl::WeylElt &sigma) {
  ModuleOperator op;
  op.dom = &target;
  op.cod = &target;
  op.m = rat_of_counts(correspondence_counts(torus, target, sigma));
  return op;
}

std::pair<int, int> double_coset_dimensions(const GroupTable &t) {
  auto bgens = borel_generators(t.g, t.p);
  auto pgens = siegel_generators(t.g, t.p);
  auto count = [&](const std::vector<ModMatrix> &left) {
    std::vector<char> seen(t.size(), 0);
    int classes = 0;
    for (int seed = 0; seed < t.size(); ++seed) {
      if (seen[seed]) continue;
      ++classes;
      std::deque<int> queue{seed};
      seen[seed] = 1;
      while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        auto mx = t.element(x);
        for (const auto &l : left) {
          int y = t.index_of(finalg::mat_mul_mod(l, mx));
          if (!seen[y]) seen[y] = 1, queue.push_back(y);
        }
        for (const auto &r : bgens) {
          int y = t.index_of(finalg::mat_mul_mod(mx, r));
          if (!seen[y]) seen[y] = 1, queue.push_back(y);
        }
      }
    }
    return classes;
  };
  return {count(pgens), count(bgens)};
}

EigenPullbackReport eigen_pullback_check(const GroupTable &t, const weyl::WeylElt &sigma) {
  auto torus = torus_space(t);
  auto borel = borel_space(t);
  auto D = correspondence_D(torus, borel, sigma);
  int deg = fiber_degree(torus, borel);

  // the subgroup generated by the Borel and its twist by the lift
  auto lift = weyl::matrix_lift(sigma, t.p);
  auto lift_inv = weyl::matrix_lift(weyl::inverse(sigma), t.p);
  std::vector<ModMatrix> gens = borel_generators(t.g, t.p);
  for (const auto &b : borel_generators(t.g, t.p))
    gens.push_back(finalg::mat_mul_mod(finalg::mat_mul_mod(lift, b), lift_inv));
  auto closure = grp::closure(gens, static_cast<size_t>(t.size()) + 1);
  if (!closure.complete) throw std::logic_error("merged subgroup closure hit the cap");
  std::vector<int> members;
  for (const auto &k : closure.elems) members.push_back(t.index_of(k));
  auto merged = coset_space(t, std::move(members), "merged");

  auto copy = pullback(borel, merged);

  EigenPullbackReport rep;
  rep.merged_order = static_cast<long long>(merged.members.size());
  rep.merged_cosets = merged.size();
  for (int sign : {1, -1}) {
    RatMatrix shifted = D.m;
    for (int i = 0; i < shifted.rows; ++i) shifted.at(i, i) -= sign * deg;
    auto kernel = finalg::nullspace_exact(shifted);
    (sign > 0 ? rep.dim_plus : rep.dim_minus) = kernel.cols;
    if (kernel.cols > 0 && !finalg::span_contains(copy.m, kernel))
      rep.contained = false;
  }
  return rep;
}

ImagePairReport image_composition_check(const CosetSpace &torus,
                                        const CosetSpace &target) {
  const GroupTable &t = *torus.table;
  auto W = weyl::all_elements(t.g);
  std::vector<finalg::IntMatrix> counts;
  counts.reserve(W.size());
  for (const auto &s : W) counts.push_back(correspondence_counts(torus, target, s));

  // full modular rank certifies a full rational image; anything short of that
  // goes through the exact span comparison
  const long long witness = 1000003;
  int n = target.size();
  std::vector<bool> full(W.size());
  ImagePairReport rep;
  for (size_t i = 0; i < W.size(); ++i) {
    ModMatrix red(n, n, witness);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        red.at(r, c) = static_cast<long long>(counts[i].at(r, c) % witness);
    full[i] = finalg::rank_mod(red) == n;
    if (full[i]) ++rep.full_rank_count;
  }

  std::map<int, int> index;
  for (size_t i = 0; i < W.size(); ++i) index[weyl::encode(W[i])] = static_cast<int>(i);
  for (size_t i = 0; i < W.size(); ++i)
    for (size_t j = 0; j < W.size(); ++j) {
      ++rep.pairs;
      int k = index.at(weyl::encode(weyl::compose(W[i], W[j])));
      if (full[i] && full[j] && full[k]) continue;  // all three images are everything
      auto product = finalg::int_mul(counts[i], counts[j]);
      if (!finalg::spans_equal(rat_of_counts(product), rat_of_counts(counts[k])))
        rep.all_equal = false;
    }
  return rep;
}

CopyReport copy_independence_analog(const GroupTable &t, unsigned seed) {
  auto torus = torus_space(t);
  auto borel = borel_space(t);
  auto siegel = chain_space(t, t.g - 1);

  // the base copy is pulled back from the structureless level, a single
  // coset; the composite of the two projections absorbs every twist, which
  // is what forces the images to coincide
  std::vector<int> everyone(t.size());
  for (int i = 0; i < t.size(); ++i) everyone[i] = i;
  auto trivial = coset_space(t, std::move(everyone), "G");
  auto copy = pullback(borel, trivial);
  auto W = weyl::all_elements(t.g);

  CopyReport rep;
  rep.seed = seed;
  rep.base_copy_dim = finalg::rank_exact(copy.m);
  rep.bi_invariant_dim = 1;
  for (int i = 1; i <= t.g; ++i) rep.bi_invariant_dim *= 2 * i;

  std::vector<RatMatrix> images;
  std::vector<RatMatrix> distinct;
  for (const auto &s : W) {
    auto D = correspondence_D(torus, borel, s);
    images.push_back(finalg::rat_mul(D.m, copy.m));
    bool fresh = true;
    for (const auto &seen : distinct)
      if (finalg::spans_equal(seen, images.back())) {
        fresh = false;
        break;
      }
    if (fresh) distinct.push_back(images.back());
  }
  rep.distinct_images = static_cast<int>(distinct.size());

  RatMatrix joint = distinct[0];
  for (size_t i = 1; i < distinct.size(); ++i) joint = finalg::concat_cols(joint, distinct[i]);
  rep.joint_span_dim = finalg::rank_exact(joint);
  rep.room_attained = rep.distinct_images >= rep.bi_invariant_dim;

  // one generic probe through the system, entering via the Lagrangian level,
  // for the report only
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  RatMatrix probe(siegel.size(), 1);
  for (int i = 0; i < siegel.size(); ++i) probe.at(i, 0) = dist(rng);
  auto lifted = finalg::rat_mul(pullback(borel, siegel).m, probe);
  std::set<std::vector<Rat>> outcomes;
  for (const auto &s : W) {
    auto D = correspondence_D(torus, borel, s);
    auto v = finalg::rat_mul(D.m, lifted);
    outcomes.insert(v.a);
  }
  rep.distinct_probe_vectors = static_cast<int>(outcomes.size());
  return rep;
}

}  // namespace symp::oldforms
