#include "symp/bruhat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace symp::bruhat {

using finalg::mod_inverse_scalar;
using finalg::mod_reduce;
using grp::EnumResult;
using grp::PackedKey;

bool in_borel(const ModMatrix &m) {
  int g = m.rows / 2;
  for (int i = 0; i < g; i++)
    for (int j = 0; j < g; j++) {
      if (m.at(g + i, j) != 0) return false;                  // C = 0
      if (j > i && m.at(g + i, g + j) != 0) return false;     // D lower
      if (j < i && m.at(i, j) != 0) return false;             // A upper
    }
  return true;
}

bool stabilizes_flag_steps(const ModMatrix &m, const std::vector<int> &kept_steps) {
  int g = m.rows / 2;
  for (int j : kept_steps)
    for (int c = 0; c < j; c++) {
      for (int r = j; r < g; r++)
        if (m.at(r, c) != 0) return false;
      for (int r = g; r < 2 * g; r++)
        if (m.at(r, c) != 0) return false;
    }
  return true;
}

bool in_chain_parabolic(const ModMatrix &m, int k) {
  int g = m.rows / 2;
  std::vector<int> steps;
  for (int j = k + 1; j <= g; j++) steps.push_back(j);
  return stabilizes_flag_steps(m, steps);
}

bool is_diagonal(const ModMatrix &m) {
  for (int i = 0; i < m.rows; i++)
    for (int j = 0; j < m.cols; j++)
      if (i != j && m.at(i, j) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

// order (e_1..e_g, f_g..f_1): old slot -> new slot
int reorder(int g, int i) { return i < g ? i : 3 * g - 1 - i; }

// permutation w' with M' in U w' U for the upper-triangular U of GL_2g,
// by column sweep with bottom-most pivots
std::vector<int> triangular_profile(ModMatrix x) {
  int n = x.rows;
  long long p = x.mod;
  std::vector<int> w(n, -1);
  std::vector<bool> used(n, false);
  for (int j = 0; j < n; j++) {
    int piv = -1;
    for (int i = n - 1; i >= 0; i--)
      if (!used[i] && x.at(i, j) % p != 0) { piv = i; break; }
    if (piv < 0) throw std::invalid_argument("triangular_profile: singular input");
    w[j] = piv;
    used[piv] = true;
    long long inv = mod_inverse_scalar(x.at(piv, j), p);
    // clear the pivot row to the right (column operations into later columns)
    for (int c = j + 1; c < n; c++) {
      long long f = x.at(piv, c) * inv % p;
      if (!f) continue;
      for (int r = 0; r < n; r++)
        x.at(r, c) = mod_reduce(x.at(r, c) - f * x.at(r, j), p);
    }
    // clear the pivot column upward (row operations into earlier rows)
    for (int r = 0; r < piv; r++) {
      long long f = x.at(r, j) * inv % p;
      if (!f) continue;
      for (int c = j; c < n; c++)
        x.at(r, c) = mod_reduce(x.at(r, c) - f * x.at(piv, c), p);
    }
  }
  return w;
}

}  // namespace

WeylElt bruhat_cell(const ModMatrix &m) {
  int g = m.rows / 2;
  long long p = m.mod;
  ModMatrix re(2 * g, 2 * g, p);
  for (int i = 0; i < 2 * g; i++)
    for (int j = 0; j < 2 * g; j++)
      re.at(reorder(g, i), reorder(g, j)) = m.at(i, j);
  std::vector<int> wp = triangular_profile(re);
  std::vector<int> sigma(2 * g);
  for (int j = 0; j < 2 * g; j++)
    sigma[j] = reorder(g, wp[reorder(g, j)]);  // reorder is an involution
  // a symplectic element always produces a block-compatible permutation
  for (int i = 0; i < g; i++)
    if (sigma[g + i] != (sigma[i] + g) % (2 * g))
      throw std::logic_error("bruhat_cell: profile not block-compatible");
  return weyl::from_two_block_perm(sigma);
}

std::vector<int> cell_table_fast(const EnumResult &e) {
  std::vector<int> out(e.elems.size());
  for (size_t i = 0; i < e.elems.size(); i++)
    out[i] = weyl::encode(bruhat_cell(grp::unpack(e.elems[i], e.spec)));
  return out;
}

std::vector<int> cell_table_by_products(const EnumResult &e) {
  int g = e.spec.g;
  long long p = e.spec.n;
  std::vector<ModMatrix> borel;
  for (auto &k : e.elems) {
    ModMatrix m = grp::unpack(k, e.spec);
    if (in_borel(m)) borel.push_back(m);
  }
  std::unordered_map<PackedKey, int, grp::KeyHash> cell;
  cell.reserve(e.elems.size() * 2);
  for (auto &w : weyl::all_elements(g)) {
    ModMatrix lw = weyl::matrix_lift(w, p);
    int code = weyl::encode(w);
    for (auto &b1 : borel) {
      ModMatrix left = finalg::mat_mul_mod(b1, lw);
      for (auto &b2 : borel) {
        PackedKey key = grp::pack(finalg::mat_mul_mod(left, b2), e.spec);
        auto [it, inserted] = cell.emplace(key, code);
        if (!inserted && it->second != code)
          throw std::logic_error("cell_table_by_products: cells overlap");
      }
    }
  }
  std::vector<int> out(e.elems.size());
  for (size_t i = 0; i < e.elems.size(); i++) {
    auto it = cell.find(e.elems[i]);
    if (it == cell.end()) throw std::logic_error("cell_table_by_products: uncovered element");
    out[i] = it->second;
  }
  return out;
}

bool parabolic_membership(const ModMatrix &m, const std::vector<int> &gen_indices) {
  int g = m.rows / 2;
  WeylElt w = bruhat_cell(m);
  auto sub = weyl::parabolic_subgroup(g, gen_indices);
  return std::find(sub.begin(), sub.end(), w) != sub.end();
}

// ---------------------------------------------------------------------------

TitsReport tits_axioms_check(int g, long long p, const EnumResult &e) {
  TitsReport rep;
  std::vector<ModMatrix> borel;
  for (auto &k : e.elems) {
    ModMatrix m = grp::unpack(k, e.spec);
    if (in_borel(m)) borel.push_back(m);
  }
  auto all = weyl::all_elements(g);
  rep.t1_holds = true;
  for (int i = 0; i < g; i++) {
    WeylElt s = weyl::generator(g, i);
    ModMatrix ls = weyl::matrix_lift(s, p);
    for (auto &w : all) {
      ModMatrix lw = weyl::matrix_lift(w, p);
      int allowed1 = weyl::encode(compose(s, w));
      int allowed2 = weyl::encode(w);
      for (auto &b : borel) {
        // s b w must land in B(sw)B or BwB
        ModMatrix prod = finalg::mat_mul_mod(finalg::mat_mul_mod(ls, b), lw);
        int got = weyl::encode(bruhat_cell(prod));
        rep.products_checked++;
        if (got != allowed1 && got != allowed2) rep.t1_holds = false;
      }
    }
  }
  rep.t2_holds = true;
  for (int i = 0; i < g; i++) {
    WeylElt s = weyl::generator(g, i);
    ModMatrix ls = weyl::matrix_lift(s, p);
    bool escapes = false;
    for (auto &b : borel) {
      ModMatrix prod = finalg::mat_mul_mod(finalg::mat_mul_mod(ls, b), ls);
      if (!in_borel(prod)) { escapes = true; break; }
    }
    if (!escapes) rep.t2_holds = false;
  }
  return rep;
}

CensusReport parabolic_conjugate_census(int g, long long p, int k, const EnumResult &e,
                                        const std::vector<int> *cells_opt) {
  std::vector<int> idx;
  for (int i = 0; i < k; i++) idx.push_back(i);
  auto wi = weyl::parabolic_subgroup(g, idx);
  std::set<int> wi_codes;
  for (auto &w : wi) wi_codes.insert(weyl::encode(w));

  std::vector<int> idx_next = idx;
  if (k < g) idx_next.push_back(k);
  auto wnext = weyl::parabolic_subgroup(g, idx_next);
  std::set<int> wnext_codes;
  for (auto &w : wnext) wnext_codes.insert(weyl::encode(w));

  std::vector<int> cells = cells_opt ? *cells_opt : cell_table_fast(e);
  std::vector<ModMatrix> sub;       // P_{I_k} elements
  std::vector<PackedKey> next_set;  // P_{I_{k+1}} keys, sorted (elems is sorted)
  for (size_t i = 0; i < e.elems.size(); i++) {
    if (wi_codes.count(cells[i])) sub.push_back(grp::unpack(e.elems[i], e.spec));
    if (wnext_codes.count(cells[i])) next_set.push_back(e.elems[i]);
  }

  std::set<std::vector<PackedKey>> distinct;
  CensusReport rep;
  for (auto &sigma : weyl::all_elements(g)) {
    ModMatrix ls = weyl::matrix_lift(sigma, p);
    ModMatrix ls_inv = finalg::mat_inv_mod(ls);
    std::vector<PackedKey> conj;
    conj.reserve(sub.size());
    for (auto &m : sub)
      conj.push_back(grp::pack(
          finalg::mat_mul_mod(finalg::mat_mul_mod(ls, m), ls_inv), e.spec));
    std::sort(conj.begin(), conj.end());
    if (distinct.insert(conj).second) {
      if (std::includes(next_set.begin(), next_set.end(), conj.begin(), conj.end()))
        rep.contained_in_next++;
    }
  }
  rep.distinct_conjugates = (long long)distinct.size();
  return rep;
}

bool generation_check(int g, long long p, const WeylElt &sigma, size_t cap) {
  // generators of the Siegel parabolic: torus, unipotent uppers (symmetric
  // and GL-type), and lifts of the swap generators
  std::vector<ModMatrix> gens;
  long long root = 0;
  for (long long r = 1; r < p; r++) {
    // any generator of the units will do; smallest primitive root
    long long v = r, ord = 1;
    while (v != 1) { v = v * r % p; ord++; }
    if (ord == p - 1) { root = r; break; }
  }
  for (int i = 0; i < g; i++) {
    ModMatrix t = ModMatrix::identity(2 * g, p);
    t.at(i, i) = root;
    t.at(g + i, g + i) = mod_inverse_scalar(root, p);
    gens.push_back(t);
  }
  for (int i = 0; i < g; i++)
    for (int j = i; j < g; j++) {
      ModMatrix u = ModMatrix::identity(2 * g, p);
      u.at(i, g + j) = 1 % p;
      u.at(j, g + i) = 1 % p;
      gens.push_back(u);
      if (j > i) {
        ModMatrix a = ModMatrix::identity(2 * g, p);
        a.at(i, j) = 1;                       // A = I + E_ij
        a.at(g + j, g + i) = mod_reduce(-1, p);  // D = transpose-inverse
        gens.push_back(a);
      }
    }
  for (int i = 0; i + 1 < g; i++)
    gens.push_back(weyl::matrix_lift(weyl::generator(g, i), p));

  ModMatrix ls = weyl::matrix_lift(sigma, p);
  ModMatrix ls_inv = finalg::mat_inv_mod(ls);
  size_t base = gens.size();
  for (size_t i = 0; i < base; i++)
    gens.push_back(finalg::mat_mul_mod(finalg::mat_mul_mod(ls, gens[i]), ls_inv));

  grp::EnumResult c = grp::closure(gens, cap);
  return c.complete && Int(c.elems.size()) == grp::sp_order(g, p);
}

int parahoric_sign_bits(const WeylElt &cell) {
  int g = cell.rank();
  int bits = 0;
  for (int i = 0; i < g; i++)
    if (cell.signs[i] < 0) bits |= 1 << cell.perm[i];  // nu_{pi(i)} = eps_i
  return bits;
}

ParahoricReport parahoric_decomposition(int g, long long p, const EnumResult &e,
                                        bool verify_products) {
  ParahoricReport rep;
  rep.sizes.assign(1 << g, 0);
  std::vector<int> cells = cell_table_fast(e);
  std::vector<int> bits_of(e.elems.size());
  for (size_t i = 0; i < e.elems.size(); i++) {
    bits_of[i] = parahoric_sign_bits(weyl::decode(g, cells[i]));
    rep.sizes[bits_of[i]]++;
  }
  long long total = 0;
  bool all_nonempty = true;
  for (auto s : rep.sizes) {
    total += s;
    if (s == 0) all_nonempty = false;
  }
  rep.partition_ok = all_nonempty && total == (long long)e.elems.size();
  if (!verify_products) {
    rep.matches_products = true;
    return rep;
  }

  // direct product sets B lift(sigma_eps) P
  std::vector<ModMatrix> borel, siegel;
  for (auto &k : e.elems) {
    ModMatrix m = grp::unpack(k, e.spec);
    if (in_borel(m)) borel.push_back(m);
    if (in_chain_parabolic(m, g - 1)) siegel.push_back(m);
  }
  rep.matches_products = true;
  for (int eps = 0; eps < (1 << g); eps++) {
    WeylElt sigma = weyl::identity_elt(g);
    for (int i = 0; i < g; i++)
      if ((eps >> i) & 1) sigma.signs[i] = -1;
    ModMatrix ls = weyl::matrix_lift(sigma, p);
    std::set<PackedKey> built;
    for (auto &b : borel) {
      ModMatrix left = finalg::mat_mul_mod(b, ls);
      for (auto &q : siegel)
        built.insert(grp::pack(finalg::mat_mul_mod(left, q), e.spec));
    }
    if ((long long)built.size() != rep.sizes[eps]) rep.matches_products = false;
    for (size_t i = 0; i < e.elems.size(); i++) {
      bool inside = built.count(e.elems[i]) > 0;
      if (inside != (bits_of[i] == eps)) { rep.matches_products = false; break; }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

bool in_image(const ModMatrix &m, int g, const ImageTag &t) {
  switch (t.kind) {
    case ImageTag::reduction_kernel:
      return m == ModMatrix::identity(2 * g, m.mod);
    case ImageTag::chain_parabolic:
      return in_chain_parabolic(m, t.k);
    case ImageTag::torus:
      return is_diagonal(m);
  }
  return false;
}

Int flag_count_formula(int g, long long n, int k) {
  std::vector<int> idx;
  for (int i = 0; i < k; i++) idx.push_back(i);
  auto reps = weyl::min_coset_reps(g, idx);
  Int total = 1;
  for (auto [p, e] : finalg::factorize(n)) {
    Int base = 0;
    for (auto &w : reps) {
      Int term = 1;
      for (int t = 0; t < weyl::length(w); t++) term *= p;
      base += term;
    }
    int fiber_dim = g * g - k * (k + 1) / 2;  // dim of the flag space
    for (int t = 0; t < (e - 1) * fiber_dim; t++) base *= p;
    total *= base;
  }
  return total;
}

Int image_order_formula(int g, long long n, const ImageTag &t) {
  switch (t.kind) {
    case ImageTag::reduction_kernel:
      return 1;
    case ImageTag::torus: {
      Int phi = grp::euler_phi(n);
      Int r = 1;
      for (int i = 0; i < g; i++) r *= phi;
      return r;
    }
    case ImageTag::chain_parabolic:
      return grp::sp_order(g, n) / flag_count_formula(g, n, t.k);
  }
  return 0;
}

Int congruence_index_formula(int g, long long n, const ImageTag &t) {
  return grp::sp_order(g, n) / image_order_formula(g, n, t);
}

}  // namespace symp::bruhat
