#include "symp/grp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace symp::grp {

using finalg::mod_reduce;

ModMatrix symplectic_form(int g, long long n) {
  ModMatrix j(2 * g, 2 * g, n);
  for (int i = 0; i < g; i++) {
    j.at(i, g + i) = 1 % n;
    j.at(g + i, i) = mod_reduce(-1, n);
  }
  return j;
}

std::optional<long long> multiplier(const ModMatrix &m) {
  if (m.rows != m.cols || m.rows % 2 != 0) return std::nullopt;
  int g = m.rows / 2;
  ModMatrix j = symplectic_form(g, m.mod);
  ModMatrix t = finalg::mat_mul_mod(finalg::mat_mul_mod(m.transpose(), j), m);
  long long lam = t.at(0, g);
  ModMatrix lj = finalg::mat_scale_mod(lam, j);
  if (!(t == lj)) return std::nullopt;
  return lam;
}

bool is_symplectic(const ModMatrix &m) {
  auto lam = multiplier(m);
  return lam && *lam == 1 % m.mod;
}

bool is_similitude(const ModMatrix &m) {
  auto lam = multiplier(m);
  return lam && std::gcd(*lam, m.mod) == 1;
}

long long pair_vectors(const std::vector<long long> &x,
                       const std::vector<long long> &y, long long n) {
  int g = (int)x.size() / 2;
  long long s = 0;
  for (int i = 0; i < g; i++)
    s = mod_reduce(s + x[i] * y[g + i] - x[g + i] * y[i], n);
  return s;
}

Int euler_phi(long long n) {
  Int r = 1;
  for (auto [p, e] : finalg::factorize(n)) {
    Int pe = 1;
    for (int i = 0; i < e - 1; i++) pe *= p;
    r *= pe * (p - 1);
  }
  return r;
}

Int sp_order(int g, long long n) {
  Int r = 1;
  for (auto [p, e] : finalg::factorize(n)) {
    Int prime_part = 1;
    for (int i = 0; i < g * g; i++) prime_part *= p;
    for (int i = 1; i <= g; i++) {
      Int q = 1;
      for (int t = 0; t < 2 * i; t++) q *= p;
      prime_part *= q - 1;
    }
    // lifting Z/p^e from Z/p scales by p^{(e-1) dim}, dim Sp = g(2g+1)
    for (int t = 0; t < (e - 1) * g * (2 * g + 1); t++) prime_part *= p;
    r *= prime_part;
  }
  return r;
}

Int gsp_order(int g, long long n) { return sp_order(g, n) * euler_phi(n); }

std::vector<ModMatrix> sp_generators(int g, long long n) {
  std::vector<ModMatrix> gens;
  gens.push_back(symplectic_form(g, n));
  auto transvection = [&](int i, int j, bool lower) {
    ModMatrix m = ModMatrix::identity(2 * g, n);
    if (!lower) {
      m.at(i, g + j) = 1 % n;
      m.at(j, g + i) = 1 % n;
    } else {
      m.at(g + i, j) = 1 % n;
      m.at(g + j, i) = 1 % n;
    }
    return m;
  };
  for (int i = 0; i < g; i++)
    for (int j = i; j < g; j++) {
      gens.push_back(transvection(i, j, false));
      gens.push_back(transvection(i, j, true));
    }
  return gens;
}

PackSpec pack_spec(int g, long long n) {
  PackSpec s;
  s.g = g;
  s.n = n;
  s.bits = 1;
  while ((1LL << s.bits) < n) s.bits++;
  s.ok = 4 * g * g * s.bits <= 128;
  return s;
}

PackedKey pack(const ModMatrix &m, const PackSpec &s) {
  PackedKey k{0, 0};
  int pos = 0;
  for (long long v : m.a) {
    int w = pos >> 6, off = pos & 63;
    k[w] |= (uint64_t)v << off;
    if (off + s.bits > 64 && w + 1 < 2) k[w + 1] |= (uint64_t)v >> (64 - off);
    pos += s.bits;
  }
  return k;
}

ModMatrix unpack(const PackedKey &k, const PackSpec &s) {
  ModMatrix m(2 * s.g, 2 * s.g, s.n);
  uint64_t mask = (s.bits == 64) ? ~0ULL : ((1ULL << s.bits) - 1);
  int pos = 0;
  for (auto &v : m.a) {
    int w = pos >> 6, off = pos & 63;
    uint64_t x = k[w] >> off;
    if (off + s.bits > 64 && w + 1 < 2) x |= k[w + 1] << (64 - off);
    v = (long long)(x & mask);
    pos += s.bits;
  }
  return m;
}

EnumResult closure(const std::vector<ModMatrix> &gens, size_t cap) {
  EnumResult out;
  if (gens.empty()) return out;
  int dim = gens[0].rows;
  long long n = gens[0].mod;
  out.spec = pack_spec(dim / 2, n);
  if (!out.spec.ok) return out;

  std::unordered_set<PackedKey, KeyHash> seen;
  seen.reserve(std::min<size_t>(cap + 1, size_t(1) << 21));
  std::deque<PackedKey> queue;

  ModMatrix id = ModMatrix::identity(dim, n);
  PackedKey k0 = pack(id, out.spec);
  seen.insert(k0);
  queue.push_back(k0);

  ModMatrix prod(dim, dim, n);
  while (!queue.empty()) {
    ModMatrix cur = unpack(queue.front(), out.spec);
    queue.pop_front();
    for (const ModMatrix &gmat : gens) {
      // prod = cur * g, written out to avoid reallocating
      for (int i = 0; i < dim; i++)
        for (int j = 0; j < dim; j++) {
          long long s = 0;
          for (int t = 0; t < dim; t++) s += cur.at(i, t) * gmat.at(t, j);
          prod.at(i, j) = s % n;
        }
      PackedKey k = pack(prod, out.spec);
      if (seen.insert(k).second) {
        if (seen.size() > cap) {
          out.elems.assign(seen.begin(), seen.end());
          std::sort(out.elems.begin(), out.elems.end());
          return out;  // partial, complete stays false
        }
        queue.push_back(k);
      }
    }
  }
  out.elems.assign(seen.begin(), seen.end());
  std::sort(out.elems.begin(), out.elems.end());
  out.complete = true;
  return out;
}

EnumResult enumerate_sp(int g, long long n, size_t cap) {
  return closure(sp_generators(g, n), cap);
}

}  // namespace symp::grp
