#include "symp/levels.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace symp::levels {

namespace {

long long norm(long long v, long long n) {
  long long r = v % n;
  return r < 0 ? r + n : r;
}

std::vector<long long> row_mod(const finalg::IntMatrix &m, int r, long long n) {
  std::vector<long long> out(m.cols);
  for (int c = 0; c < m.cols; ++c)
    out[c] = static_cast<long long>(m.at(r, c) % n);
  for (auto &v : out) v = norm(v, n);
  return out;
}

// generator of a cyclic line over a prime modulus: any basis row with a
// nonzero residue spans it
std::vector<long long> line_generator(const Subgroup &s) {
  for (int r = 0; r < s.basis.rows; ++r) {
    auto v = row_mod(s.basis, r, s.n);
    if (std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; }))
      return v;
  }
  throw std::logic_error("line has no nonzero generator");
}

struct Dsu {
  std::vector<int> up;
  explicit Dsu(int sz) : up(sz) {
    for (int i = 0; i < sz; ++i) up[i] = i;
  }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

std::vector<int> dense_labels(Dsu &d) {
  std::vector<int> out(d.up.size(), -1);
  std::map<int, int> seen;
  for (size_t i = 0; i < d.up.size(); ++i) {
    int r = d.find(static_cast<int>(i));
    auto it = seen.find(r);
    if (it == seen.end()) it = seen.emplace(r, static_cast<int>(seen.size())).first;
    out[i] = it->second;
  }
  return out;
}

// all d-dimensional subspaces of F_p^m as reduced row bases, one basis per
// subspace, generated pattern by pattern from the echelon normal form
std::vector<std::vector<std::vector<long long>>> subspaces_of_dim(int d, int m,
                                                                  long long p) {
  std::vector<std::vector<std::vector<long long>>> out;
  std::vector<int> piv(d);
  for (int i = 0; i < d; ++i) piv[i] = i;
  auto emit = [&]() {
    std::vector<std::pair<int, int>> free_pos;
    for (int r = 0; r < d; ++r)
      for (int c = piv[r] + 1; c < m; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end())
          free_pos.emplace_back(r, c);
    std::vector<long long> fill(free_pos.size(), 0);
    while (true) {
      std::vector<std::vector<long long>> rows(d, std::vector<long long>(m, 0));
      for (int r = 0; r < d; ++r) rows[r][piv[r]] = 1;
      for (size_t i = 0; i < free_pos.size(); ++i)
        rows[free_pos[i].first][free_pos[i].second] = fill[i];
      out.push_back(rows);
      size_t j = 0;
      while (j < fill.size() && fill[j] == p - 1) fill[j++] = 0;
      if (j == fill.size()) break;
      ++fill[j];
    }
  };
  if (d == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    emit();
    int j = d - 1;
    while (j >= 0 && piv[j] == m - d + j) --j;
    if (j < 0) break;
    ++piv[j];
    for (int i = j + 1; i < d; ++i) piv[i] = piv[i - 1] + 1;
  }
  return out;
}

bool rows_isotropic(const std::vector<std::vector<long long>> &rows, long long p) {
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j)
      if (grp::pair_vectors(rows[i], rows[j], p) != 0) return false;
  return true;
}

// rows of a contained in the span of b, both over a prime modulus
bool span_subset(const std::vector<std::vector<long long>> &a,
                 const std::vector<std::vector<long long>> &b, long long p) {
  int cols = static_cast<int>(b[0].size());
  ModMatrix stacked(static_cast<int>(a.size() + b.size()), cols, p);
  for (size_t r = 0; r < b.size(); ++r)
    for (int c = 0; c < cols; ++c) stacked.at(static_cast<int>(r), c) = b[r][c];
  for (size_t r = 0; r < a.size(); ++r)
    for (int c = 0; c < cols; ++c)
      stacked.at(static_cast<int>(b.size() + r), c) = a[r][c];
  return finalg::rank_mod(stacked) == static_cast<int>(b.size());
}

std::vector<std::vector<long long>> mat_rows_mul(
    const std::vector<std::vector<long long>> &coeff,
    const std::vector<std::vector<long long>> &base, long long p) {
  std::vector<std::vector<long long>> out(coeff.size(),
                                          std::vector<long long>(base[0].size(), 0));
  for (size_t r = 0; r < coeff.size(); ++r)
    for (size_t k = 0; k < base.size(); ++k)
      for (size_t c = 0; c < base[0].size(); ++c)
        out[r][c] = norm(out[r][c] + coeff[r][k] * base[k][c], p);
  return out;
}

std::vector<long long> unit_vector(int len, int pos) {
  std::vector<long long> v(len, 0);
  v[pos] = 1;
  return v;
}

}  // namespace

Subgroup subgroup_span(int g, long long n,
                       const std::vector<std::vector<long long>> &gens) {
  int dim = 2 * g;
  finalg::IntMatrix m(static_cast<int>(gens.size()) + dim, dim);
  for (size_t r = 0; r < gens.size(); ++r) {
    if (static_cast<int>(gens[r].size()) != dim)
      throw std::invalid_argument("generator length mismatch");
    for (int c = 0; c < dim; ++c) m.at(static_cast<int>(r), c) = norm(gens[r][c], n);
  }
  for (int i = 0; i < dim; ++i) m.at(static_cast<int>(gens.size()) + i, i) = n;
  Subgroup s;
  s.g = g;
  s.n = n;
  s.basis = finalg::hnf_rows(m);
  if (s.basis.rows != dim)
    throw std::logic_error("subgroup lattice lost full rank");
  return s;
}

Int subgroup_order(const Subgroup &s) {
  Int det = 1;
  for (int i = 0; i < s.basis.rows; ++i) det *= s.basis.at(i, i);
  Int total = 1;
  for (int i = 0; i < 2 * s.g; ++i) total *= s.n;
  return total / det;
}

bool subgroup_contains(const Subgroup &s, const std::vector<long long> &x) {
  int dim = 2 * s.g;
  std::vector<Int> y(dim);
  for (int i = 0; i < dim; ++i) y[i] = norm(x[i], s.n);
  for (int r = 0; r < dim; ++r) {
    Int d = s.basis.at(r, r);
    if (y[r] % d != 0) return false;
    Int q = y[r] / d;
    for (int c = r; c < dim; ++c) y[c] -= q * s.basis.at(r, c);
  }
  for (int i = 0; i < dim; ++i)
    if (y[i] != 0) return false;
  return true;
}

bool subgroup_isotropic(const Subgroup &s) {
  std::vector<std::vector<long long>> rows;
  for (int r = 0; r < s.basis.rows; ++r) rows.push_back(row_mod(s.basis, r, s.n));
  return rows_isotropic(rows, s.n);
}

FlagLevel standard_flag(int g, long long n) {
  FlagLevel f;
  for (int j = 1; j <= g; ++j) {
    std::vector<std::vector<long long>> gens;
    for (int i = 0; i < j; ++i) gens.push_back(unit_vector(2 * g, i));
    f.push_back(subgroup_span(g, n, gens));
  }
  return f;
}

FlagLevel standard_lagrangian(int g, long long n) {
  std::vector<std::vector<long long>> gens;
  for (int i = 0; i < g; ++i) gens.push_back(unit_vector(2 * g, i));
  return {subgroup_span(g, n, gens)};
}

TLevel standard_frame(int g, long long n) {
  TLevel t;
  for (int i = 0; i < 2 * g; ++i)
    t.lines.push_back(subgroup_span(g, n, {unit_vector(2 * g, i)}));
  return t;
}

bool t_structure_valid(const TLevel &t) {
  if (t.lines.empty()) return false;
  int g = t.lines[0].g;
  long long n = t.lines[0].n;
  if (static_cast<int>(t.lines.size()) != 2 * g) return false;
  std::vector<std::vector<long long>> gen;
  for (const auto &line : t.lines) {
    if (subgroup_order(line) != n) return false;
    gen.push_back(line_generator(line));
  }
  for (int i = 0; i < 2 * g; ++i)
    for (int j = i + 1; j < 2 * g; ++j) {
      long long v = grp::pair_vectors(gen[i], gen[j], n);
      bool partners = j == i + g;
      // partner lines span a hyperbolic plane, every other pair is orthogonal
      if (partners && std::gcd(v, n) != 1) return false;
      if (!partners && v != 0) return false;
    }
  std::vector<std::vector<long long>> first(gen.begin(), gen.begin() + g);
  std::vector<std::vector<long long>> second(gen.begin() + g, gen.end());
  Subgroup a = subgroup_span(g, n, first);
  Subgroup b = subgroup_span(g, n, second);
  Int lag = 1;
  for (int i = 0; i < g; ++i) lag *= n;
  if (subgroup_order(a) != lag || subgroup_order(b) != lag) return false;
  std::vector<std::vector<long long>> all = first;
  all.insert(all.end(), second.begin(), second.end());
  Subgroup whole = subgroup_span(g, n, all);
  return subgroup_order(whole) == lag * lag;
}

std::vector<FlagLevel> enumerate_lagrangians(int g, long long p) {
  std::vector<FlagLevel> out;
  for (const auto &rows : subspaces_of_dim(g, 2 * g, p))
    if (rows_isotropic(rows, p)) out.push_back({subgroup_span(g, p, rows)});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FlagLevel> enumerate_flags(int g, long long p) {
  std::vector<FlagLevel> out;
  std::vector<std::vector<std::vector<std::vector<long long>>>> coeff(g);
  for (int d = 1; d < g; ++d) coeff[d] = subspaces_of_dim(d, g, p);
  for (const auto &lag : subspaces_of_dim(g, 2 * g, p)) {
    if (!rows_isotropic(lag, p)) continue;
    // complete flags inside the Lagrangian, built from coefficient chains
    std::vector<std::vector<std::vector<long long>>> chain;
    auto emit = [&]() {
      FlagLevel f;
      for (const auto &c : chain)
        f.push_back(subgroup_span(g, p, mat_rows_mul(c, lag, p)));
      f.push_back(subgroup_span(g, p, lag));
      out.push_back(std::move(f));
    };
    std::function<void(int)> rec = [&](int d) {
      if (d == g) {
        emit();
        return;
      }
      for (const auto &cand : coeff[d]) {
        if (!chain.empty() && !span_subset(chain.back(), cand, p)) continue;
        chain.push_back(cand);
        rec(d + 1);
        chain.pop_back();
      }
    };
    rec(1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FlagLevel> enumerate_tail_flags(int g, long long p, int k) {
  std::vector<FlagLevel> out;
  for (const auto &f : enumerate_flags(g, p)) out.push_back(flag_tail(f, k));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<TLevel> enumerate_frames(int g, long long p) {
  std::vector<std::vector<long long>> lines;
  int dim = 2 * g;
  std::vector<long long> v(dim, 0);
  while (true) {
    int j = 0;
    while (j < dim && v[j] == p - 1) v[j++] = 0;
    if (j == dim) break;
    ++v[j];
    int first = 0;
    while (first < dim && v[first] == 0) ++first;
    if (v[first] == 1) lines.push_back(v);  // one generator per line
  }
  std::map<std::vector<long long>, Subgroup> wrap;
  for (const auto &l : lines) wrap.emplace(l, subgroup_span(g, p, {l}));

  std::vector<TLevel> out;
  std::vector<std::vector<long long>> chosen;
  std::function<void(int)> rec = [&](int slot) {
    if (slot == dim) {
      TLevel t;
      for (const auto &c : chosen) t.lines.push_back(wrap.at(c));
      out.push_back(std::move(t));
      return;
    }
    for (const auto &cand : lines) {
      bool ok = true;
      for (int i = 0; i < static_cast<int>(chosen.size()) && ok; ++i) {
        long long pr = grp::pair_vectors(chosen[i], cand, p);
        bool partners = slot >= g && i == slot - g;
        ok = partners ? pr != 0 : pr == 0;
      }
      if (!ok) continue;
      chosen.push_back(cand);
      rec(slot + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup act_subgroup(const ModMatrix &gamma, const Subgroup &s) {
  int dim = 2 * s.g;
  std::vector<std::vector<long long>> gens;
  for (int r = 0; r < s.basis.rows; ++r) {
    auto v = row_mod(s.basis, r, s.n);
    std::vector<long long> w(dim, 0);
    for (int i = 0; i < dim; ++i) {
      long long acc = 0;
      for (int j = 0; j < dim; ++j) acc = norm(acc + gamma.at(i, j) * v[j], s.n);
      w[i] = acc;
    }
    gens.push_back(std::move(w));
  }
  return subgroup_span(s.g, s.n, gens);
}

FlagLevel act_flag(const ModMatrix &gamma, const FlagLevel &f) {
  FlagLevel out;
  for (const auto &s : f) out.push_back(act_subgroup(gamma, s));
  return out;
}

TLevel act_frame(const ModMatrix &gamma, const TLevel &t) {
  TLevel out;
  for (const auto &line : t.lines) out.lines.push_back(act_subgroup(gamma, line));
  return out;
}

FlagLevel flag_tail(const FlagLevel &full, int k) {
  if (k < 0 || k >= static_cast<int>(full.size()))
    throw std::invalid_argument("tail index out of range");
  return FlagLevel(full.begin() + k, full.end());
}

FlagLevel frame_to_flag(const TLevel &t) {
  int g = t.lines[0].g;
  long long n = t.lines[0].n;
  FlagLevel f;
  std::vector<std::vector<long long>> gens;
  for (int j = 0; j < g; ++j) {
    for (int r = 0; r < t.lines[j].basis.rows; ++r)
      gens.push_back(row_mod(t.lines[j].basis, r, n));
    f.push_back(subgroup_span(g, n, gens));
  }
  return f;
}

FlagLevel frame_to_tail(const TLevel &t, int k) { return flag_tail(frame_to_flag(t), k); }

TLevel weyl_twist(const weyl::WeylElt &sigma, const TLevel &t) {
  auto tb = weyl::two_block_perm(sigma);
  TLevel out;
  out.lines.resize(t.lines.size());
  for (size_t j = 0; j < t.lines.size(); ++j) out.lines[tb[j]] = t.lines[j];
  return out;
}

std::vector<int> connected_components(const std::vector<FlagLevel> &targets,
                                      const std::vector<TLevel> &frames,
                                      const std::vector<weyl::WeylElt> &twists,
                                      int k) {
  std::map<FlagLevel, int> index;
  for (size_t i = 0; i < targets.size(); ++i) index.emplace(targets[i], static_cast<int>(i));
  auto locate = [&](const FlagLevel &f) {
    auto it = index.find(f);
    if (it == index.end()) throw std::logic_error("projection missed the target list");
    return it->second;
  };
  Dsu dsu(static_cast<int>(targets.size()));
  for (const auto &t : frames) {
    int a = locate(frame_to_tail(t, k));
    for (const auto &s : twists) dsu.unite(a, locate(frame_to_tail(weyl_twist(s, t), k)));
  }
  return dense_labels(dsu);
}

std::vector<int> fiber_labels(const std::vector<FlagLevel> &targets,
                              const std::vector<FlagLevel> &coarser, int drop) {
  std::map<FlagLevel, int> index;
  for (size_t i = 0; i < coarser.size(); ++i) index.emplace(coarser[i], static_cast<int>(i));
  std::vector<int> out;
  out.reserve(targets.size());
  for (const auto &f : targets) {
    auto it = index.find(flag_tail(f, drop));
    if (it == index.end()) throw std::logic_error("tail missing from coarser list");
    out.push_back(it->second);
  }
  return out;
}

bool same_partition(const std::vector<int> &a, const std::vector<int> &b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> fa, fb;
  std::vector<int> na, nb;
  for (size_t i = 0; i < a.size(); ++i) {
    na.push_back(fa.emplace(a[i], static_cast<int>(fa.size())).first->second);
    nb.push_back(fb.emplace(b[i], static_cast<int>(fb.size())).first->second);
  }
  return na == nb;
}

}  // namespace symp::levels
