#include "symp/lattice.hpp"

#include "symp/grp.hpp"

#include <algorithm>
#include <stdexcept>

namespace symp::lattice {

namespace {

// raw entries of the stored Hermite basis; they already lie in [0, p^2]
std::vector<long long> basis_row(const levels::Subgroup &s, int r) {
  std::vector<long long> out(s.basis.cols);
  for (int c = 0; c < s.basis.cols; ++c)
    out[c] = static_cast<long long>(s.basis.at(r, c));
  return out;
}

bool row_divisible(const std::vector<long long> &v, long long p) {
  for (long long x : v)
    if (x % p != 0) return false;
  return true;
}

std::vector<long long> row_scaled(const std::vector<long long> &v, long long c,
                                  long long m) {
  std::vector<long long> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = (v[i] * c) % m;
  return out;
}

std::vector<long long> row_div_p(const std::vector<long long> &v, long long p) {
  std::vector<long long> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] % p != 0) throw std::logic_error("lattice: generator not divisible");
    out[i] = v[i] / p;
  }
  return out;
}

bool first_block_divisible(const DecoratedChain &dc) {
  for (int k = 0; k < dc.base.g; ++k)
    if (!row_divisible(dc.line_enc[k], dc.base.p)) return false;
  return true;
}

// whole lattice inside the standard one, so scaling it up stays in range
bool row_divisible_all(const Lattice &l) {
  for (int r = 0; r < 2 * l.g; ++r)
    if (!row_divisible(basis_row(l.enc, r), l.p)) return false;
  return true;
}

// scale the whole configuration by p; always stays representable
DecoratedChain scale_decorated(const DecoratedChain &dc) {
  DecoratedChain out;
  out.base = scale_lattice(dc.base, 1);
  out.line_enc.reserve(dc.line_enc.size());
  const long long p2 = dc.base.p * dc.base.p;
  for (const auto &l : dc.line_enc) out.line_enc.push_back(row_scaled(l, dc.base.p, p2));
  return out;
}

ChainOfLattices chain_of_raw(DecoratedChain d) {
  if (!first_block_divisible(d)) d = scale_decorated(d);
  const int g = d.base.g;
  const long long p = d.base.p;
  ChainOfLattices c;
  c.members.push_back(d.base);
  std::vector<std::vector<long long>> gens;
  for (int r = 0; r < 2 * g; ++r) gens.push_back(basis_row(d.base.enc, r));
  for (int j = 0; j < g; ++j) {
    gens.push_back(row_div_p(d.line_enc[j], p));
    c.members.push_back(lattice_from_enc(g, p, gens));
  }
  return c;
}

}  // namespace

Lattice standard_lattice(int g, long long p) {
  std::vector<std::vector<long long>> gens;
  for (int i = 0; i < 2 * g; ++i) {
    std::vector<long long> e(2 * g, 0);
    e[i] = p;
    gens.push_back(e);
  }
  return lattice_from_enc(g, p, gens);
}

Lattice lattice_from_enc(int g, long long p,
                         const std::vector<std::vector<long long>> &enc_gens) {
  Lattice out;
  out.g = g;
  out.p = p;
  out.enc = levels::subgroup_span(g, p * p, enc_gens);
  return out;
}

std::vector<std::vector<long long>> lattice_rows(const Lattice &l) {
  std::vector<std::vector<long long>> out;
  for (int r = 0; r < 2 * l.g; ++r) out.push_back(basis_row(l.enc, r));
  return out;
}

Lattice scale_lattice(const Lattice &l, int k) {
  if (k == 0) return l;
  if (k != 1 && k != -1) throw std::logic_error("lattice: scale step out of range");
  const long long p2 = l.p * l.p;
  std::vector<std::vector<long long>> gens;
  for (int r = 0; r < 2 * l.g; ++r) {
    std::vector<long long> row = basis_row(l.enc, r);
    gens.push_back(k == 1 ? row_scaled(row, l.p, p2) : row_div_p(row, l.p));
  }
  return lattice_from_enc(l.g, l.p, gens);
}

bool lattice_subset(const Lattice &inner, const Lattice &outer) {
  const long long p2 = inner.p * inner.p;
  for (int r = 0; r < 2 * inner.g; ++r) {
    std::vector<long long> row = basis_row(inner.enc, r);
    for (auto &x : row) x %= p2;
    if (!levels::subgroup_contains(outer.enc, row)) return false;
  }
  return true;
}

Int lattice_index(const Lattice &outer, const Lattice &inner) {
  if (!lattice_subset(inner, outer))
    throw std::logic_error("lattice: index of a non-sublattice");
  return levels::subgroup_order(outer.enc) / levels::subgroup_order(inner.enc);
}

Lattice dual_lattice(const Lattice &l) {
  const int m = 2 * l.g;
  const long long p2 = l.p * l.p;

  // <x, b> integral for all rows b of the encoded basis becomes a kernel
  // computation mod p^2 once both sides are carried at the p-scale
  finalg::IntMatrix jmat(m, m);
  for (int i = 0; i < l.g; ++i) {
    jmat.at(i, l.g + i) = 1;
    jmat.at(l.g + i, i) = -1;
  }
  finalg::IntMatrix a = finalg::int_mul(l.enc.basis, jmat);
  finalg::SNFResult s = finalg::smith_normal_form(a);

  std::vector<std::vector<long long>> gens;
  for (int i = 0; i < m; ++i) {
    long long d = static_cast<long long>(s.d.at(i, i) % p2);
    if (d < 0) d += p2;
    // p^2 / gcd(d, p^2)
    long long mult = d == 0 ? 1 : d % l.p == 0 ? l.p : p2;
    std::vector<long long> y(m);
    for (int j = 0; j < m; ++j)
      y[j] = static_cast<long long>((s.v.at(j, i) * mult) % p2);
    gens.push_back(y);
  }
  return lattice_from_enc(l.g, l.p, gens);
}

bool pair_valid(const IsogenyPair &pr) {
  const int g = pr.small.g;
  const long long p = pr.small.p;
  const long long p2 = p * p;
  if (pr.big.g != g || pr.big.p != p) return false;
  if (!lattice_subset(pr.small, pr.big)) return false;
  Int expect = 1;
  for (int i = 0; i < g; ++i) expect *= p;
  if (lattice_index(pr.big, pr.small) != expect) return false;
  if (!lattice_subset(scale_lattice(pr.big, 1), pr.small)) return false;
  // the kernel is isotropic exactly when the big member pairs with itself
  // inside p^{-1} Z, which at the encoded scale means pairing to zero mod p
  std::vector<std::vector<long long>> rows = lattice_rows(pr.big);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j)
      if (grp::pair_vectors(rows[i], rows[j], p2) % p != 0) return false;
  return true;
}

IsogenyPair normalize_pair(const IsogenyPair &pr) {
  IsogenyPair out = pr;
  // push the configuration as high in the window as it goes
  while (row_divisible_all(out.big)) {
    out.big = scale_lattice(out.big, -1);
    out.small = scale_lattice(out.small, -1);
  }
  return out;
}

IsogenyPair al_pair(const IsogenyPair &pr) {
  IsogenyPair out;
  bool small_low = true;
  for (int r = 0; r < 2 * pr.small.g && small_low; ++r)
    small_low = row_divisible(basis_row(pr.small.enc, r), pr.small.p);
  if (small_low) {
    out.small = pr.big;
    out.big = scale_lattice(pr.small, -1);
  } else {
    out.small = scale_lattice(pr.big, 1);
    out.big = pr.small;
  }
  return normalize_pair(out);
}

std::vector<IsogenyPair> enumerate_based_pairs(int g, long long p) {
  std::vector<IsogenyPair> out;
  Lattice base = standard_lattice(g, p);
  for (const levels::FlagLevel &lag : levels::enumerate_lagrangians(g, p)) {
    std::vector<std::vector<long long>> gens;
    for (int r = 0; r < 2 * g; ++r) gens.push_back(basis_row(lag.front(), r));
    IsogenyPair pr;
    pr.small = base;
    pr.big = lattice_from_enc(g, p, gens);
    out.push_back(pr);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool chain_valid(const ChainOfLattices &c) {
  if (c.members.empty()) return false;
  const int g = c.members.front().g;
  const long long p = c.members.front().p;
  if (static_cast<int>(c.members.size()) != g + 1) return false;
  ChainOfLattices cn = normalize_chain(c);
  for (int j = 0; j < g; ++j) {
    if (!lattice_subset(cn.members[j], cn.members[j + 1])) return false;
    if (lattice_index(cn.members[j + 1], cn.members[j]) != p) return false;
  }
  const Lattice &bottom = cn.members.front();
  const Lattice &top = cn.members.back();
  bool type_a = dual_lattice(bottom) == bottom &&
                dual_lattice(top) == scale_lattice(top, 1);
  if (type_a) return true;
  Lattice ptop = scale_lattice(top, 1);
  bool type_b = dual_lattice(bottom) == scale_lattice(bottom, 1) &&
                dual_lattice(ptop) == ptop;
  return type_b;
}

ChainOfLattices normalize_chain(const ChainOfLattices &c) {
  ChainOfLattices out = c;
  while (!out.members.empty() && row_divisible_all(out.members.back())) {
    for (Lattice &l : out.members) l = scale_lattice(l, -1);
  }
  return out;
}

ChainOfLattices al_chain(const ChainOfLattices &c) {
  ChainOfLattices cn = normalize_chain(c);
  const int g = cn.members.front().g;
  ChainOfLattices out;
  for (int j = 0; j <= g; ++j)
    out.members.push_back(scale_lattice(dual_lattice(cn.members[g - j]), -1));
  return normalize_chain(out);
}

IsogenyPair chain_to_pair(const ChainOfLattices &c) {
  IsogenyPair pr;
  pr.small = c.members.front();
  pr.big = c.members.back();
  return pr;
}

std::vector<ChainOfLattices> enumerate_based_chains(int g, long long p) {
  std::vector<ChainOfLattices> out;
  Lattice base = standard_lattice(g, p);
  for (const levels::FlagLevel &flag : levels::enumerate_flags(g, p)) {
    ChainOfLattices c;
    c.members.push_back(base);
    for (const levels::Subgroup &step : flag) {
      std::vector<std::vector<long long>> gens;
      for (int r = 0; r < 2 * g; ++r) gens.push_back(basis_row(step, r));
      c.members.push_back(lattice_from_enc(g, p, gens));
    }
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DecoratedChain decorated_from_frame(const levels::TLevel &frame) {
  const int g = static_cast<int>(frame.lines.size()) / 2;
  const long long p = frame.lines.front().n;
  DecoratedChain out;
  out.base = standard_lattice(g, p);
  for (const levels::Subgroup &line : frame.lines) {
    int unit_row = -1;
    for (int r = 0; r < 2 * g; ++r)
      if (line.basis.at(r, r) == 1) {
        unit_row = r;
        break;
      }
    if (unit_row < 0) throw std::logic_error("lattice: degenerate line");
    std::vector<long long> gen = basis_row(line, unit_row);
    out.line_enc.push_back(row_scaled(gen, p, p * p));
  }
  return out;
}

ChainOfLattices chain_of(const DecoratedChain &dc) {
  return normalize_chain(chain_of_raw(dc));
}

DecoratedChain weyl_move(const weyl::WeylElt &sigma, const DecoratedChain &dc) {
  std::vector<int> tb = weyl::two_block_perm(sigma);
  DecoratedChain out;
  out.base = dc.base;
  out.line_enc.resize(dc.line_enc.size());
  for (size_t j = 0; j < dc.line_enc.size(); ++j)
    out.line_enc[tb[j]] = dc.line_enc[j];
  return out;
}

DecoratedChain al_decorated(const DecoratedChain &dc) {
  DecoratedChain d = dc;
  if (!first_block_divisible(d)) d = scale_decorated(d);
  const int g = d.base.g;
  const long long p = d.base.p;
  ChainOfLattices raw = chain_of_raw(d);

  DecoratedChain out;
  out.base = raw.members[g];
  out.line_enc.resize(2 * g);
  // partner lines enter in reversed order; the old scale-one lines move up to
  // scale p^{-1} and the old p^{-1} block comes back down
  for (int j = 0; j < g; ++j) {
    out.line_enc[j] = d.line_enc[2 * g - 1 - j];
    out.line_enc[g + j] = row_div_p(d.line_enc[g - 1 - j], p);
  }
  return out;
}

SquareReport square_commutes(int g, long long p) {
  SquareReport rep;
  for (const ChainOfLattices &c : enumerate_based_chains(g, p)) {
    ++rep.chains;
    IsogenyPair via_chain = normalize_pair(chain_to_pair(al_chain(c)));
    IsogenyPair via_pair = al_pair(normalize_pair(chain_to_pair(c)));
    if (!(via_chain == via_pair)) rep.commutes = false;
  }
  return rep;
}

NoncommutationReport al_weyl_noncommutation(int g, long long p,
                                            bool search_companions) {
  NoncommutationReport rep;
  std::vector<levels::TLevel> frames = levels::enumerate_frames(g, p);
  std::vector<weyl::WeylElt> sigmas = weyl::all_elements(g);
  rep.frames = static_cast<int>(frames.size());

  std::vector<DecoratedChain> decs, al_decs;
  decs.reserve(frames.size());
  al_decs.reserve(frames.size());
  for (const levels::TLevel &t : frames) {
    decs.push_back(decorated_from_frame(t));
    al_decs.push_back(al_decorated(decs.back()));
  }

  weyl::WeylElt id = weyl::identity_elt(g);
  auto lhs_of = [&](const weyl::WeylElt &s, size_t i) {
    return chain_of(al_decorated(weyl_move(s, decs[i])));
  };
  auto rhs_of = [&](const weyl::WeylElt &s, size_t i) {
    return chain_of(weyl_move(s, al_decs[i]));
  };

  for (const weyl::WeylElt &s : sigmas) {
    bool is_id = s == id;
    for (size_t i = 0; i < frames.size(); ++i) {
      ChainOfLattices lhs = lhs_of(s, i);
      ChainOfLattices rhs = rhs_of(s, i);
      bool same = lhs == rhs;
      if (is_id && !same) rep.id_commutes = false;
      if (!is_id && !same && !rep.witness_found) {
        rep.witness_found = true;
        rep.witness_sigma = weyl::encode(s);
        rep.witness_frame = static_cast<int>(i);
        rep.lhs = lhs;
        rep.rhs = rhs;
      }
    }
  }

  if (search_companions) {
    for (const weyl::WeylElt &s : sigmas) {
      std::vector<ChainOfLattices> lhs_all;
      lhs_all.reserve(frames.size());
      for (size_t i = 0; i < frames.size(); ++i) lhs_all.push_back(lhs_of(s, i));
      int found = -1;
      for (const weyl::WeylElt &s2 : sigmas) {
        bool ok = true;
        for (size_t i = 0; i < frames.size() && ok; ++i)
          ok = lhs_all[i] == rhs_of(s2, i);
        if (ok) {
          found = weyl::encode(s2);
          break;
        }
      }
      rep.companions.emplace_back(weyl::encode(s), found);
    }
  }
  return rep;
}

}  // namespace symp::lattice
