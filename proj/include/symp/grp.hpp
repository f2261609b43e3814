#pragma once

// Symplectic and similitude groups over Z/nZ with respect to the standard
// form J = [[0, I], [-I, 0]].  Provides the multiplier character, closed-form
// group orders, a generating set, and cap-bounded breadth-first enumeration
// with bit-packed element keys so that groups up to a couple of million
// elements fit comfortably in memory.

#include "symp/finalg.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace symp::grp {

using finalg::Int;
using finalg::ModMatrix;

// J for rank g: block form [[0, I_g], [-I_g, 0]]
ModMatrix symplectic_form(int g, long long n);

// lambda with transpose(m) * J * m = lambda * J, if one exists
std::optional<long long> multiplier(const ModMatrix &m);

bool is_symplectic(const ModMatrix &m);   // multiplier 1
bool is_similitude(const ModMatrix &m);   // multiplier a unit

// <x, y> = transpose(x) J y for column vectors of length 2g
long long pair_vectors(const std::vector<long long> &x,
                       const std::vector<long long> &y, long long n);

Int euler_phi(long long n);

// |Sp(2g, Z/n)|: for a prime p this is p^{g^2} * prod_{i<=g} (p^{2i} - 1),
// for p^k multiply by p^{(k-1) g (2g+1)}, and the composite case is the
// product over prime-power factors.
Int sp_order(int g, long long n);

// |GSp(2g, Z/n)| = |Sp| * phi(n): the multiplier character is onto the units
Int gsp_order(int g, long long n);

// J together with the elementary symplectic transvections
// [[I, S], [0, I]] and [[I, 0], [S, I]], S running over the symmetric basis
std::vector<ModMatrix> sp_generators(int g, long long n);

// -----------------------------------------------------------------------
// packed element keys: each entry takes ceil(log2 n) bits, row major.
// 128 bits cover every group this tool ever enumerates in full.

using PackedKey = std::array<uint64_t, 2>;

struct PackSpec {
  int g = 0;
  long long n = 0;
  int bits = 0;   // per entry
  bool ok = false;  // fits in a PackedKey
};

PackSpec pack_spec(int g, long long n);
PackedKey pack(const ModMatrix &m, const PackSpec &s);
ModMatrix unpack(const PackedKey &k, const PackSpec &s);

struct KeyHash {
  size_t operator()(const PackedKey &k) const {
    uint64_t h = k[0] * 0x9e3779b97f4a7c15ULL;
    h ^= (k[1] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    return (size_t)(h ^ (h >> 29));
  }
};

// closure of a generating set under multiplication, breadth first.
// complete == false means the cap was hit and elems is a partial orbit.
struct EnumResult {
  bool complete = false;
  PackSpec spec;
  std::vector<PackedKey> elems;  // sorted, so iteration order is reproducible
};

EnumResult closure(const std::vector<ModMatrix> &gens, size_t cap);

// the full symplectic group via closure(sp_generators)
EnumResult enumerate_sp(int g, long long n, size_t cap);

}  // namespace symp::grp
