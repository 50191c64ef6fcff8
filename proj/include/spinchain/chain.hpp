#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace spinchain {

// Basis states of an N-site chain are the integers 0 .. 2^N-1; site i
// (1-based, as in the physics convention) owns the i-th most significant
// of the N bits, so site 1 is the leading bit.
using SpinIndex = std::uint32_t;

// Thrown when an operation would exceed a dense-build or oracle cap, as
// opposed to being outright invalid (std::invalid_argument covers that).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChainSpec {
 public:
  static constexpr int kMinSites = 2;
  static constexpr int kMaxSites = 24;  // one machine word of basis index

  explicit ChainSpec(int n_sites) : n_(n_sites) {
    if (n_ < kMinSites || n_ > kMaxSites)
      throw std::invalid_argument("ChainSpec: n_sites must be in [" +
                                  std::to_string(kMinSites) + ", " +
                                  std::to_string(kMaxSites) + "], got " +
                                  std::to_string(n_sites));
  }

  int sites() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  SpinIndex state_mask() const { return static_cast<SpinIndex>(dim() - 1); }

  // Cyclic site arithmetic: accepts any i (also 0 or N+1) and folds it
  // back into 1..N, so that site 0 == site N and site N+1 == site 1.
  int wrap_site(int i) const {
    int m = (i - 1) % n_;
    if (m < 0) m += n_;
    return m + 1;
  }

  // Bit owned by (1-based, already-wrapped) site i.
  SpinIndex site_mask(int i) const { return SpinIndex{1} << (n_ - i); }

  void check_site(int i) const {
    if (i < 1 || i > n_)
      throw std::invalid_argument("site index out of range: " +
                                  std::to_string(i));
  }
  void check_state(SpinIndex r) const {
    if (r >= dim())
      throw std::invalid_argument("basis index out of range: " +
                                  std::to_string(r));
  }

 private:
  int n_;
};

// r_i: the i-th most significant bit of the N-bit string, i.e. the parity
// of floor(r / 2^(N-i)).
inline int site_bit(SpinIndex r, int i, const ChainSpec& spec) {
  spec.check_site(i);
  return static_cast<int>((r >> (spec.sites() - i)) & 1u);
}

// Same, but i may be off by one in either direction (cyclic neighbours).
inline int cyclic_bit(SpinIndex r, int i, const ChainSpec& spec) {
  return site_bit(r, spec.wrap_site(i), spec);
}

// m_r: number of excited single-spin states in the product state.
inline int weight(SpinIndex r, const ChainSpec& spec) {
  spec.check_state(r);
  return std::popcount(r);
}

// The string shifted one site left cyclically: bit i of the result is
// bit i+1 of x. Pairing x with rotate_once(x) visits every bond once.
inline SpinIndex rotate_once(SpinIndex x, const ChainSpec& spec) {
  const int n = spec.sites();
  return ((x << 1) | (x >> (n - 1))) & spec.state_mask();
}

// Number of adjacent site pairs with differing bits; equals the
// domain-wall sum Σ_i sin²((r_i − r_{i+1})π/2) as an exact integer.
inline int domain_walls(SpinIndex r, const ChainSpec& spec) {
  spec.check_state(r);
  return std::popcount(r ^ rotate_once(r, spec));
}

// Structural data of a basis-state pair, the only inputs the off-diagonal
// matrix-element selectors need.
struct PairProfile {
  int alpha;    // #{i : r_i == s_i}
  int beta;     // #{i : r_i == s_i and r_{i+1} == s_{i+1}}, cyclic
  int hamming;  // N - alpha
  std::optional<int> k;  // the unique differing site when hamming == 1
};

inline PairProfile pair_profile(SpinIndex r, SpinIndex s,
                                const ChainSpec& spec) {
  spec.check_state(r);
  spec.check_state(s);
  const int n = spec.sites();
  const SpinIndex x = r ^ s;
  PairProfile p;
  p.hamming = std::popcount(x);
  p.alpha = n - p.hamming;
  // A site counts toward beta iff neither it nor its right neighbour
  // differs, i.e. the corresponding bit of x | rot(x) is clear.
  p.beta = n - std::popcount(x | rotate_once(x, spec));
  if (p.hamming == 1) p.k = n - std::countr_zero(x);
  return p;
}

// Exact binomial for the small arguments we need (N <= 24).
inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t v = 1;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

// g(E_r): number of basis states sharing the energy of weight-m states.
inline std::int64_t degeneracy(int m, const ChainSpec& spec) {
  if (m < 0 || m > spec.sites())
    throw std::invalid_argument("degeneracy: weight out of range: " +
                                std::to_string(m));
  return binomial(spec.sites(), m);
}

}  // namespace spinchain
