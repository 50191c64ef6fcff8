#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cstdint>
#include <string>

#include "spinchain/chain.hpp"

namespace spinchain {

// 0/1 bookkeeping matrices behind the matrix-element derivation. They are
// exact integer objects, used by the verification suite only — the closed
// forms never touch them. 2^N x 2^N dense, so capped harder than the
// Hamiltonian builds.
inline constexpr int kStructuralSiteCap = 12;

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class StructuralKind {
  AlphaSite,  // alpha_i[r][s] = [r_i == s_i]
  BetaSite,   // beta_i[r][s]  = [r_i == s_i][r_{i+1} == s_{i+1}] (cyclic)
  CSite,      // c_i[r][s]     = [r, s agree everywhere except maybe i]
  DSite,      // d_i[r][s]     = [agree everywhere except maybe i, i+1]
  AlphaSum,   // Sum_i alpha_i (entrywise alpha_rs)
  BetaSum,    // Sum_i beta_i  (entrywise beta_rs)
  CSum,
  DSum,
  AllOnes,    // J_{2^N}
};

inline bool structural_kind_per_site(StructuralKind kind) {
  switch (kind) {
    case StructuralKind::AlphaSite:
    case StructuralKind::BetaSite:
    case StructuralKind::CSite:
    case StructuralKind::DSite:
      return true;
    default:
      return false;
  }
}

namespace detail {

inline void check_structural_cap(const ChainSpec& spec) {
  if (spec.sites() > kStructuralSiteCap)
    throw ResourceError("structural matrices capped at N = " +
                        std::to_string(kStructuralSiteCap) +
                        " sites, requested N = " +
                        std::to_string(spec.sites()));
}

inline IntMatrix per_site_structural(StructuralKind kind, int site,
                                     const ChainSpec& spec) {
  const std::size_t dim = spec.dim();
  const SpinIndex mask_i = spec.site_mask(site);
  const SpinIndex mask_pair =
      mask_i | spec.site_mask(spec.wrap_site(site + 1));
  IntMatrix M(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t s = 0; s < dim; ++s) {
      const SpinIndex x =
          static_cast<SpinIndex>(r) ^ static_cast<SpinIndex>(s);
      std::int64_t v = 0;
      switch (kind) {
        case StructuralKind::AlphaSite:
          v = (x & mask_i) == 0;
          break;
        case StructuralKind::BetaSite:
          v = (x & mask_pair) == 0;
          break;
        case StructuralKind::CSite:
          v = (x & ~mask_i & spec.state_mask()) == 0;
          break;
        case StructuralKind::DSite:
        default:
          v = (x & ~mask_pair & spec.state_mask()) == 0;
          break;
      }
      M(r, s) = v;
    }
  }
  return M;
}

}  // namespace detail

// Per-site kinds take the 1-based site; sums and AllOnes ignore it. The
// *Sum kinds are literal sums of their per-site matrices — the compact
// selector expressions the matrix elements use (alpha_rs = N - hamming,
// the d_rs two-case display, ...) are claims verified against these in
// the test suite, not baked in here.
inline IntMatrix structural_matrix(StructuralKind kind, int site,
                                   const ChainSpec& spec) {
  detail::check_structural_cap(spec);
  if (structural_kind_per_site(kind)) {
    spec.check_site(site);
    return detail::per_site_structural(kind, site, spec);
  }
  const std::size_t dim = spec.dim();
  if (kind == StructuralKind::AllOnes) return IntMatrix::Ones(dim, dim);

  StructuralKind base;
  switch (kind) {
    case StructuralKind::AlphaSum: base = StructuralKind::AlphaSite; break;
    case StructuralKind::BetaSum:  base = StructuralKind::BetaSite;  break;
    case StructuralKind::CSum:     base = StructuralKind::CSite;     break;
    case StructuralKind::DSum: default: base = StructuralKind::DSite; break;
  }
  IntMatrix M = IntMatrix::Zero(dim, dim);
  for (int i = 1; i <= spec.sites(); ++i)
    M += detail::per_site_structural(base, i, spec);
  return M;
}

}  // namespace spinchain
