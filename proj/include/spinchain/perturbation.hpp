#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "spinchain/chain.hpp"
#include "spinchain/fields.hpp"
#include "spinchain/polynomial.hpp"
#include "spinchain/rational.hpp"

namespace spinchain {

// The combinatorial state-counting behind the closed forms assumes the
// neighbourhoods of flipped sites never wrap onto each other; that is
// argued for long chains and verified against the numeric oracle for
// N = 5..8. Shorter chains are refused rather than extrapolated.
inline constexpr int kClosedFormMinSites = 5;

// ---------------------------------------------------------------------
// Exact coefficient data. Everything series-related is generated from two
// tables and converted to floating point at the last moment.

// c_k^(m): the series coefficient table, stored as positive rationals;
// the (-1)^(m-k) sign lives in the series itself. (With that sign the
// k = 0 column reproduces the closed rule (-1)^m/2^(m+1).)
inline Rational series_coefficient(int m, int k) {
  if (m < 1 || m > 4 || k < 0 || k >= m)
    throw std::invalid_argument("series_coefficient: need 1 <= m <= 4, 0 <= k < m");
  switch (m) {
    case 1: return {1, 4};
    case 2: return k == 0 ? Rational{1, 8} : Rational{7, 64};
    case 3:
      if (k == 0) return {1, 16};
      return k == 1 ? Rational{39, 256} : Rational{23, 256};
    default:
      if (k == 0) return {1, 32};
      if (k == 1) return {151, 1024};
      return k == 2 ? Rational{161, 768} : Rational{4589, 49152};
  }
}

// Order-m correction as a sum of f^(2p) g^(2q) monomials with exact
// rational prefactors; e_m = (N J^m / h^(m-1)) * Sum coeff * f^2p g^2q.
// Single source of truth for both the numeric evaluation and the
// symbolic re-expansion that recovers the series table.
struct CorrectionTerm {
  int f_pow;  // p: power of f^2
  int g_pow;  // q: power of g^2
  Rational coeff;
};

inline const std::vector<CorrectionTerm>& correction_terms(int m) {
  static const std::vector<CorrectionTerm> kTerms[4] = {
      {{1, 0, {-1, 4}}},
      {{1, 1, {-1, 4}}, {0, 2, {-1, 32}}},
      {{1, 2, {-7, 64}}, {2, 1, {1, 4}}},
      {{1, 3, {-13, 192}}, {2, 2, {55, 128}}, {3, 1, {-1, 4}},
       {0, 4, {-1, 2048}}},
  };
  if (m < 1 || m > 4)
    throw std::invalid_argument("correction_terms: order must be 1..4");
  return kTerms[m - 1];
}

// ---------------------------------------------------------------------
// Floating-point evaluation.

inline void check_closed_form_sites(const ChainSpec& spec) {
  if (spec.sites() < kClosedFormMinSites)
    throw std::invalid_argument(
        "perturbative closed forms require N >= " +
        std::to_string(kClosedFormMinSites) +
        " (state counting assumes non-wrapping neighbourhoods); got N = " +
        std::to_string(spec.sites()));
}

// E_0^(m) for m = 1..4:
//   e1 = -N f^2 J/4
//   e2 = -N f^2 g^2 J^2/(4h) - N g^4 J^2/(32h)
//   e3 = -7N f^2 g^4 J^3/(64h^2) + N f^4 g^2 J^3/(4h^2)
//   e4 = -13N f^2 g^6 J^4/(192h^3) + 55N f^4 g^4 J^4/(128h^3)
//        - N f^6 g^2 J^4/(4h^3) - N g^8 J^4/(2048h^3)
inline double correction(int m, const ChainSpec& spec,
                         const FieldParams& p) {
  check_closed_form_sites(spec);
  const double f2 = p.f() * p.f();
  const double g2 = p.g() * p.g();
  double poly = 0.0;
  for (const CorrectionTerm& t : correction_terms(m))
    poly += t.coeff.to_double() * std::pow(f2, t.f_pow) *
            std::pow(g2, t.g_pow);
  return poly * spec.sites() * std::pow(p.j(), m) /
         std::pow(p.h(), m - 1);
}

struct CorrectionSet {
  double e1, e2, e3, e4;
  double total;  // -N h/2 + e1 + e2 + e3 + e4
};

inline CorrectionSet corrections(const ChainSpec& spec,
                                 const FieldParams& p) {
  CorrectionSet c{correction(1, spec, p), correction(2, spec, p),
                  correction(3, spec, p), correction(4, spec, p), 0.0};
  c.total = -0.5 * spec.sites() * p.h() + c.e1 + c.e2 + c.e3 + c.e4;
  return c;
}

// ---------------------------------------------------------------------
// Dimensionless series e_0/eps_0(z) = 1 + (f^2/4) z
//   + Sum_{m=2}^{4} z^m Sum_{k=0}^{m-1} (-1)^(m-k) c_k^(m) (g^2)^(k+1).

// T_m(G) = Sum_k (-1)^(m-k) c_k^(m) G^(k+1), generic over double or
// exact Rational arguments.
template <typename T>
T series_order_term(int m, const T& big_g) {
  T acc{};
  T g_pow = big_g;
  for (int k = 0; k < m; ++k) {
    const Rational c = series_coefficient(m, k);
    T term;
    if constexpr (std::is_same_v<T, Rational>) term = c * g_pow;
    else term = T(c.to_double()) * g_pow;
    if ((m - k) % 2 != 0) acc = acc - term;
    else acc = acc + term;
    g_pow = g_pow * big_g;
  }
  return acc;
}

// d T_m / d G, used by the observable series.
template <typename T>
T series_order_term_derivative(int m, const T& big_g) {
  T acc{};
  T g_pow = T(1);
  for (int k = 0; k < m; ++k) {
    const Rational c = series_coefficient(m, k);
    T term;
    if constexpr (std::is_same_v<T, Rational>)
      term = c * Rational(k + 1) * g_pow;
    else
      term = T(c.to_double() * (k + 1)) * g_pow;
    if ((m - k) % 2 != 0) acc = acc - term;
    else acc = acc + term;
    g_pow = g_pow * big_g;
  }
  return acc;
}

inline void check_direction(double f, double g) {
  if (std::abs(f * f + g * g - 1.0) > 1e-12)
    throw std::invalid_argument(
        "series: (f, g) must satisfy f^2 + g^2 = 1");
}

inline double series_e0_ratio(double z, double f, double g) {
  check_direction(f, g);
  if (z < 0.0)
    throw std::invalid_argument("series: z must be >= 0");
  const double big_g = g * g;
  double acc = 1.0 + 0.25 * f * f * z;
  double z_pow = z;
  for (int m = 2; m <= 4; ++m) {
    z_pow *= z;
    acc += z_pow * series_order_term(m, big_g);
  }
  return acc;
}

// z-polynomial coefficients of the ratio, exact: {1, F/4, T_2(G), T_3(G),
// T_4(G)} with F = f^2, G = g^2 as rationals.
inline std::array<Rational, 5> series_z_coefficients(const Rational& big_f,
                                                     const Rational& big_g) {
  return {Rational{1}, big_f * Rational{1, 4}, series_order_term(2, big_g),
          series_order_term(3, big_g), series_order_term(4, big_g)};
}

// Quartic truncation of Pfeuty's exact transverse-field ground energy,
// the reference the f = 0 series must collapse onto.
inline double pfeuty_reference(double z) {
  if (z < 0.0)
    throw std::invalid_argument("pfeuty_reference: z must be >= 0");
  const double z2 = z * z;
  return 1.0 + z2 / 64.0 + z2 * z2 / 16384.0;
}

inline std::array<Rational, 5> pfeuty_z_coefficients() {
  return {Rational{1}, Rational{0}, Rational{1, 64}, Rational{0},
          Rational{1, 16384}};
}

// ---------------------------------------------------------------------
// Symbolic re-expansion: rebuild the series table from the correction
// formulas. Substituting f^2 = 1 - G into the order-m correction and
// pulling out the -N h/2 * z^m prefactor must give exactly
// Sum_k (-1)^(m-k) c_k^(m) G^(k+1); this recovers every table entry from
// the independent correction-term table.
inline Polynomial<Rational> reexpanded_order_polynomial(int m) {
  using P = Polynomial<Rational>;
  // (1 - G)^p via repeated multiplication; tiny degrees throughout.
  const P one_minus_g({Rational{1}, Rational{-1}});
  P acc;  // zero
  for (const CorrectionTerm& t : correction_terms(m)) {
    P term = P::constant(t.coeff);
    for (int i = 0; i < t.f_pow; ++i) term = term * one_minus_g;
    term = term * P::monomial(Rational{1}, t.g_pow);
    acc = acc + term;
  }
  // e_m = (N J^m / h^(m-1)) acc(G) and e_m = -N h/2 z^m a_m with
  // z = 2J/h, so a_m = -acc(G) / 2^(m-1).
  long long scale = 1;
  for (int i = 1; i < m; ++i) scale *= 2;
  return acc * P::constant(Rational{-1, scale});
}

// Extract c_k^(m) from the re-expansion: a_m's G^(k+1) coefficient times
// (-1)^(m-k). Only meaningful for m >= 2 (the first-order term is F/4
// and has no G^(k+1) structure; compare reexpanded_order_polynomial(1)
// against (1 - G)/4 directly instead).
inline Rational reexpanded_series_coefficient(int m, int k) {
  if (m < 2 || m > 4 || k < 0 || k >= m)
    throw std::invalid_argument(
        "reexpanded_series_coefficient: need 2 <= m <= 4, 0 <= k < m");
  const Polynomial<Rational> a_m = reexpanded_order_polynomial(m);
  const Rational signed_c = a_m.coeff(static_cast<std::size_t>(k) + 1);
  return (m - k) % 2 != 0 ? -signed_c : signed_c;
}

}  // namespace spinchain
