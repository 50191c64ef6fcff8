#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinchain/chain.hpp"
#include "spinchain/fields.hpp"
#include "spinchain/hamiltonian.hpp"
#include "spinchain/single_spin.hpp"

namespace spinchain {

// Everything in this header is brute force on purpose: independent
// reference implementations the closed forms are validated against.

// H = -hx Sum S^x_i - hy Sum S^y_i - hz Sum S^z_i - J Sum S^z_i S^z_{i+1}
// in the product (spin-z) basis. Since every term acts on one site or on
// a bond, the matrix is filled directly from bit arithmetic instead of
// materializing Kronecker products: diagonal from the z-field and bond
// terms, one off-diagonal -a/2 (resp. conjugate) per single-site flip.
//
// The bond sum is the literal cyclic Sum_{i=1}^{N}, so at N = 2 the one
// physical bond enters twice; has_doubled_bond flags that case.
inline bool has_doubled_bond(const ChainSpec& spec) {
  return spec.sites() == 2;
}

inline Eigen::MatrixXcd build_lambda_matrix(const ChainSpec& spec,
                                            const FieldParams& p) {
  check_dense_cap(spec);
  const std::size_t dim = spec.dim();
  const int n = spec.sites();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  const complexd a = p.a();
  for (std::size_t r = 0; r < dim; ++r) {
    const SpinIndex ri = static_cast<SpinIndex>(r);
    // S^z eigenvalue at site i is +1/2 for bit 0 (spin up), -1/2 for 1.
    double diag = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double sz = site_bit(ri, i, spec) == 0 ? 0.5 : -0.5;
      const double sz_next =
          cyclic_bit(ri, i + 1, spec) == 0 ? 0.5 : -0.5;
      diag += -p.hz() * sz - p.j() * sz * sz_next;
    }
    H(r, r) = diag;
    // -hx S^x - hy S^y flips one site. With S^y = [[0, -i/2], [i/2, 0]]
    // the down<-up element is -conj(a)/2 and the up<-down one -a/2,
    // matching the single-site field_matrix_lambda corners.
    for (int i = 1; i <= n; ++i) {
      const std::size_t s = r ^ spec.site_mask(i);
      H(s, r) += site_bit(ri, i, spec) == 0 ? -0.5 * std::conj(a)
                                            : -0.5 * a;
    }
  }
  return H;
}

// N-fold Kronecker power of the single-site eigenvector matrix; together
// with build_lambda_matrix this is the from-first-principles route to the
// eps-basis matrix (P^{(N)dagger} H_lambda P^{(N)}).
inline Eigen::MatrixXcd kron_power(const Eigen::Matrix2cd& P, int n) {
  Eigen::MatrixXcd U = P;
  for (int i = 1; i < n; ++i) {
    Eigen::MatrixXcd next(U.rows() * 2, U.cols() * 2);
    for (Eigen::Index r = 0; r < U.rows(); ++r)
      for (Eigen::Index c = 0; c < U.cols(); ++c)
        next.block(2 * r, 2 * c, 2, 2) = U(r, c) * P;
    U = next;
  }
  return U;
}

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // ascending
  double ground_energy = 0.0;
  std::optional<Eigen::VectorXcd> ground_vector;
};

// Dense Hermitian eigensolve with an explicit Hermiticity gate. Works on
// both real-symmetric and complex-Hermitian expressions.
template <typename Derived>
Spectrum eigensolve(const Eigen::MatrixBase<Derived>& H,
                    bool want_vector = false) {
  if (H.rows() != H.cols())
    throw std::invalid_argument("eigensolve: matrix must be square");
  const double herm_dev = (H.derived() - H.derived().adjoint())
                              .cwiseAbs()
                              .maxCoeff();
  if (!(herm_dev <= 1e-10))
    throw std::invalid_argument(
        "eigensolve: input is not Hermitian (max deviation " +
        std::to_string(herm_dev) + ")");

  using Matrix = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  solver.compute(H.derived(), want_vector ? Eigen::ComputeEigenvectors
                                          : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolve: solver failed to converge");

  Spectrum out;
  out.eigenvalues = solver.eigenvalues();  // SelfAdjoint sorts ascending
  out.ground_energy = out.eigenvalues(0);
  if (want_vector)
    out.ground_vector =
        solver.eigenvectors().col(0).template cast<complexd>();
  return out;
}

// <Sum_i S^z_i S^z_{i+1}> of a product-basis state vector; each bond
// contributes +1/4 on aligned bits and -1/4 across a domain wall, so the
// expectation only needs wall counts. Used by the Hellmann-Feynman check.
inline double bond_zz_expectation(const Eigen::VectorXcd& v,
                                  const ChainSpec& spec) {
  const std::size_t dim = spec.dim();
  if (static_cast<std::size_t>(v.size()) != dim)
    throw std::invalid_argument("bond_zz_expectation: dimension mismatch");
  double acc = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    const int walls = domain_walls(static_cast<SpinIndex>(r), spec);
    acc += std::norm(v(r)) * 0.25 * (spec.sites() - 2 * walls);
  }
  return acc;
}

// ---------------------------------------------------------------------
// Numeric Rayleigh-Schrodinger corrections, straight from the standard
// sum-over-states formulas with V = H_I in the field eigenbasis and
// E_{0s} = E_0 - E_s = -m_s h. Ground-state sparsity is the only
// shortcut: V couples the ground state to just the N single flips and
// the N adjacent double flips, and each intermediate state to O(N)
// partners, so even the fourth-order triple sum stays tiny.

inline constexpr int kOracleSiteCap = 8;

struct NumericCorrections {
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;
  // third-order partial sums: s1 diagonal intermediate pairs, s2 twice
  // the distinct-pair sum, s3 the -V_00 counterterm; e3 = s1 + s2 + s3
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
};

inline NumericCorrections rs_corrections(const ChainSpec& spec,
                                         const FieldParams& p,
                                         int order = 4) {
  if (order < 1 || order > 4)
    throw std::invalid_argument(
        "rs_corrections: only orders 1..4 are supported");
  if (spec.sites() > kOracleSiteCap)
    throw ResourceError("rs_corrections capped at N = " +
                        std::to_string(kOracleSiteCap) +
                        " sites, requested N = " +
                        std::to_string(spec.sites()));

  const double h = p.h();
  const auto v = [&](SpinIndex r, SpinIndex s) {
    return hi_element(r, s, spec, p);
  };
  const auto gap = [&](SpinIndex s) {  // E_0 - E_s
    return -h * weight(s, spec);
  };

  const std::vector<SpinIndex> masks = coupling_masks(spec);
  // States reached from the ground state (r = 0) in one application of V.
  const std::vector<SpinIndex>& reach0 = masks;

  NumericCorrections out;
  out.e1 = v(0, 0);
  if (order < 2) return out;

  double inv1 = 0.0, inv2 = 0.0, inv3 = 0.0;  // Sum |V_0s|^2 / gap^{1,2,3}
  for (SpinIndex s : reach0) {
    const double w = v(0, s) * v(0, s);
    const double d = gap(s);
    inv1 += w / d;
    inv2 += w / (d * d);
    inv3 += w / (d * d * d);
  }
  out.e2 = inv1;
  if (order < 3) return out;

  for (std::size_t a = 0; a < reach0.size(); ++a) {
    const SpinIndex s = reach0[a];
    const double vs = v(0, s);
    if (vs == 0.0) continue;
    out.s1 += vs * v(s, s) * vs / (gap(s) * gap(s));
    for (std::size_t b = a + 1; b < reach0.size(); ++b) {
      const SpinIndex t = reach0[b];
      out.s2 += 2.0 * vs * v(s, t) * v(t, 0) / (gap(s) * gap(t));
    }
  }
  out.s3 = -out.e1 * inv2;
  out.e3 = out.s1 + out.s2 + out.s3;
  if (order < 4) return out;

  // e4 = Sum_{s,t,u != 0} V_0s V_st V_tu V_u0 / (gap_s gap_t gap_u)
  //      - V_00 Sum_{s,t} V_0s V_st V_t0 (1/(gap_s gap_t^2)
  //                                       + 1/(gap_s^2 gap_t))
  //      + V_00^2 Sum_s |V_0s|^2/gap_s^3 - e2 Sum_s |V_0s|^2/gap_s^2
  double quad = 0.0, mixed_a = 0.0, mixed_b = 0.0;
  for (SpinIndex s : reach0) {
    const double vs = v(0, s);
    if (vs == 0.0) continue;
    // t runs over s itself and everything V couples to s, excluding the
    // ground state from the intermediate sums.
    std::vector<SpinIndex> reach_s;
    reach_s.reserve(masks.size() + 1);
    reach_s.push_back(s);
    for (SpinIndex m : masks) {
      const SpinIndex t = s ^ m;
      if (t != 0) reach_s.push_back(t);
    }
    for (SpinIndex t : reach_s) {
      const double vst = v(s, t);
      if (vst == 0.0) continue;
      const double pre = vs * vst;
      const double vt0 = v(t, 0);
      if (vt0 != 0.0) {
        mixed_a += pre * vt0 / (gap(s) * gap(t) * gap(t));
        mixed_b += pre * vt0 / (gap(s) * gap(s) * gap(t));
      }
      for (SpinIndex u : reach0) {
        const double vtu = v(t, u);
        if (vtu == 0.0) continue;
        quad += pre * vtu * v(u, 0) / (gap(s) * gap(t) * gap(u));
      }
    }
  }
  out.e4 = quad - out.e1 * (mixed_a + mixed_b) + out.e1 * out.e1 * inv3 -
           out.e2 * inv2;
  return out;
}

}  // namespace spinchain
