#pragma once

#include <Eigen/Dense>
#include <complex>

#include "spinchain/fields.hpp"

namespace spinchain {

enum class Axis { X, Y, Z };

using complexd = std::complex<double>;

// Spin-1/2 matrix elements in the product (spin-z) basis, in units of
// hbar: S^z = diag(1/2, -1/2), S^x off-diagonal 1/2, S^y = [[0, -i/2],
// [i/2, 0]]. Index 0 is the spin-up state.
inline complexd spin_element_lambda(Axis axis, int j, int k) {
  switch (axis) {
    case Axis::X:
      return j == k ? complexd{0.0, 0.0} : complexd{0.5, 0.0};
    case Axis::Y:
      if (j == k) return {0.0, 0.0};
      return j == 0 ? complexd{0.0, -0.5} : complexd{0.0, 0.5};
    case Axis::Z:
    default:
      return j == k ? complexd{j == 0 ? 0.5 : -0.5, 0.0} : complexd{0.0, 0.0};
  }
}

inline Eigen::Matrix2cd spin_matrix_lambda(Axis axis) {
  Eigen::Matrix2cd m;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) m(j, k) = spin_element_lambda(axis, j, k);
  return m;
}

// Single-site field Hamiltonian -hx S^x - hy S^y - hz S^z as an explicit
// 2x2: -(1/2) [[hz, a], [a*, -hz]] with a = hx - i hy.
inline Eigen::Matrix2cd field_matrix_lambda(const FieldParams& p) {
  Eigen::Matrix2cd m;
  m(0, 0) = -0.5 * p.hz();
  m(0, 1) = -0.5 * p.a();
  m(1, 0) = -0.5 * std::conj(p.a());
  m(1, 1) = 0.5 * p.hz();
  return m;
}

// Closed-form eigensystem of the single-site field Hamiltonian.
//
// eps_j = -(h/2) cos(j pi); column j of P is the eigenvector
// (a c_j, b_j c_j) with b_j = h cos(j pi) - hz and normalization
// c_j = 1/sqrt(2h (h - hz cos(j pi))) > 0. Both c_j are taken positive:
// that phase choice is what makes the N-site tensor transform of the
// product Hamiltonian land exactly on the closed-form matrix elements
// (an alternating phase would flip the sign of every fg off-diagonal).
// b_0 = h - hz is evaluated as (hx^2+hy^2)/(h+hz) to avoid cancellation
// when the field is nearly longitudinal.
struct SingleSpinEigen {
  double eps[2];
  double b[2];
  double c[2];
  Eigen::Matrix2cd P;
  Eigen::Matrix2d D;
};

inline SingleSpinEigen solve_single(const FieldParams& p) {
  SingleSpinEigen e;
  const double h = p.h();
  e.eps[0] = -0.5 * h;
  e.eps[1] = 0.5 * h;
  e.D = Eigen::Matrix2d::Zero();
  e.D(0, 0) = e.eps[0];
  e.D(1, 1) = e.eps[1];

  if (p.longitudinal_only()) {
    // hz = h: the product basis is already the eigenbasis. The closed
    // form degenerates (c_0 would be 0/0); define P = I here.
    e.b[0] = 0.0;
    e.b[1] = -2.0 * h;
    e.c[0] = 0.0;
    e.c[1] = 0.0;
    e.P = Eigen::Matrix2cd::Identity();
    return e;
  }

  const double t2 = p.transverse() * p.transverse();
  e.b[0] = t2 / (h + p.hz());  // = h - hz, stably
  e.b[1] = -(h + p.hz());
  e.c[0] = 1.0 / std::sqrt(2.0 * h * e.b[0]);
  e.c[1] = 1.0 / std::sqrt(2.0 * h * (h + p.hz()));
  const complexd a = p.a();
  for (int j = 0; j < 2; ++j) {
    e.P(0, j) = a * e.c[j];
    e.P(1, j) = e.b[j] * e.c[j];
  }
  return e;
}

// <eps_j| S^axis |eps_k>, the 2x2 spin matrix elements in the field
// eigenbasis. Closed forms obtained by conjugating the product-basis
// matrices with P (they satisfy M_eps = P^dagger M_lambda P identically):
//
//   S^z: diag (f/2) cos(j pi); off-diagonal g/2.
//   S^x: diag (hx/2h) cos(j pi); (0,1) = -(hz hx + i h hy) / (2 g h^2).
//   S^y: diag (hy/2h) cos(j pi); (0,1) = (-hz hy + i h hx) / (2 g h^2).
//
// In the longitudinal limit g -> 0 the x/y off-diagonals divide by g;
// there the eigenbasis is the product basis and the product-basis
// elements are returned instead.
inline complexd spin_element_eps(Axis axis, int j, int k,
                                 const FieldParams& p) {
  if (p.longitudinal_only()) return spin_element_lambda(axis, j, k);
  const double h = p.h();
  const double cosj = j == 0 ? 1.0 : -1.0;
  if (j == k) {
    switch (axis) {
      case Axis::X: return {cosj * p.hx() / (2.0 * h), 0.0};
      case Axis::Y: return {cosj * p.hy() / (2.0 * h), 0.0};
      case Axis::Z: default: return {cosj * p.f() / 2.0, 0.0};
    }
  }
  const double denom = 2.0 * p.g() * h * h;
  complexd v;
  switch (axis) {
    case Axis::X: v = {-p.hz() * p.hx() / denom, -h * p.hy() / denom}; break;
    case Axis::Y: v = {-p.hz() * p.hy() / denom, h * p.hx() / denom}; break;
    case Axis::Z: default: v = {p.g() / 2.0, 0.0}; break;
  }
  return j == 0 ? v : std::conj(v);
}

inline Eigen::Matrix2cd spin_matrix_eps(Axis axis, const FieldParams& p) {
  Eigen::Matrix2cd m;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) m(j, k) = spin_element_eps(axis, j, k, p);
  return m;
}

}  // namespace spinchain
