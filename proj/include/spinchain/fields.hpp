#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace spinchain {

// Below this transverse fraction the field is treated as purely
// longitudinal: the product eigenbasis coincides with the spin-z basis and
// every formula that divides by g is routed through that limit instead.
inline constexpr double kTransverseTol = 1e-12;

// External fields, exchange coupling, and the derived scalars everything
// downstream is written in. Immutable once constructed; construction
// rejects non-finite or negative inputs and the all-zero field (h = 0
// makes the unperturbed ground state 2^N-fold degenerate, outside the
// non-degenerate perturbation setting).
class FieldParams {
 public:
  FieldParams(double hx, double hy, double hz, double j)
      : hx_(hx), hy_(hy), hz_(hz), j_(j) {
    check_component(hx, "hx");
    check_component(hy, "hy");
    check_component(hz, "hz");
    check_component(j, "j");
    h_ = std::hypot(hx, hy, hz);
    if (h_ <= 0.0)
      throw std::invalid_argument(
          "FieldParams: field magnitude h must be positive (hx=hy=hz=0 "
          "leaves a fully degenerate ground state)");
    f_ = hz_ / h_;
    transverse_ = std::hypot(hx_, hy_);
    g_ = transverse_ / h_;  // equals sqrt(h^2-hz^2)/h without cancellation
  }

  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double hz() const { return hz_; }
  double j() const { return j_; }

  double h() const { return h_; }
  double f() const { return f_; }
  double g() const { return g_; }
  double transverse() const { return transverse_; }

  // a = hx - i hy, the off-diagonal of the single-spin field matrix.
  std::complex<double> a() const { return {hx_, -hy_}; }

  // z = -J/eps_0 = 2J/h, the dimensionless expansion parameter.
  double z() const { return 2.0 * j_ / h_; }

  bool longitudinal_only() const { return g_ < kTransverseTol; }

 private:
  static void check_component(double v, const char* name) {
    if (!std::isfinite(v))
      throw std::invalid_argument(std::string("FieldParams: ") + name +
                                  " must be finite");
    if (v < 0.0)
      throw std::invalid_argument(std::string("FieldParams: ") + name +
                                  " must be >= 0");
  }

  double hx_, hy_, hz_, j_;
  double h_, f_, g_, transverse_;
};

}  // namespace spinchain
