#include <cmath>
#include <complex>

#include "doctest.h"
#include "spinchain/hamiltonian.hpp"
#include "spinchain/observables.hpp"
#include "spinchain/oracle.hpp"
#include "spinchain/polynomial.hpp"

using namespace spinchain;

namespace {

// complex-step derivative of the per-spin series energy: exact to machine
// precision, no subtractive cancellation
double series_derivative(double hx, double hy, double hz, double j,
                         int component) {
  using C = std::complex<double>;
  const double delta = 1e-20;
  C a(hx), b(hy), c(hz), d(j);
  switch (component) {
    case 0: a.imag(delta); break;
    case 1: b.imag(delta); break;
    case 2: c.imag(delta); break;
    default: d.imag(delta); break;
  }
  return energy_per_spin_series(a, b, c, d).imag() / delta;
}

}  // namespace

TEST_CASE("scalar and generic series evaluations agree") {
  const FieldParams p(1.1, 0.7, 0.9, 0.13);
  const double generic =
      energy_ratio_series(p.hx(), p.hy(), p.hz(), p.j());
  CHECK(generic ==
        doctest::Approx(series_e0_ratio(p.z(), p.f(), p.g()))
            .epsilon(1e-13));
  CHECK(energy_per_spin_series(p.hx(), p.hy(), p.hz(), p.j()) ==
        doctest::Approx(-0.5 * p.h() * generic).epsilon(1e-14));
}

TEST_CASE("magnetizations are total derivatives of the series energy") {
  // m_alpha = -2 d(e_0)/d(h_alpha) with everything (h, f, g, z) moving
  const ChainSpec spec(8);
  const FieldParams p(1.1, 0.7, 0.9, 0.13);
  CHECK(magnetization(Axis::X, spec, p) ==
        doctest::Approx(-2.0 * series_derivative(p.hx(), p.hy(), p.hz(),
                                                 p.j(), 0))
            .epsilon(1e-12));
  CHECK(magnetization(Axis::Y, spec, p) ==
        doctest::Approx(-2.0 * series_derivative(p.hx(), p.hy(), p.hz(),
                                                 p.j(), 1))
            .epsilon(1e-12));
  CHECK(magnetization(Axis::Z, spec, p) ==
        doctest::Approx(-2.0 * series_derivative(p.hx(), p.hy(), p.hz(),
                                                 p.j(), 2))
            .epsilon(1e-12));
}

TEST_CASE("correlation is the coupling derivative of the series energy") {
  // c = -(8/h) d(e_0)/dz = -4 d(e_0)/dJ at fixed fields
  const ChainSpec spec(8);
  const FieldParams p(0.8, 0.3, 1.2, 0.21);
  CHECK(correlation(spec, p) ==
        doctest::Approx(-4.0 * series_derivative(p.hx(), p.hy(), p.hz(),
                                                 p.j(), 3))
            .epsilon(1e-12));

  // equivalently 4 R'(z) with R the dimensionless z-polynomial
  const double big_f = p.f() * p.f();
  const double big_g = p.g() * p.g();
  const Polynomial<double> ratio({1.0, 0.25 * big_f,
                                  series_order_term(2, big_g),
                                  series_order_term(3, big_g),
                                  series_order_term(4, big_g)});
  CHECK(correlation(spec, p) ==
        doctest::Approx(4.0 * ratio.derivative().eval(p.z()))
            .epsilon(1e-14));
}

TEST_CASE("decoupled spins align with the field") {
  const ChainSpec spec(6);
  const FieldParams p(0.3, 1.4, 0.8, 0.0);
  const ObservableSet o = observables(spec, p);
  CHECK(o.mx == doctest::Approx(p.hx() / p.h()).epsilon(1e-15));
  CHECK(o.my == doctest::Approx(p.hy() / p.h()).epsilon(1e-15));
  CHECK(o.mz == doctest::Approx(p.hz() / p.h()).epsilon(1e-15));
  CHECK(o.mx * o.mx + o.my * o.my + o.mz * o.mz ==
        doctest::Approx(1.0).epsilon(1e-15));
  // neighbours factorize: c = <S^z><S^z> * 4 = f^2
  CHECK(o.corr == doctest::Approx(p.f() * p.f()).epsilon(1e-15));
}

TEST_CASE("longitudinal-only field saturates the z readings") {
  const ChainSpec spec(6);
  const FieldParams p(0.0, 0.0, 1.7, 0.4);
  const ObservableSet o = observables(spec, p);
  CHECK(o.mx == 0.0);
  CHECK(o.my == 0.0);
  CHECK(o.mz == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(o.corr == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("observable set matches the per-axis calls") {
  const ChainSpec spec(8);
  const FieldParams p(1.0, 0.5, 0.4, 0.07);
  const ObservableSet o = observables(spec, p);
  CHECK(o.mx == magnetization(Axis::X, spec, p));
  CHECK(o.my == magnetization(Axis::Y, spec, p));
  CHECK(o.mz == magnetization(Axis::Z, spec, p));
  CHECK(o.corr == correlation(spec, p));
}

TEST_CASE("series observables track exact diagonalization") {
  // weak coupling, N = 6: central differences of the exact ground energy
  const ChainSpec spec(6);
  const double hx = 1.0, hy = 0.5, hz = 0.4;
  const double h = std::sqrt(hx * hx + hy * hy + hz * hz);
  const double j = 0.05 * h;
  const double delta = 1e-5 * h;

  const auto ground = [&](double ax, double ay, double az, double aj) {
    return eigensolve(build_eps_matrix(spec, FieldParams(ax, ay, az, aj)))
        .ground_energy;
  };
  const double inv_2d = 1.0 / (2.0 * delta);
  const double n = spec.sites();
  const double fd_mx =
      -2.0 / n * (ground(hx + delta, hy, hz, j) -
                  ground(hx - delta, hy, hz, j)) * inv_2d;
  const double fd_my =
      -2.0 / n * (ground(hx, hy + delta, hz, j) -
                  ground(hx, hy - delta, hz, j)) * inv_2d;
  const double fd_mz =
      -2.0 / n * (ground(hx, hy, hz + delta, j) -
                  ground(hx, hy, hz - delta, j)) * inv_2d;
  const double fd_corr =
      -4.0 / n * (ground(hx, hy, hz, j + delta) -
                  ground(hx, hy, hz, j - delta)) * inv_2d;

  const FieldParams p(hx, hy, hz, j);
  const ObservableSet o = observables(spec, p);
  CHECK(std::abs(o.mx - fd_mx) < 1e-6);
  CHECK(std::abs(o.my - fd_my) < 1e-6);
  CHECK(std::abs(o.mz - fd_mz) < 1e-6);
  CHECK(std::abs(o.corr - fd_corr) < 1e-6);
}
