#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "spinchain/hamiltonian.hpp"
#include "spinchain/oracle.hpp"
#include "spinchain/perturbation.hpp"
#include "spinchain/validation.hpp"

using namespace spinchain;

TEST_CASE("product-basis build: longitudinal diagonal by hand") {
  // N = 2, hz = 1, J = 1: diag(-3/2, 1/2, 1/2, 1/2) with the single bond
  // counted twice (documented N = 2 behaviour).
  const ChainSpec spec(2);
  const FieldParams p(0.0, 0.0, 1.0, 1.0);
  const Eigen::MatrixXcd H = build_lambda_matrix(spec, p);
  CHECK(H(0, 0).real() == doctest::Approx(-1.5));
  CHECK(H(1, 1).real() == doctest::Approx(0.5));
  CHECK(H(2, 2).real() == doctest::Approx(0.5));
  CHECK(H(3, 3).real() == doctest::Approx(0.5));
  CHECK(H.cwiseAbs().sum() == doctest::Approx(3.0));  // diagonal only
}

TEST_CASE("product-basis build: transverse off-diagonals") {
  const ChainSpec spec(3);
  const FieldParams p(2.0, 1.0, 0.5, 0.0);
  const Eigen::MatrixXcd H = build_lambda_matrix(spec, p);
  CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  // flipping site 3 of state 000 (spin up -> down): element -conj(a)/2
  CHECK(H(1, 0) == complexd{-1.0, -0.5});  // -conj(a)/2 with a = 2 - i
  CHECK(H(0, 1) == complexd{-1.0, 0.5});   // -a/2, the adjoint corner
  // no double flips in the field-only Hamiltonian
  CHECK(H(3, 0) == complexd{0.0, 0.0});
  CHECK(H(7, 0) == complexd{0.0, 0.0});
}

TEST_CASE("eigensolver contract") {
  const ChainSpec spec(4);
  const FieldParams p(1.0, 0.7, 0.3, 0.6);
  const Eigen::MatrixXcd H = build_lambda_matrix(spec, p);
  const Spectrum s = eigensolve(H, true);

  CHECK(std::is_sorted(s.eigenvalues.data(),
                       s.eigenvalues.data() + s.eigenvalues.size()));
  CHECK(s.ground_energy == s.eigenvalues(0));
  // trace invariant
  CHECK(std::abs(s.eigenvalues.sum() - H.trace().real()) <
        1e-9 * spec.dim());
  // residual of the returned ground vector
  REQUIRE(s.ground_vector.has_value());
  const Eigen::VectorXcd& v = *s.ground_vector;
  CHECK((H * v - s.ground_energy * v).norm() < 1e-9);
  CHECK(v.norm() == doctest::Approx(1.0));

  SUBCASE("non-Hermitian input is rejected") {
    Eigen::MatrixXcd bad = H;
    bad(0, 1) += complexd{0.0, 1e-3};
    CHECK_THROWS_AS(eigensolve(bad), std::invalid_argument);
  }
  SUBCASE("non-square input is rejected") {
    CHECK_THROWS_AS(eigensolve(Eigen::MatrixXd::Zero(4, 5)),
                    std::invalid_argument);
  }
}

TEST_CASE("eps and lambda spectra coincide for N >= 3") {
  std::mt19937_64 gen(1234);
  auto u = [&](double lo, double hi) {
    return lo + (hi - lo) * ((gen() >> 11) * 0x1.0p-53);
  };
  for (int n : {3, 4, 5, 6}) {
    const ChainSpec spec(n);
    const FieldParams p(u(0.1, 3), u(0.1, 3), u(0.1, 3), u(0.1, 2));
    const Spectrum a = eigensolve(build_eps_matrix(spec, p));
    const Spectrum b = eigensolve(build_lambda_matrix(spec, p));
    CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() <
          1e-10 * (p.h() + p.j()));
  }
}

TEST_CASE("free spectrum is the closed-form ladder") {
  const ChainSpec spec(5);
  const FieldParams p(1.1, 0.0, 2.3, 0.0);
  const Spectrum s = eigensolve(build_lambda_matrix(spec, p));
  std::vector<double> expected;
  for (SpinIndex r = 0; r < spec.dim(); ++r)
    expected.push_back(hf_energy(r, spec, p));
  std::sort(expected.begin(), expected.end());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    CHECK(s.eigenvalues(i) == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("Hellmann-Feynman: dE0/dJ equals minus the bond correlation sum") {
  const ChainSpec spec(5);
  const double hx = 1.0, hy = 0.4, hz = 0.8, j = 0.35;
  const auto e0 = [&](double jj) {
    return eigensolve(build_lambda_matrix(spec, FieldParams(hx, hy, hz, jj)))
        .ground_energy;
  };
  const FieldParams p(hx, hy, hz, j);
  const Spectrum s = eigensolve(build_lambda_matrix(spec, p), true);
  const double lhs = -bond_zz_expectation(*s.ground_vector, spec);
  const double delta = 1e-5 * p.h();
  const double fd = (e0(j + delta) - e0(j - delta)) / (2.0 * delta);
  CHECK(std::abs(lhs - fd) < 1e-6 * spec.sites());
}

TEST_CASE("kron_power dimensions and unitarity") {
  const FieldParams p(1.0, 2.0, 0.5, 0.0);
  const Eigen::MatrixXcd U = kron_power(solve_single(p).P, 4);
  CHECK(U.rows() == 16);
  CHECK((U.adjoint() * U - Eigen::MatrixXcd::Identity(16, 16))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("numeric corrections: structure and independence checks") {
  const ChainSpec spec(6);
  const FieldParams p(1.2, 0.8, 1.5, 0.9);
  const NumericCorrections c = rs_corrections(spec, p);

  SUBCASE("first order is the ground diagonal element") {
    CHECK(c.e1 == hi_element(0, 0, spec, p));
  }
  SUBCASE("third order equals an independently summed double sum") {
    // e3 = Sum_{s,t} V_0s V_st V_t0/(gap_s gap_t) - V_00 Sum |V_0s|^2/gap_s^2
    const auto v = [&](SpinIndex a, SpinIndex b) {
      return hi_element(a, b, spec, p);
    };
    const auto gap = [&](SpinIndex s) {
      return -p.h() * weight(s, spec);
    };
    const std::vector<SpinIndex> reach = coupling_masks(spec);
    double dbl = 0.0, inv2 = 0.0;
    for (SpinIndex s : reach) {
      inv2 += v(0, s) * v(0, s) / (gap(s) * gap(s));
      for (SpinIndex t : reach)
        dbl += v(0, s) * v(s, t) * v(t, 0) / (gap(s) * gap(t));
    }
    const double direct = dbl - v(0, 0) * inv2;
    CHECK(c.e3 == doctest::Approx(direct).epsilon(1e-13));
    CHECK(c.e3 == doctest::Approx(c.s1 + c.s2 + c.s3).epsilon(1e-15));
  }
  SUBCASE("order scaling in J") {
    const NumericCorrections d =
        rs_corrections(spec, FieldParams(1.2, 0.8, 1.5, 1.8));
    CHECK(d.e1 == doctest::Approx(2.0 * c.e1).epsilon(1e-13));
    CHECK(d.e2 == doctest::Approx(4.0 * c.e2).epsilon(1e-13));
    CHECK(d.e3 == doctest::Approx(8.0 * c.e3).epsilon(1e-13));
    CHECK(d.e4 == doctest::Approx(16.0 * c.e4).epsilon(1e-12));
  }
  SUBCASE("closed forms agree at N = 5 and 6") {
    for (int n : {5, 6}) {
      const ChainSpec sp(n);
      const NumericCorrections numeric = rs_corrections(sp, p);
      CHECK(correction(1, sp, p) ==
            doctest::Approx(numeric.e1).epsilon(1e-12));
      CHECK(correction(2, sp, p) ==
            doctest::Approx(numeric.e2).epsilon(1e-12));
      CHECK(correction(3, sp, p) ==
            doctest::Approx(numeric.e3).epsilon(1e-11));
      CHECK(correction(4, sp, p) ==
            doctest::Approx(numeric.e4).epsilon(1e-11));
    }
  }
  SUBCASE("truncated order stops the computation") {
    const NumericCorrections two = rs_corrections(spec, p, 2);
    CHECK(two.e1 == c.e1);
    CHECK(two.e2 == c.e2);
    CHECK(two.e3 == 0.0);
    CHECK(two.e4 == 0.0);
  }
  SUBCASE("caps and argument validation") {
    CHECK_THROWS_AS(rs_corrections(ChainSpec(9), p), ResourceError);
    CHECK_THROWS_AS(rs_corrections(spec, p, 5), std::invalid_argument);
    CHECK_THROWS_AS(rs_corrections(spec, p, 0), std::invalid_argument);
  }
}

TEST_CASE("parity-split ground energy matches the full solve") {
  const ChainSpec spec(8);
  const FieldParams p(1.0, 0.3, 0.0, 0.7);
  const double split = validation::parity_split_ground_energy(spec, p);
  const double full = eigensolve(build_eps_matrix(spec, p)).ground_energy;
  CHECK(split == doctest::Approx(full).epsilon(1e-12));
  CHECK_THROWS_AS(validation::parity_split_ground_energy(
                      spec, FieldParams(1.0, 0.0, 0.5, 0.7)),
                  std::invalid_argument);
}
