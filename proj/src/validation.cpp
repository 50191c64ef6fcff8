#include "spinchain/validation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "spinchain/hamiltonian.hpp"
#include "spinchain/observables.hpp"
#include "spinchain/oracle.hpp"
#include "spinchain/perturbation.hpp"
#include "spinchain/rational.hpp"
#include "spinchain/structural.hpp"

namespace spinchain::validation {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// --- criterion 1: cross-basis spectral agreement ----------------------
//
// The closed-form matrix in the field eigenbasis and the brute-force
// product-basis build describe the same operator, so their sorted
// spectra must coincide. N starts at 3: at N = 2 the doubled bond breaks
// the closed form's adjacency selector and the spectra genuinely differ
// (pinned as such in the unit tests).
Criterion cross_basis_spectra(std::uint64_t seed) {
  const auto t0 = Clock::now();
  constexpr double kTol = 1e-10;
  double worst = 0.0;
  for (int n = 3; n <= 8; ++n) {
    const ChainSpec spec(n);
    detail::Uniform u(mix_seed(seed, 100 + n));
    for (int draw = 0; draw < 50; ++draw) {
      double hx, hy, hz, j;
      do {
        hx = u.in(0.0, 5.0);
        hy = u.in(0.0, 5.0);
        hz = u.in(0.0, 5.0);
        j = u.in(0.0, 5.0);
      } while (hx == 0.0 && hy == 0.0 && hz == 0.0);
      const FieldParams p(hx, hy, hz, j);
      const Spectrum eps = eigensolve(build_eps_matrix(spec, p));
      const Spectrum lam = eigensolve(build_lambda_matrix(spec, p));
      worst = std::max(
          worst,
          (eps.eigenvalues - lam.eigenvalues).cwiseAbs().maxCoeff());
    }
  }
  const bool in_budget = seconds_since(t0) < 60.0;
  Criterion c{1, worst <= kTol && in_budget,
              "cross-basis spectra agree",
              "N=3..8, 50 draws per N, max |dE| " + fmt3(worst) +
                  ", tol 1e-10"};
  if (!in_budget) c.detail += ", over 60 s budget";
  return c;
}

// --- criterion 2: free-spin spectrum ----------------------------------
Criterion free_spin_spectrum(std::uint64_t seed) {
  constexpr double kCluster = 1e-9;
  bool ok = true;
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const ChainSpec spec(n);
    detail::Uniform u(mix_seed(seed, 200 + n));
    const int draws = n <= 8 ? 2 : 1;
    for (int draw = 0; draw < draws; ++draw) {
      const FieldParams p(u.in(0.5, 5.0), u.in(0.5, 5.0), u.in(0.5, 5.0),
                          0.0);
      const Spectrum lam = eigensolve(build_lambda_matrix(spec, p));

      // Cluster the sorted eigenvalues, then match cluster means and
      // sizes against h*m - N*h/2 with multiplicity C(N, m).
      std::vector<std::pair<double, std::int64_t>> clusters;
      for (Eigen::Index i = 0; i < lam.eigenvalues.size(); ++i) {
        const double v = lam.eigenvalues(i);
        if (clusters.empty() ||
            v - lam.eigenvalues(i - 1) > kCluster)
          clusters.emplace_back(0.0, 0);
        clusters.back().first += v;
        clusters.back().second += 1;
      }
      if (clusters.size() != static_cast<std::size_t>(n) + 1) {
        ok = false;
        continue;
      }
      for (int m = 0; m <= n; ++m) {
        const double expected = p.h() * m - 0.5 * n * p.h();
        const double mean =
            clusters[m].first / static_cast<double>(clusters[m].second);
        worst = std::max(worst, std::abs(mean - expected));
        if (clusters[m].second != degeneracy(m, spec)) ok = false;
      }

      // The closed-form matrix must be *exactly* the free diagonal here.
      const Eigen::MatrixXd eps = build_eps_matrix(spec, p);
      for (std::size_t r = 0; r < spec.dim(); ++r) {
        for (std::size_t s = 0; s < spec.dim(); ++s) {
          const double expect =
              r == s ? hf_energy(static_cast<SpinIndex>(r), spec, p) : 0.0;
          if (eps(r, s) != expect) ok = false;
        }
      }
    }
  }
  ok = ok && worst <= kCluster;
  return {2, ok, "non-interacting spectrum has binomial degeneracies",
          "N=2..10, cluster width 1e-9, max level deviation " +
              fmt3(worst)};
}

// --- criterion 3: structural-matrix algebra ---------------------------
namespace structural_checks {

struct Tally {
  long long checks = 0;
  long long failures = 0;
  void expect(bool cond) {
    ++checks;
    if (!cond) ++failures;
  }
};

bool same(const IntMatrix& a, const IntMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.array() == b.array()).all();
}

void check_one_size(int n, Tally& t) {
  const ChainSpec spec(n);
  const std::size_t dim = spec.dim();
  const std::int64_t sdim = static_cast<std::int64_t>(dim);

  std::vector<IntMatrix> A, B, C, D;
  for (int i = 1; i <= n; ++i) {
    A.push_back(structural_matrix(StructuralKind::AlphaSite, i, spec));
    B.push_back(structural_matrix(StructuralKind::BetaSite, i, spec));
    C.push_back(structural_matrix(StructuralKind::CSite, i, spec));
    D.push_back(structural_matrix(StructuralKind::DSite, i, spec));
  }
  const IntMatrix ones = structural_matrix(StructuralKind::AllOnes, 0, spec);

  // 0/1 entries, symmetry, trace 2^N for every per-site kind.
  for (const auto* family : {&A, &B, &C, &D}) {
    for (const IntMatrix& M : *family) {
      t.expect(M.minCoeff() >= 0 && M.maxCoeff() <= 1);
      t.expect(same(M, M.transpose()));
      t.expect(M.trace() == sdim);
    }
  }

  // Pairwise products, exact. The beta-beta adjacency correction applies
  // cyclically in both orientations (alpha at the shared site).
  const std::int64_t p1 = sdim / 2, p2 = sdim / 4, p3 = sdim / 8;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const IntMatrix aa = A[i - 1] * A[j - 1];
      t.expect(same(aa, i == j ? (p1 * A[i - 1]).eval()
                               : (p2 * ones).eval()));

      const IntMatrix bb = B[i - 1] * B[j - 1];
      IntMatrix bb_expected;
      if (i == j) bb_expected = p2 * B[i - 1];
      else if (j == spec.wrap_site(i + 1)) bb_expected = p3 * A[j - 1];
      else if (i == spec.wrap_site(j + 1)) bb_expected = p3 * A[i - 1];
      else bb_expected = (sdim / 16) * ones;
      t.expect(same(bb, bb_expected));

      const IntMatrix ab = A[i - 1] * B[j - 1];
      const bool on_bond = i == j || i == spec.wrap_site(j + 1);
      t.expect(same(ab, on_bond ? (p2 * A[i - 1]).eval()
                                : (p3 * ones).eval()));
      // commutativity, claimed alongside the product displays
      t.expect(same(ab, B[j - 1] * A[i - 1]));
    }
  }

  // Summed-matrix identities.
  const IntMatrix alpha =
      structural_matrix(StructuralKind::AlphaSum, 0, spec);
  const IntMatrix beta = structural_matrix(StructuralKind::BetaSum, 0, spec);
  t.expect(same(alpha * alpha, p1 * alpha + p2 * n * (n - 1) * ones));
  {
    IntMatrix expected = p2 * (alpha + beta);
    if (n > 3) expected += (sdim / 16) * n * (n - 3) * ones;
    t.expect(same(beta * beta, expected));
  }
  t.expect(same(alpha * beta, p1 * alpha + p3 * n * (n - 2) * ones));

  // Power laws c_i^m = 2^(m-1) c_i, d_i^m = 4^(m-1) d_i for m = 2, 3.
  for (int i = 0; i < n; ++i) {
    const IntMatrix c2 = C[i] * C[i];
    t.expect(same(c2, std::int64_t{2} * C[i]));
    t.expect(same(c2 * C[i], std::int64_t{4} * C[i]));
    const IntMatrix d2 = D[i] * D[i];
    t.expect(same(d2, std::int64_t{4} * D[i]));
    t.expect(same(d2 * D[i], std::int64_t{16} * D[i]));
  }

  // Selector forms of the summed matrices against the literal sums.
  const IntMatrix csum = structural_matrix(StructuralKind::CSum, 0, spec);
  const IntMatrix dsum = structural_matrix(StructuralKind::DSum, 0, spec);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t s = 0; s < dim; ++s) {
      const SpinIndex x =
          static_cast<SpinIndex>(r) ^ static_cast<SpinIndex>(s);
      const int hamming = std::popcount(x);
      const int beta_rs =
          n - std::popcount(x | rotate_once(x, spec));
      t.expect(alpha(r, s) == n - hamming);
      t.expect(beta(r, s) == beta_rs);
      std::int64_t cexp = (r == s ? n : 0) + (hamming == 1 ? 1 : 0);
      std::int64_t dexp = (r == s ? n : 0);
      if (r != s && beta_rs == n - 2) dexp += 2;
      if (beta_rs == n - 3 && hamming == 2) dexp += 1;
      t.expect(csum(r, s) == cexp);
      t.expect(dsum(r, s) == dexp);
      // For N >= 4, beta == N-3 already forces an adjacent double flip,
      // so the case display needs no hamming qualifier there. (At N = 3
      // the all-flip pair is rotation-invariant and also has
      // beta == N-3; that is why the qualifier appears above.)
      if (n >= 4 && beta_rs == n - 3) t.expect(hamming == 2);
    }
  }

  // Eigenvalue multiplicities (numeric solve, rounded: the spectra are
  // integer). Trace + the idempotent-like power laws already force
  // these; the solve checks the claim end to end.
  if (n <= 6) {
    const auto multiplicities = [](const IntMatrix& M) {
      std::map<std::int64_t, int> mult;
      const Spectrum s = eigensolve(M.cast<double>());
      for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        ++mult[std::llround(s.eigenvalues(i))];
      return mult;
    };
    using MM = std::map<std::int64_t, int>;
    t.expect(multiplicities(A[0]) ==
             MM{{0, static_cast<int>(dim) - 2}, {p1, 2}});
    t.expect(multiplicities(B[0]) ==
             MM{{0, static_cast<int>(dim) - 4}, {p2, 4}});
    t.expect(multiplicities(C[0]) ==
             MM{{0, static_cast<int>(dim / 2)},
                {2, static_cast<int>(dim / 2)}});
    t.expect(multiplicities(D[0]) ==
             MM{{0, static_cast<int>(dim - dim / 4)},
                {4, static_cast<int>(dim / 4)}});
  }

  // delta_{r_i s_i} delta_{r_{i+1} s_{i+1}} d_i[r][s] = delta_rs,
  // exhaustive over sites and pairs.
  if (n <= 6) {
    for (int i = 1; i <= n; ++i) {
      const SpinIndex pair_mask =
          spec.site_mask(i) | spec.site_mask(spec.wrap_site(i + 1));
      bool all = true;
      for (std::size_t r = 0; r < dim && all; ++r) {
        for (std::size_t s = 0; s < dim; ++s) {
          const SpinIndex x =
              static_cast<SpinIndex>(r) ^ static_cast<SpinIndex>(s);
          const std::int64_t lhs =
              (x & pair_mask) == 0 ? D[i - 1](r, s) : 0;
          if (lhs != (r == s ? 1 : 0)) { all = false; break; }
        }
      }
      t.expect(all);
    }
  }
}

}  // namespace structural_checks

Criterion structural_algebra(std::uint64_t) {
  structural_checks::Tally t;
  for (int n = 3; n <= 8; ++n) structural_checks::check_one_size(n, t);
  return {3, t.failures == 0,
          "structural matrix algebra holds in exact integers",
          "N=3..8, all site pairs; " + std::to_string(t.checks) +
              " identities, " + std::to_string(t.failures) + " failures"};
}

// --- criterion 4: closed forms vs numeric perturbation ----------------
Criterion corrections_vs_oracle(std::uint64_t seed) {
  const auto t0 = Clock::now();
  constexpr double kTol = 1e-11;
  double worst = 0.0;
  for (int n = 5; n <= 8; ++n) {
    const ChainSpec spec(n);
    detail::Uniform u(mix_seed(seed, 400 + n));
    for (int draw = 0; draw < 20; ++draw) {
      const FieldParams p(u.in(0.2, 5.0), u.in(0.2, 5.0), u.in(0.2, 5.0),
                          u.in(0.1, 5.0));
      const NumericCorrections numeric = rs_corrections(spec, p);
      const std::array<double, 4> oracle{numeric.e1, numeric.e2,
                                         numeric.e3, numeric.e4};
      for (int m = 1; m <= 4; ++m) {
        const double a = correction(m, spec, p);
        const double b = oracle[m - 1];
        const double mag = std::max(std::abs(a), std::abs(b));
        // When an order sits at a cancellation zero (e3 vanishes on the
        // f^2 = 7/23 cone), "relative" is meaningless; treat values
        // negligible against the order's natural scale as agreeing.
        const double scale =
            n * std::pow(p.j(), m) / std::pow(p.h(), m - 1);
        if (mag < 1e-6 * scale) continue;
        worst = std::max(worst, std::abs(a - b) / mag);
      }
    }
  }
  const bool in_budget = seconds_since(t0) < 300.0;
  Criterion c{4, worst <= kTol && in_budget,
              "closed-form corrections match the numeric sums",
              "N=5..8, 20 draws per N, orders 1-4, max rel dev " +
                  fmt3(worst) + ", tol 1e-11"};
  if (!in_budget) c.detail += ", over 300 s budget";
  return c;
}

// --- criterion 5: truncation order ------------------------------------
Criterion truncation_order(std::uint64_t) {
  const ChainSpec spec(8);
  const std::array<double, 3> js{0.04, 0.02, 0.01};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double j : js) {
    const FieldParams p(1.0, 0.0, 1.0, j);
    const double exact =
        eigensolve(build_eps_matrix(spec, p)).ground_energy;
    const double series = corrections(spec, p).total;
    const double x = std::log(j);
    const double y = std::log(std::abs(exact - series) / spec.sites());
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double nn = static_cast<double>(js.size());
  const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  return {5, slope >= 4.7 && slope <= 5.3,
          "series residual scales as the fifth power of the coupling",
          "N=8, J in {0.04, 0.02, 0.01}, log-log slope " + fmt3(slope) +
              ", window [4.7, 5.3]"};
}

// --- criterion 6: transverse-limit reference --------------------------
Criterion transverse_reference(std::uint64_t) {
  // Exact: the series z-coefficients at f = 0 must equal the quartic
  // truncation of the known transverse-field result, as rationals.
  const auto series = series_z_coefficients(Rational{0}, Rational{1});
  const auto reference = pfeuty_z_coefficients();
  bool exact_ok = true;
  for (std::size_t i = 0; i < series.size(); ++i)
    if (series[i] != reference[i]) exact_ok = false;

  // Numeric: a purely transverse N = 12 chain at z = 0.2.
  const ChainSpec spec(12);
  const FieldParams p(1.0, 0.0, 0.0, 0.1);
  const double e0 = parity_split_ground_energy(spec, p);
  const double ratio = e0 / (spec.sites() * (-0.5 * p.h()));
  const double dev = std::abs(ratio - pfeuty_reference(p.z()));
  return {6, exact_ok && dev <= 5e-3,
          "transverse limit reproduces the reference series",
          std::string("rational coefficients ") +
              (exact_ok ? "identical" : "DIFFER") +
              "; N=12 ratio off by " + fmt3(dev) + ", tol 5e-3"};
}

// --- criterion 7: coefficient table by re-expansion -------------------
Criterion coefficient_reexpansion(std::uint64_t) {
  bool ok = true;
  // First order: the z-coefficient is (1 - G)/4 with no G-power table.
  const Polynomial<Rational> first({Rational{1, 4}, Rational{-1, 4}});
  ok = ok && reexpanded_order_polynomial(1) == first;
  for (int m = 2; m <= 4; ++m) {
    for (int k = 0; k < m; ++k)
      ok = ok &&
           reexpanded_series_coefficient(m, k) == series_coefficient(m, k);
    // k = 0 closed rule: (-1)^(m-0) c_0^(m) = (-1)^m / 2^(m+1).
    const Rational signed_c0 = m % 2 == 0 ? series_coefficient(m, 0)
                                          : -series_coefficient(m, 0);
    ok = ok && signed_c0 == Rational{m % 2 == 0 ? 1 : -1,
                                     1LL << (m + 1)};
  }
  return {7, ok, "series table recovered by exact re-expansion",
          std::string("orders 1-4, all entries ") +
              (ok ? "identical as rationals" : "DIFFER")};
}

// --- criterion 8: observables vs finite differences -------------------
Criterion observables_vs_derivatives(std::uint64_t) {
  const ChainSpec spec(8);
  const double hx = 1.0, hy = 0.5, hz = 0.4;
  const double h = std::hypot(hx, hy, hz);
  const double j = 0.05 * h;
  const double delta = 1e-4 * h;
  const double n = spec.sites();

  const auto ground = [&](double ax, double ay, double az, double aj) {
    return eigensolve(build_eps_matrix(spec, FieldParams(ax, ay, az, aj)))
        .ground_energy;
  };
  const auto central = [&](double plus, double minus) {
    return (plus - minus) / (2.0 * delta);
  };

  const double fd_mx =
      -2.0 / n * central(ground(hx + delta, hy, hz, j),
                         ground(hx - delta, hy, hz, j));
  const double fd_my =
      -2.0 / n * central(ground(hx, hy + delta, hz, j),
                         ground(hx, hy - delta, hz, j));
  const double fd_mz =
      -2.0 / n * central(ground(hx, hy, hz + delta, j),
                         ground(hx, hy, hz - delta, j));
  const double fd_corr =
      -4.0 / n * central(ground(hx, hy, hz, j + delta),
                         ground(hx, hy, hz, j - delta));

  const ObservableSet obs = observables(spec, FieldParams(hx, hy, hz, j));
  const double worst = std::max(
      {std::abs(obs.mx - fd_mx), std::abs(obs.my - fd_my),
       std::abs(obs.mz - fd_mz), std::abs(obs.corr - fd_corr)});

  const ObservableSet free =
      observables(spec, FieldParams(hx, hy, hz, 0.0));
  const double sphere =
      std::abs(free.mx * free.mx + free.my * free.my +
               free.mz * free.mz - 1.0);

  return {8, worst <= 2e-4 && sphere <= 1e-12,
          "observables match exact-energy derivatives",
          "N=8, z=0.1, max |series - FD| " + fmt3(worst) +
              " (tol 2e-4); unit-sphere residual at z=0 " + fmt3(sphere)};
}

}  // namespace

double parity_split_ground_energy(const ChainSpec& spec,
                                  const FieldParams& params) {
  if (params.hz() != 0.0)
    throw std::invalid_argument(
        "parity_split_ground_energy: requires a purely transverse field "
        "(the interaction must preserve weight parity)");
  check_dense_cap(spec);
  std::array<std::vector<SpinIndex>, 2> sector;
  for (std::size_t r = 0; r < spec.dim(); ++r)
    sector[std::popcount(r) & 1].push_back(static_cast<SpinIndex>(r));

  double best = std::numeric_limits<double>::infinity();
  for (const std::vector<SpinIndex>& idx : sector) {
    const std::size_t m = idx.size();
    Eigen::MatrixXd H(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a; b < m; ++b) {
        const double v = h_element(idx[a], idx[b], spec, params);
        H(a, b) = v;
        H(b, a) = v;
      }
    }
    best = std::min(best, eigensolve(H).ground_energy);
  }
  return best;
}

std::vector<Criterion> run_criteria(std::uint64_t seed) {
  return {cross_basis_spectra(seed),    free_spin_spectrum(seed),
          structural_algebra(seed),     corrections_vs_oracle(seed),
          truncation_order(seed),       transverse_reference(seed),
          coefficient_reexpansion(seed), observables_vs_derivatives(seed)};
}

std::string render(const std::vector<Criterion>& criteria) {
  std::ostringstream os;
  for (const Criterion& c : criteria)
    os << "criterion " << c.id << ' ' << (c.pass ? "PASS" : "FAIL")
       << "  " << c.name << " (" << c.detail << ")\n";
  return os.str();
}

Report run_acceptance(std::uint64_t seed) {
  const std::vector<Criterion> first = run_criteria(seed);
  const std::vector<Criterion> second = run_criteria(seed);
  const std::string text_first = render(first);
  const std::string text_second = render(second);

  Criterion determinism{9, text_first == text_second,
                        "repeated runs render byte-identical reports",
                        "criteria 1-8 executed twice from seed " +
                            std::to_string(seed)};

  int passed = determinism.pass ? 1 : 0;
  for (const Criterion& c : first) passed += c.pass ? 1 : 0;

  std::ostringstream os;
  os << "validation suite seed " << seed << '\n'
     << text_first << render({determinism}) << "result: " << passed
     << "/9 criteria passed\n";
  return {os.str(), passed == 9};
}

}  // namespace spinchain::validation
