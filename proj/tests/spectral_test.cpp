#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "hodgelab/catalog.hpp"
#include "hodgelab/cohomology.hpp"
#include "hodgelab/error.hpp"
#include "hodgelab/spectral.hpp"
#include "support.hpp"

using namespace hodgelab;

namespace {

double norm_of(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd rand_cmat(testsup::Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = std::complex<double>(rng.unit() - 0.5, rng.unit() - 0.5);
  return m;
}

// Hermitian PSD with kernel dimension at least dim - rank.
Eigen::MatrixXcd rand_psd(testsup::Rng& rng, int dim, int rank) {
  Eigen::MatrixXcd b = rand_cmat(rng, rank, dim);
  return b.adjoint() * b;
}

double top_singular(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace

TEST_CASE("eigenvalues snap to zero below the relative cut") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 0.0;
  m(1, 1) = 1e-15;
  m(2, 2) = 1.0;
  m(3, 3) = 2.0;
  SpectralData s(m, 0.5, 1);
  CHECK(s.scale() == 2.0);
  CHECK(s.rank_at(0.0) == 2);
  CHECK(s.rank_at(0.5) == 2);
  CHECK(s.rank_at(1.0) == 3);
  CHECK(s.rank_at(5.0) == 4);
  CHECK(s.snapped(0) == 0.0);
  CHECK(s.snapped(1) == 0.0);

  Eigen::MatrixXcd kernel = s.basis_at(0.0);
  CHECK(kernel.cols() == 2);
  CHECK(norm_of(m * kernel) < 1e-12);
  CHECK(norm_of(kernel.adjoint() * kernel -
                Eigen::MatrixXcd::Identity(2, 2)) < 1e-12);
}

TEST_CASE("lambda near an eigenvalue is refused") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  SpectralData s(m, 0.0, 0);
  try {
    s.rank_at(1.0 + 1e-11);
    FAIL("expected LambdaNearEigenvalue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LambdaNearEigenvalue);
  }
  CHECK(s.rank_at(1.0) == 2);
}

TEST_CASE("spectral data audits its input") {
  Eigen::MatrixXcd bad(2, 3);
  CHECK_THROWS_AS(SpectralData(bad, 0.0, 0), Error);

  Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(SpectralData(nonherm, 0.0, 0), Error);

  Eigen::MatrixXcd neg = -Eigen::MatrixXcd::Identity(2, 2);
  try {
    SpectralData s(neg, 0.0, 0);
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
}

TEST_CASE("spectral projectors are hermitian idempotents of the right rank") {
  testsup::Rng rng(501);
  for (int t = 0; t < 40; ++t) {
    int dim = int(rng.range(2, 8));
    int rank = int(rng.range(1, dim));
    Eigen::MatrixXcd a = rand_psd(rng, dim, rank);
    SpectralData s(a, 0.0, 0);
    double lambda = s.eigenvalues()(dim - 1) + 1.0;
    Eigen::MatrixXcd e = spectral_projector(s, lambda);
    CHECK(norm_of(e - Eigen::MatrixXcd::Identity(dim, dim)) < 1e-10);

    Eigen::MatrixXcd k = spectral_projector(s, 0.0);
    CHECK(norm_of(k * k - k) < 1e-10);
    CHECK(norm_of(k - k.adjoint()) < 1e-10);
    CHECK(std::lround(k.trace().real()) == s.rank_at(0.0));
    CHECK(norm_of(a * k) < 1e-6 * std::max(1.0, s.scale()));
  }
}

TEST_CASE("spectral density is an exact rational") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(2, 2) = 1.0;
  SpectralData s(m, 0.0, 0);
  CHECK(spectral_density(s, 0.0, 3) == mpq_class(2, 3));
  CHECK(spectral_density(s, 2.0, 3) == 1);
  CHECK_THROWS_AS(spectral_density(s, 0.0, 0), Error);
}

TEST_CASE("injectivity certificate handles the trivial and degenerate cases") {
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(3, 3);
  full(1, 1) = 2.0;
  full(2, 2) = 3.0;
  SpectralData no_kernel(full, 0.5, 1);
  Eigen::MatrixXcd some = Eigen::MatrixXcd::Zero(3, 3);
  some(2, 2) = 1.0;
  SpectralData with_kernel(some, 0.0, 1);

  InjectivityCertificate vac =
      projector_injectivity(no_kernel, 0.0, with_kernel, 0.5);
  CHECK(vac.dim_zero);
  CHECK(vac.injective);
  CHECK(vac.sigma_min == std::numeric_limits<double>::infinity());

  // Image of E_{h,0} is two-dimensional but E_{0,tau} has rank one.
  InjectivityCertificate degen =
      projector_injectivity(with_kernel, 0.0, no_kernel, 0.5);
  CHECK(degen.dim_h_sigma == 2);
  CHECK(degen.dim_0_tau == 0);
  CHECK(!degen.injective);
  CHECK(degen.sigma_min == 0.0);

  InjectivityCertificate same =
      projector_injectivity(with_kernel, 0.0, with_kernel, 0.5);
  CHECK(same.injective);
  CHECK(same.sigma_min == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(projector_injectivity(no_kernel, -0.1, with_kernel, 0.5),
                  Error);
  CHECK_THROWS_AS(projector_injectivity(no_kernel, 0.5, with_kernel, 0.5),
                  Error);
}

TEST_CASE("certificates agree with the explicit projector oracle") {
  testsup::Rng rng(502);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    int dim = int(rng.range(2, 8));
    Eigen::MatrixXcd ah = rand_psd(rng, dim, int(rng.range(1, dim - 1)));
    Eigen::MatrixXcd a0 = rand_psd(rng, dim, int(rng.range(1, dim - 1)));
    SpectralData sh(ah, 0.5, 1), s0(a0, 0.0, 1);

    // Mid-gap tau keeps both routes away from eigenvalues.
    Eigen::VectorXd ev = s0.eigenvalues();
    double tau = -1.0;
    for (int i = 0; i + 1 < ev.size(); ++i) {
      double lo = std::max(0.0, ev(i)), hi = ev(i + 1);
      if (hi - lo > 1e-3 * s0.scale() && lo >= 0) {
        tau = (lo + hi) / 2;
        break;
      }
    }
    if (tau <= 0) continue;
    ++checked;

    InjectivityCertificate cert = projector_injectivity(sh, 0.0, s0, tau);

    Eigen::MatrixXcd bh = sh.basis_at(0.0);
    Eigen::MatrixXcd e0 = spectral_projector(s0, tau);
    double sigma_min_oracle = std::numeric_limits<double>::infinity();
    if (bh.cols() > 0) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e0 * bh);
      sigma_min_oracle = svd.singularValues()(svd.singularValues().size() - 1);
    }
    bool injective_oracle =
        bh.cols() == 0 || (sigma_min_oracle > kCertTol &&
                           cert.dim_h_sigma <= cert.dim_0_tau);
    CAPTURE(t);
    CHECK(cert.injective == injective_oracle);
    if (bh.cols() > 0 && cert.dim_h_sigma <= cert.dim_0_tau)
      CHECK(cert.sigma_min ==
            doctest::Approx(sigma_min_oracle).epsilon(1e-8));
  }
  CHECK(checked >= 30);
}

TEST_CASE("resolvent routes agree and match a direct solve") {
  for (const char* name : {"iwasawa", "kodaira_thurston"}) {
    CAPTURE(name);
    BigradedComplex c = find_entry(name)->make();
    HermitianMetric g = random_metric(c, 61);
    DhOperator a = build_dh(c, g, 0.5);
    DhOperator b = build_dh(c, g, 0.125);
    for (int k = 0; k <= 2 * c.n(); ++k) {
      CAPTURE(k);
      double via_square = resolvent_distance(a, b, k);
      double via_pair =
          resolvent_distance(a, b, k, ResolventRoute::FactoredPair);
      CHECK(via_square == doctest::Approx(via_pair).epsilon(1e-9));
      CHECK(resolvent_distance(b, a, k) ==
            doctest::Approx(via_square).epsilon(1e-12));
      CHECK(resolvent_distance(a, a, k) < 1e-13);

      int d = a.dim(k);
      if (d == 0) continue;
      Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
      Eigen::MatrixXcd ra = (a.laplacian(k) + id).partialPivLu().solve(id);
      Eigen::MatrixXcd rb = (b.laplacian(k) + id).partialPivLu().solve(id);
      CHECK(via_square == doctest::Approx(top_singular(ra - rb)).epsilon(1e-9));
    }
  }
}

TEST_CASE("graph-norm criterion is linear in h") {
  BigradedComplex c = iwasawa();
  HermitianMetric g = random_metric(c, 62);
  DhOperator d0 = build_dh(c, g, 0.0);
  DhOperator d1 = build_dh(c, g, 1.0);
  for (int k = 0; k <= 6; ++k) {
    GraphNormBound one = reed_simon_criterion(d1, d0, k);
    CHECK(one.equivalence_factor == doctest::Approx(std::sqrt(2.0)));
    for (double h : {0.5, 0.25, 0.0625}) {
      DhOperator dh = build_dh(c, g, h);
      GraphNormBound at_h = reed_simon_criterion(dh, d0, k);
      if (one.value == 0.0)
        CHECK(at_h.value == 0.0);
      else
        CHECK(at_h.value == doctest::Approx(h * one.value).epsilon(1e-10));
    }
  }
}

TEST_CASE("spectral gap reads the first positive eigenvalue") {
  BigradedComplex t1 = torus(1);
  DhOperator flat = build_dh(t1, HermitianMetric::identity(t1), 0.5);
  CHECK(!spectral_gap(SpectralData(flat, 1)).has_value());

  BigradedComplex c = iwasawa();
  DhOperator dh = build_dh(c, HermitianMetric::identity(c), 0.5);
  SpectralData s(dh, 1);
  auto gap = spectral_gap(s);
  REQUIRE(gap.has_value());
  CHECK(*gap > 0);
  double probe = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.dim(); ++i)
    if (s.snapped(i) > 0) probe = std::min(probe, s.snapped(i));
  CHECK(*gap == probe);
}

TEST_CASE("kernel dimensions are metric independent") {
  for (const char* name : {"iwasawa", "kodaira_thurston"}) {
    BigradedComplex c = find_entry(name)->make();
    for (std::uint64_t seed : {71u, 72u, 73u, 74u, 75u}) {
      CAPTURE(name);
      CAPTURE(seed);
      DhOperator dh = build_dh(c, random_metric(c, seed), 0.25);
      DhOperator d0 = build_dh(c, random_metric(c, seed), 0.0);
      for (int k = 0; k <= 2 * c.n(); ++k) {
        CHECK(SpectralData(dh, k).rank_at(0.0) == betti(c, k));
        int dolbeault = 0;
        for (int p = 0; p <= c.n(); ++p)
          if (k - p >= 0 && k - p <= c.n())
            dolbeault += hodge_dbar(c, p, k - p);
        CHECK(SpectralData(d0, k).rank_at(0.0) == dolbeault);
      }
    }
  }
}

TEST_CASE("h sweep certifies the whole grid on iwasawa degree one") {
  BigradedComplex c = iwasawa();
  HermitianMetric g = HermitianMetric::identity(c);
  std::vector<double> grid = {0.5, 0.25, 0.125, 0.0625};
  SweepRecord r = h_sweep(c, g, 1, grid, 0.0, 0.5);
  REQUIRE(r.points.size() == 4);
  CHECK(r.h_star.has_value());
  CHECK(*r.h_star == 0.5);
  CHECK(r.density_ok);
  CHECK(!r.nonmonotone);
  for (const SweepPoint& p : r.points) {
    CHECK(p.injective);
    CHECK(p.n_h_sigma == 4);
    CHECK(p.n_0_tau == 5);
    CHECK(p.sigma_min > kCertTol);
    CHECK(p.rs_criterion == doctest::Approx(p.h).epsilon(1e-9));
  }
}

TEST_CASE("h sweep validates its inputs") {
  BigradedComplex c = torus(1);
  HermitianMetric g = HermitianMetric::identity(c);
  CHECK_THROWS_AS(h_sweep(c, g, 1, {}, 0.0, 0.5), Error);
  CHECK_THROWS_AS(h_sweep(c, g, 1, {0.25, 0.5}, 0.0, 0.5), Error);
  CHECK_THROWS_AS(h_sweep(c, g, 1, {1.5}, 0.0, 0.5), Error);
  CHECK_THROWS_AS(h_sweep(c, g, 1, {0.5, 0.5}, 0.0, 0.5), Error);
  CHECK_THROWS_AS(h_sweep(c, g, 1, {0.5}, -1.0, 0.5), Error);
  CHECK_THROWS_AS(h_sweep(c, g, 1, {0.5}, 0.5, 0.5), Error);
}
