#include "dirac_spectra/spectral_region.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace dirac_spectra;
using region::Complex;
using region::Lp;
using region::RegionCase;
using region::SpectralRegion;

namespace {

Complex random_mu(double radius) {
  std::uniform_real_distribution<double> dist(-radius, radius);
  return Complex(dist(test_util::rng()), dist(test_util::rng()));
}

// Independent membership oracle for lambda0 = 0: the horizontal strip
// |Im mu| <= c k |1/p - 1/2|.
bool strip_oracle(double c, int k, Lp p, Complex mu, double tol) {
  return std::abs(mu.imag()) <= c * k * std::abs(p.inv() - 0.5) + tol;
}

}  // namespace

TEST_SUITE("spectral_region") {

TEST_CASE("exponent type") {
  CHECK(Lp::parse("inf").is_infinity());
  CHECK(Lp::parse("2").inv() == 0.5);
  CHECK(Lp::from_value(4.0).dual().inv() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(Lp::from_value(1.0).dual().is_infinity());
  CHECK(Lp::infinity().dual().inv() == 1.0);
  CHECK_THROWS(Lp::from_value(0.5));
  CHECK_THROWS(Lp::parse("abc"));
}

TEST_CASE("membership at p = 2 is the pair of rays") {
  const SpectralRegion reg = region::make_region(1.0, 2, 1.0, Lp::from_value(2.0));
  CHECK(reg.contains(Complex(1.5, 0.0)));
  CHECK_FALSE(reg.contains(Complex(0.5, 0.0)));
  CHECK_FALSE(reg.contains(Complex(1.5, 0.2)));
}

TEST_CASE("origin is inside when lambda0 = 0") {
  for (double c : {0.0, 1.0, 2.5}) {
    for (int k : {1, 3}) {
      const SpectralRegion reg = region::make_region(c, k, 0.0, Lp::from_value(1.5));
      CHECK(reg.contains(Complex(0.0, 0.0)));
    }
  }
}

TEST_CASE("strip formula cross-check on random points") {
  const SpectralRegion reg = region::make_region(1.0, 3, 0.0, Lp::from_value(1.0));
  for (int i = 0; i < 1000; ++i) {
    const Complex mu = random_mu(4.0);
    CAPTURE(mu.real());
    CAPTURE(mu.imag());
    CHECK(reg.contains(mu, 1e-9) == strip_oracle(1.0, 3, reg.p, mu, 1e-9));
  }
}

TEST_CASE("boundary vertices") {
  // threshold 1 from c=1, k=2, p=1
  const Lp p1 = Lp::from_value(1.0);
  {
    const SpectralRegion reg = region::make_region(1.0, 2, 0.0, p1);
    const auto pts = region::boundary(reg, -1.0, 1.0, 3);  // grid {-1, 0, 1}
    // s = 0 block starts at index 4: mu^2 = -1 so mu = +/- i
    CHECK(std::abs(pts[4] - Complex(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(pts[5] - Complex(0.0, -1.0)) < 1e-12);
  }
  {
    const SpectralRegion reg = region::make_region(1.0, 2, 2.0, p1);
    const auto pts = region::boundary(reg, -1.0, 1.0, 3);
    CHECK(std::abs(pts[4] - Complex(std::sqrt(3.0), 0.0)) < 1e-12);
  }
  {
    const SpectralRegion reg = region::make_region(1.0, 2, 0.5, p1);
    const auto pts = region::boundary(reg, -1.0, 1.0, 3);
    CHECK(std::abs(pts[4] - Complex(0.0, std::sqrt(0.75))) < 1e-12);
  }
}

TEST_CASE("boundary points are genuine boundary") {
  std::vector<SpectralRegion> regions = {
      region::make_region(1.0, 2, 0.0, Lp::from_value(1.0)),
      region::make_region(1.0, 2, 0.5, Lp::from_value(1.5)),
      region::make_region(1.0, 2, 2.0, Lp::from_value(3.0)),
      region::make_region(0.5, 3, 1.2, Lp::infinity()),
      region::make_region(2.0, 1, 0.3, Lp::from_value(4.0)),
  };
  for (const SpectralRegion& reg : regions) {
    if (reg.threshold() == 0.0) continue;  // ray case has empty interior
    for (const Complex& mu : region::boundary(reg, -3.0, 3.0, 41)) {
      CAPTURE(mu.real());
      CAPTURE(mu.imag());
      CHECK(reg.contains(mu, 1e-9));
      CHECK_FALSE(reg.contains(mu, -1e-6));
      // the squared point sits on the parabola boundary of the squared region
      CHECK(reg.d_squared_contains(mu * mu, 1e-9));
      CHECK_FALSE(reg.d_squared_contains(mu * mu, -1e-6));
    }
  }
}

TEST_CASE("boundary argument validation") {
  const SpectralRegion reg = region::make_region(1.0, 2, 0.0, Lp::from_value(1.0));
  CHECK_THROWS(region::boundary(reg, 0.0, 1.0, 1));
  CHECK_THROWS(region::boundary(reg, 1.0, 0.0, 10));
}

TEST_CASE("classification and landmarks") {
  const Lp p1 = Lp::from_value(1.0);  // threshold c*k/2
  {
    const RegionCase rc = region::make_region(1.0, 2, 0.0, p1).classify();
    CHECK(rc.tag == RegionCase::Tag::L);
    CHECK(rc.landmark == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(rc.invertible());
  }
  {
    const RegionCase rc = region::make_region(1.0, 2, 2.0, p1).classify();
    CHECK(rc.tag == RegionCase::Tag::R);
    CHECK(std::abs(rc.landmark - std::sqrt(3.0)) < 1e-12);
    CHECK(rc.invertible());
  }
  {
    // degenerate lambda0 = threshold pinches at the origin
    const RegionCase rc = region::make_region(1.0, 2, 1.0, p1).classify();
    CHECK(rc.tag == RegionCase::Tag::M);
    CHECK(rc.landmark == 0.0);
  }
}

TEST_CASE("landmark matches the s = 0 boundary point") {
  for (double lambda0 : {0.0, 0.4, 1.0, 2.3}) {
    const SpectralRegion reg =
        region::make_region(1.3, 3, lambda0, Lp::from_value(1.2));
    const RegionCase rc = reg.classify();
    const auto pts = region::boundary(reg, -1.0, 1.0, 3);
    CHECK(std::abs(std::abs(pts[4]) - rc.landmark) < 1e-12);
  }
}

TEST_CASE("squared-operator parabola") {
  const std::vector<double> grid = {-2.0, -1.0, 0.0, 1.0, 2.0};
  {
    // p = 2 degenerates onto the real axis starting at lambda0^2
    const SpectralRegion reg = region::make_region(1.0, 2, 1.5, Lp::from_value(2.0));
    const auto pts = region::d_squared_boundary(reg, grid);
    for (const Complex& w : pts) {
      CHECK(w.imag() == 0.0);
      CHECK(w.real() >= 1.5 * 1.5 - 1e-12);
    }
    CHECK(pts[2].real() == doctest::Approx(2.25).epsilon(1e-15));
  }
  {
    // lambda0 = 0, p != 2: negative real vertex
    const SpectralRegion reg = region::make_region(1.0, 3, 0.0, Lp::from_value(1.0));
    const auto pts = region::d_squared_boundary(reg, grid);
    CHECK(pts[2].real() == doctest::Approx(-2.25).epsilon(1e-12));
    CHECK(pts[2].real() < 0.0);
  }
}

TEST_CASE("squared boundary points lie on the parabola") {
  const SpectralRegion reg = region::make_region(1.0, 2, 0.7, Lp::from_value(1.4));
  const int samples = 21;
  const auto mus = region::boundary(reg, -2.0, 2.0, samples);
  std::vector<double> grid(samples);
  for (int i = 0; i < samples; ++i) grid[i] = -2.0 + 4.0 * i / (samples - 1);
  const auto parabola = region::d_squared_boundary(reg, grid);
  for (int i = 0; i < samples; ++i) {
    // both square roots and the conjugate pair collapse onto w or conj(w)
    const Complex w = parabola[i];
    for (int j = 0; j < 4; ++j) {
      const Complex sq = mus[4 * i + j] * mus[4 * i + j];
      const double dist = std::min(std::abs(sq - w), std::abs(sq - std::conj(w)));
      CHECK(dist < 1e-9);
    }
  }
}

TEST_CASE("laplacian parabola vertices") {
  std::vector<double> zero = {0.0};
  CHECK(region::laplacian_boundary(2, Lp::from_value(2.0), zero)[0].real() ==
        doctest::Approx(1.0).epsilon(1e-15));  // k^2/4 with k=2
  CHECK(region::laplacian_boundary(2, Lp::from_value(1.0), zero)[0].real() ==
        doctest::Approx(0.0));
  for (int k : {1, 2, 3, 5}) {
    for (double pval : {1.0, 1.5, 2.0, 3.0, 7.0}) {
      CAPTURE(k);
      CAPTURE(pval);
      CHECK(std::abs(region::laplacian_vertex_shift(k, Lp::from_value(pval)) -
                     0.25 * k * k) < 1e-12);
    }
    CHECK(std::abs(region::laplacian_vertex_shift(k, Lp::infinity()) -
                   0.25 * k * k) < 1e-12);
  }
}

TEST_CASE("symmetry transforms") {
  const SpectralRegion reg = region::make_region(1.0, 2, 0.8, Lp::from_value(1.3));
  const auto report = region::symmetry_transforms(reg, Complex(1.0, 0.3));
  CHECK(report.all_ok());

  // dual pair p = 1 / p = infinity agree on random points
  const SpectralRegion r1 = region::make_region(1.0, 2, 0.5, Lp::from_value(1.0));
  const SpectralRegion rinf = region::make_region(1.0, 2, 0.5, Lp::infinity());
  for (int i = 0; i < 1000; ++i) {
    const Complex mu = random_mu(4.0);
    CHECK(r1.contains(mu) == rinf.contains(mu));
  }

  // real mu beyond lambda0 belongs to every exponent
  for (double pval : {1.0, 1.7, 2.0, 4.0}) {
    const SpectralRegion reg2 = region::make_region(1.0, 2, 1.0, Lp::from_value(pval));
    CHECK(reg2.contains(Complex(1.5, 0.0)));
    CHECK(reg2.contains(Complex(-3.0, 0.0)));
  }
}

TEST_CASE("regions nest monotonically in the exponent") {
  // sigma_2 inside sigma_p inside sigma_1 on both sides of 2
  const double lambda0 = 0.6;
  const std::vector<Lp> chain = {Lp::from_value(2.0), Lp::from_value(1.4),
                                 Lp::from_value(3.5), Lp::from_value(1.15),
                                 Lp::from_value(9.0), Lp::from_value(1.0),
                                 Lp::infinity()};
  std::vector<SpectralRegion> regions;
  for (const Lp& p : chain)
    regions.push_back(region::make_region(1.0, 2, lambda0, p));
  // chain is ordered by increasing |1/p - 1/2|, i.e. increasing threshold
  for (std::size_t i = 1; i < regions.size(); ++i)
    CHECK(regions[i].threshold() >= regions[i - 1].threshold());
  for (int i = 0; i < 500; ++i) {
    const Complex mu = random_mu(4.0);
    for (std::size_t j = 1; j < regions.size(); ++j)
      if (regions[j - 1].contains(mu)) CHECK(regions[j].contains(mu));
  }
}

TEST_CASE("json serialization") {
  const SpectralRegion reg = region::make_region(1.0, 2, 2.0, Lp::infinity());
  const auto pts = region::boundary(reg, -1.0, 1.0, 3);
  const nlohmann::json j = region::region_to_json(reg, pts);
  CHECK(j["p"] == "inf");
  CHECK(j["case"] == "R");
  CHECK(j["invertible"] == true);
  CHECK(j["landmark"].get<double>() == doctest::Approx(std::sqrt(3.0)));
  CHECK(j["boundary"].size() == 12);
  CHECK(j["boundary"][0].size() == 2);

  const nlohmann::json j2 = region::region_to_json(
      region::make_region(1.0, 2, 0.0, Lp::from_value(1.5)), {});
  CHECK(j2["p"].get<double>() == doctest::Approx(1.5));
  CHECK(j2["case"] == "L");
}

}  // TEST_SUITE
