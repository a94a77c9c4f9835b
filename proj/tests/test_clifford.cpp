#include "dirac_spectra/clifford.hpp"

#include <complex>

#include "doctest.h"

using namespace dirac_spectra;
using clifford::CliffordRep;
using clifford::Matrix;
using clifford::Spinor;

namespace {

double unitarity_defect(const CliffordRep& rep) {
  double worst = 0.0;
  const int d = rep.rep_size();
  for (const Matrix& g : rep.gammas) {
    Matrix residual = g.adjoint() * g - Matrix::Identity(d, d);
    worst = std::max(worst, residual.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_SUITE("clifford") {

TEST_CASE("one generator squares to minus one") {
  const CliffordRep rep = clifford::build_rep(1);
  REQUIRE(rep.rep_size() == 1);
  const std::complex<double> g = rep.gammas[0](0, 0);
  CHECK(std::abs(g * g + 1.0) < 1e-15);
  CHECK(std::abs(std::abs(g) - 1.0) < 1e-15);  // +i or -i
}

TEST_CASE("two generators are 2x2 anticommuting skew unitaries") {
  const CliffordRep rep = clifford::build_rep(2);
  REQUIRE(rep.rep_size() == 2);
  REQUIRE(rep.gammas.size() == 2);
  CHECK(clifford::anticommutator_defect(rep) < 1e-12);
  CHECK(unitarity_defect(rep) < 1e-12);
}

TEST_CASE("four generators anticommute to 1e-12") {
  const CliffordRep rep = clifford::build_rep(4);
  REQUIRE(rep.rep_size() == 4);
  CHECK(clifford::anticommutator_defect(rep) < 1e-12);
}

TEST_CASE("relations and unitarity hold through dimension 12") {
  for (int m = 1; m <= 12; ++m) {
    CAPTURE(m);
    const CliffordRep rep = clifford::build_rep(m);
    CHECK(rep.rep_size() == (1 << (m / 2)));
    CHECK(clifford::anticommutator_defect(rep) < 1e-12);
    CHECK(unitarity_defect(rep) < 1e-12);
  }
}

TEST_CASE("dimension out of range is rejected") {
  CHECK_THROWS_AS(clifford::build_rep(0), std::invalid_argument);
  CHECK_THROWS_AS(clifford::build_rep(13), std::invalid_argument);
}

TEST_CASE("volume element squares to the identity") {
  for (int m : {2, 3, 4, 5, 6}) {
    CAPTURE(m);
    const CliffordRep rep = clifford::build_rep(m);
    const Matrix omega = clifford::volume_element(rep);
    const int d = rep.rep_size();
    CHECK((omega * omega - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("volume element commutation pattern") {
  // even m: anticommutes with every generator; odd m: commutes (and is +I by
  // the fixed convention).
  for (int m : {2, 4, 6}) {
    CAPTURE(m);
    const CliffordRep rep = clifford::build_rep(m);
    const Matrix omega = clifford::volume_element(rep);
    for (const Matrix& g : rep.gammas)
      CHECK((omega * g + g * omega).cwiseAbs().maxCoeff() < 1e-12);
  }
  for (int m : {1, 3, 5, 7}) {
    CAPTURE(m);
    const CliffordRep rep = clifford::build_rep(m);
    const Matrix omega = clifford::volume_element(rep);
    const int d = rep.rep_size();
    for (const Matrix& g : rep.gammas)
      CHECK((omega * g - g * omega).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((omega - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("eigenspinor satisfies its defining equation") {
  for (int m = 2; m <= 8; ++m) {
    const CliffordRep rep = clifford::build_rep(m);
    for (int index : {1, m}) {
      for (int sign : {1, -1}) {
        CAPTURE(m);
        CAPTURE(index);
        CAPTURE(sign);
        const Spinor psi = clifford::eigenspinor(rep, index, sign);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
        const Spinor residual =
            rep.gammas[index - 1] * psi - std::complex<double>(0, sign) * psi;
        CHECK(residual.norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("eigenspinor in three dimensions, positive branch") {
  const CliffordRep rep = clifford::build_rep(3);
  const Spinor psi = clifford::eigenspinor(rep, 1, 1);
  CHECK((rep.gammas[0] * psi - std::complex<double>(0, 1) * psi).norm() < 1e-12);
}

TEST_CASE("eigenspinor for the 1-dimensional algebra") {
  const CliffordRep rep = clifford::build_rep(1);
  const int sign = rep.gammas[0](0, 0).imag() > 0 ? 1 : -1;
  const Spinor psi = clifford::eigenspinor(rep, 1, sign);
  CHECK(std::abs(psi(0) - 1.0) < 1e-15);
  // the 1-dimensional fiber carries only one branch
  CHECK_THROWS(clifford::eigenspinor(rep, 1, -sign));
}

TEST_CASE("eigenspinor is deterministic") {
  const CliffordRep rep = clifford::build_rep(5);
  const Spinor a = clifford::eigenspinor(rep, 2, -1);
  const Spinor b = clifford::eigenspinor(rep, 2, -1);
  CHECK((a - b).norm() == 0.0);
}

}  // TEST_SUITE
