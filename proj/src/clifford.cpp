#include "dirac_spectra/clifford.hpp"

#include <stdexcept>

namespace dirac_spectra::clifford {

namespace {

using namespace std::complex_literals;

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix pauli(int which) {
  Matrix m(2, 2);
  switch (which) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -1i, 1i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

CliffordRep build_rep(int m) {
  if (m < 1 || m > 12)
    throw std::invalid_argument("build_rep: dimension out of range [1,12]");
  CliffordRep rep;
  rep.dim = 0;
  for (int step = 2; step <= m; step += 2) {
    const Matrix id = Matrix::Identity(rep.rep_size(), rep.rep_size());
    std::vector<Matrix> next;
    next.reserve(step);
    const Matrix s1 = pauli(1);
    for (const Matrix& g : rep.gammas) next.push_back(kron(s1, g));
    next.push_back(kron(1i * pauli(2), id));
    next.push_back(kron(1i * pauli(3), id));
    rep.gammas = std::move(next);
    rep.dim = step;
  }
  if (m % 2 == 1) {
    // The extra generator for odd m; the -i sign fixes omega = +I.
    rep.dim = m - 1;
    rep.gammas.push_back(-1i * volume_element(rep));
    rep.dim = m;
  }
  return rep;
}

Matrix volume_element(const CliffordRep& rep) {
  const int d = rep.rep_size();
  Matrix omega = Matrix::Identity(d, d);
  for (const Matrix& g : rep.gammas) omega = omega * g;
  const int quarter_turns = ((rep.dim + 1) / 2) % 4;
  static const std::complex<double> powers[4] = {1.0, 1i, -1.0, -1i};
  return powers[quarter_turns] * omega;
}

Spinor eigenspinor(const CliffordRep& rep, int direction_index, int sign) {
  if (direction_index < 1 || direction_index > rep.dim)
    throw std::invalid_argument("eigenspinor: direction index out of range");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("eigenspinor: sign must be +1 or -1");
  const Matrix& g = rep.gammas[direction_index - 1];
  const int d = rep.rep_size();
  // Projector onto the sign*i eigenspace of the skew unitary g.
  const Matrix proj =
      0.5 * (Matrix::Identity(d, d) - std::complex<double>(0, sign) * g);
  for (int j = 0; j < d; ++j) {
    Spinor candidate = proj.col(j);
    const double norm = candidate.norm();
    if (norm > 1e-6) return candidate / norm;
  }
  throw std::runtime_error("eigenspinor: requested eigenspace is empty");
}

double anticommutator_defect(const CliffordRep& rep) {
  const int d = rep.rep_size();
  double worst = 0.0;
  for (std::size_t i = 0; i < rep.gammas.size(); ++i) {
    for (std::size_t j = i; j < rep.gammas.size(); ++j) {
      Matrix anti = rep.gammas[i] * rep.gammas[j] + rep.gammas[j] * rep.gammas[i];
      if (i == j) anti += 2.0 * Matrix::Identity(d, d);
      worst = std::max(worst, anti.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace dirac_spectra::clifford
