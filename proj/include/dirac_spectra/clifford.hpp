#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace dirac_spectra::clifford {

using Matrix = Eigen::MatrixXcd;
using Spinor = Eigen::VectorXcd;

// Skew generators of the complex Clifford algebra on C^m acting on the spinor
// space of dimension 2^floor(m/2):
//   gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij I,   gamma_i unitary.
// The basis is frozen by the deterministic recursion in build_rep; for odd m
// the representation is the one where the volume element acts as +I.
struct CliffordRep {
  int dim = 0;                 // ambient dimension m
  std::vector<Matrix> gammas;  // m matrices of size 2^floor(m/2)
  int rep_size() const {
    return gammas.empty() ? 1 : static_cast<int>(gammas.front().rows());
  }
};

// Tensor-product recursion: even m appends i*sigma2 (x) I and i*sigma3 (x) I
// to sigma1 (x) gammas(m-2); odd m appends -i * volume_element(m-1).
// Requires 1 <= m <= 12 (spinor size capped at 64).
CliffordRep build_rep(int m);

// omega = i^floor((m+1)/2) gamma_1 ... gamma_m. Squares to I; commutes with
// every gamma_i for odd m, anticommutes for even m.
Matrix volume_element(const CliffordRep& rep);

// Unit spinor psi with gamma_index psi = sign * i * psi. Deterministic
// tie-break: projection of the lowest-index standard basis vector with
// non-negligible component, then normalization. direction_index is 1-based.
Spinor eigenspinor(const CliffordRep& rep, int direction_index, int sign);

// Largest elementwise magnitude of gamma_i gamma_j + gamma_j gamma_i
// + 2 delta_ij I over all pairs; zero for a valid representation.
double anticommutator_defect(const CliffordRep& rep);

}  // namespace dirac_spectra::clifford
