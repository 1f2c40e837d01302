#ifndef OPCONVEX_MATRIX_HPP
#define OPCONVEX_MATRIX_HPP

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace opconvex {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Global default tolerance. Checks scale it by max(1, norm) of the input
// unless a contract states an absolute bound.
inline constexpr double kDefaultTol = 1e-9;

// Result of a Hermitian eigendecomposition, eigenvalues descending,
// eigenvector columns paired to eigenvalues.
struct SpectralDecomposition {
  RVec eigenvalues;
  CMat eigenvectors;
};

// Positive-semidefiniteness verdict; min_eigenvalue is always reported.
struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

// Matrix unit e_ij of M_n (1-based indices): entry (i,j) is 1, rest 0.
CMat matrix_units(int n, int i, int j);

// ||m - m^*||_F, 0 for non-square input is not defined (throws).
double hermiticity_defect(const CMat& m);

// ||u u^* - 1||_F.
double unitarity_defect(const CMat& u);

bool is_unitary(const CMat& u, double tol = kDefaultTol);

// Spectral decomposition of a Hermitian matrix. Eigenvalues descending.
// Within eigenvalue clusters (gap below tol * max(1, spectral radius)) the
// eigenbasis is canonicalized against the standard basis order, and every
// eigenvector's first nonzero component is made real positive, so the
// output is deterministic per input and stable across representations.
SpectralDecomposition hermitian_eig(const CMat& m, double tol = kDefaultTol);

// True iff min eigenvalue >= -tol * max(1, spectral radius).
// Rejects non-Hermitian input.
PsdReport is_psd(const CMat& m, double tol = kDefaultTol);

// Kronecker product; entry ((i-1)p+k, (j-1)q+l) = a(i,j) * b(k,l)
// for b of shape p x q.
CMat kron(const CMat& a, const CMat& b);

// sqrt(sum |a_ij - b_ij|^2); shapes must agree.
double frobenius_distance(const CMat& a, const CMat& b);

// Haar-distributed n x n unitary: QR of a standard complex Ginibre matrix
// with the R-diagonal phases folded into Q. Deterministic per seed.
CMat random_unitary(int n, std::uint64_t seed);
CMat random_unitary(int n, std::mt19937_64& rng);

// Standard complex Ginibre matrix (i.i.d. entries, N(0,1) real and imag).
CMat random_ginibre(int n, std::mt19937_64& rng);

// Principal square root of a PSD matrix.
CMat psd_sqrt(const CMat& m, double tol = kDefaultTol);

}  // namespace opconvex

#endif
