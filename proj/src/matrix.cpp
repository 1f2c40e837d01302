#include "opconvex/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace opconvex {

namespace {

// Components below this magnitude are treated as zero when picking the
// phase-fixing pivot of a unit vector. Well above eigensolver noise, well
// below any honest component of a unit vector at the dimensions we handle.
constexpr double kPhasePivotCutoff = 1e-8;

void require_square(const CMat& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << who << ": matrix must be square, got " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(os.str());
  }
}

void require_hermitian(const CMat& m, double tol, const char* who) {
  require_square(m, who);
  const double defect = (m - m.adjoint()).norm();
  if (defect > tol * std::max(1.0, m.norm())) {
    std::ostringstream os;
    os << who << ": matrix is not Hermitian (defect " << defect << ")";
    throw std::invalid_argument(os.str());
  }
}

// Multiply v by a unit phase so its first component above the pivot cutoff
// becomes real positive.
void fix_phase(Eigen::Ref<CVec> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > kPhasePivotCutoff) {
      v *= std::conj(v(i)) / a;
      return;
    }
  }
}

// Deterministic orthonormal basis of the column span of w: project the
// standard basis vectors onto the subspace in order and Gram-Schmidt them.
CMat canonicalize_subspace(const CMat& w) {
  const Eigen::Index n = w.rows();
  const Eigen::Index m = w.cols();
  const CMat projector = w * w.adjoint();
  CMat basis(n, m);
  Eigen::Index found = 0;
  for (Eigen::Index k = 0; k < n && found < m; ++k) {
    CVec v = projector.col(k);
    // two Gram-Schmidt sweeps for orthogonality at working precision
    for (int sweep = 0; sweep < 2; ++sweep)
      for (Eigen::Index j = 0; j < found; ++j)
        v -= basis.col(j).dot(v) * basis.col(j);
    const double norm = v.norm();
    if (norm > 1e-6) {
      basis.col(found) = v / norm;
      fix_phase(basis.col(found));
      ++found;
    }
  }
  if (found < m) return w;  // numerically deficient sweep; keep solver basis
  return basis;
}

}  // namespace

CMat matrix_units(int n, int i, int j) {
  if (n < 1) throw std::invalid_argument("matrix_units: n must be positive");
  if (i < 1 || i > n || j < 1 || j > n) {
    std::ostringstream os;
    os << "matrix_units: indices (" << i << "," << j << ") out of range for n=" << n;
    throw std::out_of_range(os.str());
  }
  CMat e = CMat::Zero(n, n);
  e(i - 1, j - 1) = Complex(1.0, 0.0);
  return e;
}

double hermiticity_defect(const CMat& m) {
  require_square(m, "hermiticity_defect");
  return (m - m.adjoint()).norm();
}

double unitarity_defect(const CMat& u) {
  require_square(u, "unitarity_defect");
  return (u * u.adjoint() - CMat::Identity(u.rows(), u.rows())).norm();
}

bool is_unitary(const CMat& u, double tol) {
  return u.rows() == u.cols() && unitarity_defect(u) <= tol * std::max(1.0, u.norm());
}

SpectralDecomposition hermitian_eig(const CMat& m, double tol) {
  require_hermitian(m, tol, "hermitian_eig");
  const Eigen::Index n = m.rows();

  Eigen::SelfAdjointEigenSolver<CMat> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");

  // Eigen returns ascending order; flip to descending.
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();

  const double radius = (n > 0) ? std::max(std::abs(out.eigenvalues(0)),
                                           std::abs(out.eigenvalues(n - 1)))
                                : 0.0;
  const double cluster_gap = tol * std::max(1.0, radius);

  Eigen::Index lo = 0;
  while (lo < n) {
    Eigen::Index hi = lo + 1;
    while (hi < n && out.eigenvalues(hi - 1) - out.eigenvalues(hi) < cluster_gap) ++hi;
    if (hi - lo > 1) {
      out.eigenvectors.middleCols(lo, hi - lo) =
          canonicalize_subspace(out.eigenvectors.middleCols(lo, hi - lo));
    } else {
      fix_phase(out.eigenvectors.col(lo));
    }
    lo = hi;
  }
  return out;
}

PsdReport is_psd(const CMat& m, double tol) {
  const SpectralDecomposition eig = hermitian_eig(m, tol);
  const Eigen::Index n = m.rows();
  PsdReport report;
  report.min_eigenvalue = (n > 0) ? eig.eigenvalues(n - 1) : 0.0;
  const double radius = (n > 0) ? std::max(std::abs(eig.eigenvalues(0)),
                                           std::abs(eig.eigenvalues(n - 1)))
                                : 0.0;
  report.psd = report.min_eigenvalue >= -tol * std::max(1.0, radius);
  return report;
}

CMat kron(const CMat& a, const CMat& b) {
  const Eigen::Index p = b.rows(), q = b.cols();
  CMat out(a.rows() * p, a.cols() * q);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * p, j * q, p, q) = a(i, j) * b;
  return out;
}

double frobenius_distance(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << "frobenius_distance: shape mismatch " << a.rows() << "x" << a.cols()
       << " vs " << b.rows() << "x" << b.cols();
    throw std::invalid_argument(os.str());
  }
  return (a - b).norm();
}

CMat random_ginibre(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

CMat random_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("random_unitary: n must be positive");
  const CMat g = random_ginibre(n, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fold the R-diagonal phases into Q; this makes the distribution Haar.
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

CMat random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_unitary(n, rng);
}

CMat psd_sqrt(const CMat& m, double tol) {
  const SpectralDecomposition eig = hermitian_eig(m, tol);
  const Eigen::Index n = m.rows();
  const double radius = (n > 0) ? std::max(std::abs(eig.eigenvalues(0)),
                                           std::abs(eig.eigenvalues(n - 1)))
                                : 0.0;
  if (n > 0 && eig.eigenvalues(n - 1) < -tol * std::max(1.0, radius)) {
    std::ostringstream os;
    os << "psd_sqrt: matrix is not PSD (min eigenvalue " << eig.eigenvalues(n - 1) << ")";
    throw std::invalid_argument(os.str());
  }
  RVec roots(n);
  for (Eigen::Index k = 0; k < n; ++k)
    roots(k) = std::sqrt(std::max(0.0, eig.eigenvalues(k)));
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace opconvex
