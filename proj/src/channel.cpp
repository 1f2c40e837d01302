#include "opconvex/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace opconvex {

namespace {

constexpr double kPhasePivotCutoff = 1e-8;

// Column-major vectorization: component i*n + k is v(k, i).
CVec vec(const CMat& v) {
  return Eigen::Map<const CVec>(v.data(), v.size());
}

CMat unvec(const CVec& w, int n) {
  return Eigen::Map<const CMat>(w.data(), n, n);
}

// First row-major entry above the cutoff becomes real positive.
void fix_operator_phase(CMat& v, double scale) {
  const double cutoff = kPhasePivotCutoff * std::max(1.0, scale);
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      const double a = std::abs(v(i, j));
      if (a > cutoff) {
        v *= std::conj(v(i, j)) / a;
        return;
      }
    }
}

// Row-major lexicographic comparison on (re, im) pairs; tie-break for
// operators inside one Choi eigenvalue cluster.
bool lex_less(const CMat& a, const CMat& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Complex x = a(i, j), y = b(i, j);
      if (x.real() != y.real()) return x.real() < y.real();
      if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
  return false;
}

void require_same_dim(const KrausMap& a, const KrausMap& b, const char* who) {
  if (a.dim != b.dim) {
    std::ostringstream os;
    os << who << ": dimension mismatch (" << a.dim << " vs " << b.dim << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

KrausMap::KrausMap(int n, std::vector<CMat> ops, bool canonical_form)
    : dim(n), kraus(std::move(ops)), canonical(canonical_form) {
  if (dim < 1) throw std::invalid_argument("KrausMap: dimension must be positive");
  if (kraus.empty()) throw std::invalid_argument("KrausMap: Kraus list must be nonempty");
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (kraus[i].rows() != dim || kraus[i].cols() != dim) {
      std::ostringstream os;
      os << "KrausMap: operator " << i << " has shape " << kraus[i].rows() << "x"
         << kraus[i].cols() << ", expected " << dim << "x" << dim;
      throw std::invalid_argument(os.str());
    }
  }
}

ChoiMatrix::ChoiMatrix(int n, CMat m) : dim(n), matrix(std::move(m)) {
  if (dim < 1) throw std::invalid_argument("ChoiMatrix: dimension must be positive");
  if (matrix.rows() != dim * dim || matrix.cols() != dim * dim) {
    std::ostringstream os;
    os << "ChoiMatrix: matrix has shape " << matrix.rows() << "x" << matrix.cols()
       << ", expected " << dim * dim << "x" << dim * dim;
    throw std::invalid_argument(os.str());
  }
}

KrausMap ad(const CMat& v) {
  if (v.rows() != v.cols())
    throw std::invalid_argument("ad: operator must be square");
  return KrausMap(static_cast<int>(v.rows()), {v});
}

KrausMap identity_map(int n) {
  return ad(CMat::Identity(n, n));
}

CMat apply(const KrausMap& phi, const CMat& x) {
  if (x.rows() != phi.dim || x.cols() != phi.dim) {
    std::ostringstream os;
    os << "apply: argument has shape " << x.rows() << "x" << x.cols()
       << ", expected " << phi.dim << "x" << phi.dim;
    throw std::invalid_argument(os.str());
  }
  CMat out = CMat::Zero(phi.dim, phi.dim);
  for (const CMat& v : phi.kraus) out += v * x * v.adjoint();
  return out;
}

ChoiMatrix to_choi(const KrausMap& phi) {
  const int n2 = phi.dim * phi.dim;
  CMat c = CMat::Zero(n2, n2);
  // Block (i,j) = Phi(e_ij) is the same as summing vec outer products.
  for (const CMat& v : phi.kraus) {
    const CVec w = vec(v);
    c += w * w.adjoint();
  }
  return ChoiMatrix(phi.dim, std::move(c));
}

KrausMap kraus_from_choi(const ChoiMatrix& c, double tol) {
  const int n = c.dim;
  const double herm = (c.matrix - c.matrix.adjoint()).norm();
  if (herm > tol * std::max(1.0, c.matrix.norm())) {
    std::ostringstream os;
    os << "kraus_from_choi: Choi matrix not Hermitian (defect " << herm << ")";
    throw std::invalid_argument(os.str());
  }
  const SpectralDecomposition eig = hermitian_eig(c.matrix, tol);
  const Eigen::Index n2 = c.matrix.rows();
  const double radius = (n2 > 0) ? std::max(std::abs(eig.eigenvalues(0)),
                                            std::abs(eig.eigenvalues(n2 - 1)))
                                 : 0.0;
  if (n2 > 0 && eig.eigenvalues(n2 - 1) < -tol * std::max(1.0, radius)) {
    std::ostringstream os;
    os << "kraus_from_choi: Choi matrix not PSD, map is not completely positive "
       << "(min eigenvalue " << eig.eigenvalues(n2 - 1) << ")";
    throw std::invalid_argument(os.str());
  }

  const double trace = c.matrix.trace().real();
  const double cutoff = tol * std::max(1.0, trace);

  struct Entry {
    double eigenvalue;
    CMat op;
  };
  std::vector<Entry> entries;
  for (Eigen::Index k = 0; k < n2; ++k) {
    if (eig.eigenvalues(k) <= cutoff) continue;
    const double root = std::sqrt(eig.eigenvalues(k));
    CMat op = root * unvec(eig.eigenvectors.col(k), n);
    fix_operator_phase(op, root);
    entries.push_back({eig.eigenvalues(k), std::move(op)});
  }
  if (entries.empty()) {
    // Zero map has no Kraus form with a nonempty operator list; represent
    // it by a single zero operator, flagged non-canonical.
    return KrausMap(n, {CMat::Zero(n, n)}, false);
  }

  const double cluster_gap = tol * std::max(1.0, radius);
  std::stable_sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    if (std::abs(a.eigenvalue - b.eigenvalue) >= cluster_gap)
      return a.eigenvalue > b.eigenvalue;
    return lex_less(a.op, b.op);
  });

  std::vector<CMat> ops;
  ops.reserve(entries.size());
  for (Entry& e : entries) ops.push_back(std::move(e.op));
  return KrausMap(n, std::move(ops), true);
}

std::size_t size(const KrausMap& phi, double tol) {
  return kraus_from_choi(to_choi(phi), tol).kraus.size();
}

ChannelFlags classify(const KrausMap& phi, double tol) {
  const int n = phi.dim;
  ChannelFlags flags;

  CMat sum_vv = CMat::Zero(n, n);
  CMat sum_vsv = CMat::Zero(n, n);
  for (const CMat& v : phi.kraus) {
    sum_vv += v * v.adjoint();
    sum_vsv += v.adjoint() * v;
  }
  flags.unital_defect = (sum_vv - CMat::Identity(n, n)).norm();
  flags.trace_defect = (sum_vsv - CMat::Identity(n, n)).norm();
  flags.unital = flags.unital_defect <= tol;
  flags.trace_preserving = flags.trace_defect <= tol;

  const ChoiMatrix choi = to_choi(phi);
  const PsdReport psd = is_psd(choi.matrix, tol);
  flags.choi_min_eigenvalue = psd.min_eigenvalue;
  flags.cp = psd.psd;
  if (flags.cp) flags.size = kraus_from_choi(choi, tol).kraus.size();
  flags.automorphism = flags.cp && flags.unital && flags.size == 1;
  return flags;
}

double map_distance(const KrausMap& phi, const KrausMap& psi) {
  require_same_dim(phi, psi, "map_distance");
  return frobenius_distance(to_choi(phi).matrix, to_choi(psi).matrix);
}

KrausMap compose(const KrausMap& outer, const KrausMap& inner) {
  require_same_dim(outer, inner, "compose");
  std::vector<CMat> ops;
  ops.reserve(outer.kraus.size() * inner.kraus.size());
  for (const CMat& a : outer.kraus)
    for (const CMat& b : inner.kraus) ops.push_back(a * b);
  return KrausMap(outer.dim, std::move(ops));
}

KrausMap canonicalize(const KrausMap& phi, double tol) {
  return kraus_from_choi(to_choi(phi), tol);
}

KrausMap scale_map(const KrausMap& phi, double factor) {
  if (factor < 0.0)
    throw std::invalid_argument("scale_map: factor must be nonnegative");
  const double root = std::sqrt(factor);
  std::vector<CMat> ops;
  ops.reserve(phi.kraus.size());
  for (const CMat& v : phi.kraus) ops.push_back(root * v);
  return KrausMap(phi.dim, std::move(ops));
}

}  // namespace opconvex
