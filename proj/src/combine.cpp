#include "opconvex/combine.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace opconvex {

KrausMap op_convex_combine(const OperationalPartition& coeffs,
                           const std::vector<KrausMap>& maps, double tol) {
  if (coeffs.size() != maps.size()) {
    std::ostringstream os;
    os << "op_convex_combine: " << coeffs.size() << " coefficients vs "
       << maps.size() << " maps";
    throw std::invalid_argument(os.str());
  }
  const int n = coeffs.dim();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].dim != n) {
      std::ostringstream os;
      os << "op_convex_combine: map " << i << " has dimension " << maps[i].dim
         << ", expected " << n;
      throw std::invalid_argument(os.str());
    }
  }
  const PartitionReport fop = verify_fop(coeffs, tol);
  if (!fop.passed) {
    std::ostringstream os;
    os << "op_convex_combine: coefficients are not an operational partition of unity "
       << "(defect " << fop.defect << ", " << fop.member_violations.size()
       << " member violations)";
    throw std::invalid_argument(os.str());
  }

  std::vector<CMat> ops;
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (const CMat& w : maps[i].kraus) ops.push_back(coeffs.members[i] * w);
  return KrausMap(n, std::move(ops));
}

WitnessVerdict validate_witness(const KrausMap& target, const DecompositionWitness& w,
                                double tol) {
  const int n = target.dim;
  if (w.phi1.dim != n || w.phi2.dim != n || w.a.rows() != n || w.a.cols() != n ||
      w.b.rows() != n || w.b.cols() != n)
    throw std::invalid_argument("validate_witness: dimension mismatch with target");

  WitnessVerdict verdict;

  const OperationalPartition coeffs({w.a, w.b});
  const PartitionReport fop = verify_fop(coeffs, tol);
  verdict.residuals.fop_defect = fop.defect;

  const ChannelFlags f1 = classify(w.phi1, tol);
  const ChannelFlags f2 = classify(w.phi2, tol);
  verdict.phi1_ucp = f1.cp && f1.unital;
  verdict.phi2_ucp = f2.cp && f2.unital;

  // Reconstruction Ad a . phi1 + Ad b . phi2, Kraus concatenation.
  std::vector<CMat> ops;
  for (const CMat& v : w.phi1.kraus) ops.push_back(w.a * v);
  for (const CMat& v : w.phi2.kraus) ops.push_back(w.b * v);
  const KrausMap reconstruction(n, std::move(ops));
  verdict.residuals.reconstruction = map_distance(reconstruction, target);

  verdict.valid = fop.passed && verdict.phi1_ucp && verdict.phi2_ucp &&
                  verdict.residuals.reconstruction <= tol;

  const CMat aa = w.a * w.a.adjoint();
  const CMat bb = w.b * w.b.adjoint();
  const double lam = aa.trace().real() / n;
  const CMat eye = CMat::Identity(n, n);
  verdict.residuals.aa_scalar = (aa - lam * eye).norm();
  verdict.residuals.bb_scalar = (bb - (1.0 - lam) * eye).norm();

  const bool evaluable = verdict.valid && lam > tol && lam < 1.0 - tol;
  if (evaluable) {
    verdict.lambda = lam;
    const KrausMap left_part = scale_map(compose(ad(w.a), w.phi1), 1.0 / lam);
    verdict.residuals.proportionality = map_distance(left_part, target);
    verdict.trivializing = verdict.residuals.aa_scalar <= tol &&
                           verdict.residuals.bb_scalar <= tol &&
                           verdict.residuals.proportionality <= tol;
  } else {
    verdict.residuals.proportionality = std::numeric_limits<double>::quiet_NaN();
    verdict.trivializing = false;
  }
  return verdict;
}

DecompositionWitness scalar_witness(double lambda, const KrausMap& phi1,
                                    const KrausMap& phi2) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    std::ostringstream os;
    os << "scalar_witness: lambda must lie strictly in (0,1), got " << lambda;
    throw std::invalid_argument(os.str());
  }
  if (phi1.dim != phi2.dim)
    throw std::invalid_argument("scalar_witness: maps have different dimensions");
  const int n = phi1.dim;
  const CMat eye = CMat::Identity(n, n);
  return DecompositionWitness{std::sqrt(lambda) * eye, phi1,
                              std::sqrt(1.0 - lambda) * eye, phi2};
}

}  // namespace opconvex
