#ifndef OPCONVEX_COMBINE_HPP
#define OPCONVEX_COMBINE_HPP

#include <optional>
#include <vector>

#include "opconvex/channel.hpp"
#include "opconvex/partition.hpp"

namespace opconvex {

// A claimed two-term operational decomposition
//   target = Ad a . phi1 + Ad b . phi2   with {a, b} an FOP.
struct DecompositionWitness {
  CMat a;
  KrausMap phi1;
  CMat b;
  KrausMap phi2;
};

struct WitnessResiduals {
  double fop_defect = 0.0;
  double reconstruction = 0.0;
  // ||aa^* - lambda 1|| and ||bb^* - (1-lambda) 1|| for lambda = tr(aa^*)/n.
  double aa_scalar = 0.0;
  double bb_scalar = 0.0;
  // map distance of lambda^{-1} Ad a . phi1 to the target; NaN when the
  // scaling was not evaluable (lambda at the ends of (0,1)).
  double proportionality = 0.0;
};

struct WitnessVerdict {
  bool valid = false;
  bool trivializing = false;
  // Present exactly when the trivialization checks were evaluable, i.e. the
  // witness is valid and tr(aa^*)/n lies strictly inside (0,1).
  std::optional<double> lambda;
  bool phi1_ucp = false;
  bool phi2_ucp = false;
  WitnessResiduals residuals;
};

// sum_i Ad v_i . Phi_i for a verified FOP {v_i}. Kraus list is the
// concatenation of the products v_i * w over w in kraus(Phi_i).
KrausMap op_convex_combine(const OperationalPartition& coeffs,
                           const std::vector<KrausMap>& maps,
                           double tol = kDefaultTol);

// valid: {a,b} is an FOP, phi1 and phi2 are ucp, and the decomposition
// reconstructs the target within tol. trivializing: additionally aa^* and
// bb^* are the scalars lambda, 1-lambda and lambda^{-1} Ad a . phi1 equals
// the target. All residuals are reported either way.
WitnessVerdict validate_witness(const KrausMap& target, const DecompositionWitness& w,
                                double tol = kDefaultTol);

// The ordinary convex combination lambda phi1 + (1-lambda) phi2 expressed
// as a witness with scalar coefficients sqrt(lambda) 1, sqrt(1-lambda) 1.
DecompositionWitness scalar_witness(double lambda, const KrausMap& phi1,
                                    const KrausMap& phi2);

}  // namespace opconvex

#endif
