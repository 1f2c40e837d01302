#include "opconvex/extremality.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <random>
#include <utility>

namespace opconvex {

namespace {

CVec vec(const CMat& v) { return Eigen::Map<const CVec>(v.data(), v.size()); }

void require_ucp(const ChannelFlags& flags, const char* role) {
  if (!flags.cp || !flags.unital) {
    throw std::invalid_argument(std::string(role) +
                                " must be unital and completely positive (unital defect " +
                                std::to_string(flags.unital_defect) + ", Choi min eigenvalue " +
                                std::to_string(flags.choi_min_eigenvalue) + ")");
  }
}

}  // namespace

ExtremalityCertificate usual_extreme_check(const KrausMap& phi, double tol) {
  require_ucp(classify(phi, tol), "subject");

  KrausMap canon = canonicalize(phi, tol);
  const int n = canon.dim;
  const Eigen::Index m = static_cast<Eigen::Index>(canon.kraus.size());

  CMat stacked(static_cast<Eigen::Index>(n) * n, m * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      CMat prod = canon.kraus[static_cast<std::size_t>(i)] *
                  canon.kraus[static_cast<std::size_t>(j)].adjoint();
      stacked.col(i * m + j) = vec(prod);
    }
  }

  Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeFullV);
  const RVec& sigma = svd.singularValues();
  const double top = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cutoff = tol * std::max(1.0, top);
  const Eigen::Index rank = (sigma.array() > cutoff).count();
  const double min_sigma = sigma.size() == m * m ? sigma(sigma.size() - 1) : 0.0;

  ExtremalityCertificate cert{rank == m * m ? CertKind::UsualExtreme : CertKind::NotUsualExtreme,
                              std::move(canon)};
  cert.residuals["product_count"] = static_cast<double>(m * m);
  cert.residuals["product_rank"] = static_cast<double>(rank);
  cert.residuals["max_singular_value"] = top;
  cert.residuals["min_singular_value"] = min_sigma;
  if (cert.kind == CertKind::NotUsualExtreme) {
    CVec dependence = svd.matrixV().col(m * m - 1);
    cert.residuals["dependence_residual"] = (stacked * dependence).norm();
    cert.dependence = std::move(dependence);
  }
  return cert;
}

ExtremalityCertificate certify_thm37(const KrausMap& theta, const DecompositionWitness& w,
                                     double tol) {
  ChannelFlags flags = classify(theta, tol);
  if (!flags.automorphism) {
    throw std::invalid_argument("subject must be an automorphism (size " +
                                std::to_string(flags.size) + ", unital defect " +
                                std::to_string(flags.unital_defect) + ")");
  }
  WitnessVerdict verdict = validate_witness(theta, w, tol);
  if (!verdict.valid) {
    throw std::invalid_argument(
        "witness is not a valid operational decomposition of the subject (reconstruction " +
        std::to_string(verdict.residuals.reconstruction) + ")");
  }

  const int n = theta.dim;
  const CMat u = canonicalize(theta, tol).kraus.front();
  const double lam = (w.a * w.a.adjoint()).trace().real() / n;

  std::map<std::string, double> residuals;
  residuals["reconstruction"] = verdict.residuals.reconstruction;
  residuals["aa_scalar"] = verdict.residuals.aa_scalar;
  residuals["bb_scalar"] = verdict.residuals.bb_scalar;
  if (verdict.residuals.aa_scalar > tol || verdict.residuals.bb_scalar > tol) {
    throw TheoremAnomalyError("coefficient Gram matrices of a valid automorphism witness are not scalar",
                              std::move(residuals));
  }
  if (!(lam > tol && lam < 1.0 - tol)) {
    residuals["lambda"] = lam;
    throw TheoremAnomalyError("decomposition weight is degenerate", std::move(residuals));
  }

  CMat u_a = w.a / std::sqrt(lam);
  CMat u_b = w.b / std::sqrt(1.0 - lam);
  residuals["u_a_unitarity"] = unitarity_defect(u_a);
  residuals["u_b_unitarity"] = unitarity_defect(u_b);
  if (residuals["u_a_unitarity"] > tol || residuals["u_b_unitarity"] > tol) {
    throw TheoremAnomalyError("normalized coefficients are not unitary", std::move(residuals));
  }

  residuals["phi1_match"] = map_distance(w.phi1, ad(CMat(u_a.adjoint() * u)));
  residuals["phi2_match"] = map_distance(w.phi2, ad(CMat(u_b.adjoint() * u)));
  if (residuals["phi1_match"] > tol || residuals["phi2_match"] > tol) {
    throw TheoremAnomalyError("inner maps deviate from the unitary form forced by the subject",
                              std::move(residuals));
  }

  ExtremalityCertificate cert{CertKind::Thm37Certified, theta};
  cert.witness = w;
  cert.thm37 = Thm37Evidence{lam, std::move(u_a), std::move(u_b), u};
  cert.residuals = std::move(residuals);
  return cert;
}

namespace {

CMat draw_unitary_or_identity(int n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  if (coin(rng)) return CMat::Identity(n, n);
  return random_unitary(n, rng);
}

KrausMap draw_inner_map(const KrausMap& phi, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  switch (pick(rng)) {
    case 0:
      return identity_map(phi.dim);
    case 1:
      return ad(random_unitary(phi.dim, rng));
    default:
      return phi;
  }
}

// Conjugates the Choi difference by the inverse of b to recover the second
// inner map; returns nothing when the difference fails to stay completely
// positive, which rules the candidate out before full validation.
std::optional<DecompositionWitness> recover_second_map(const KrausMap& phi, const CMat& a,
                                                       KrausMap phi1, const CMat& b,
                                                       const CMat& b_inv, double tol) {
  const int n = phi.dim;
  CMat delta = to_choi(phi).matrix - to_choi(compose(ad(a), phi1)).matrix;
  CMat lift = kron(CMat::Identity(n, n), b_inv);
  CMat choi2 = lift * delta * lift.adjoint();
  choi2 = (0.5 * (choi2 + choi2.adjoint())).eval();
  if (!is_psd(choi2, tol).psd) return std::nullopt;
  KrausMap phi2 = kraus_from_choi(ChoiMatrix(n, std::move(choi2)), tol);
  return DecompositionWitness{a, std::move(phi1), b, std::move(phi2)};
}

std::optional<DecompositionWitness> projection_candidate(const KrausMap& phi,
                                                         std::mt19937_64& rng) {
  const int n = phi.dim;
  std::bernoulli_distribution coin(0.5);
  std::vector<int> mask(static_cast<std::size_t>(n), 0);
  bool proper = false;
  for (int attempt = 0; attempt < 64 && !proper; ++attempt) {
    int count = 0;
    for (auto& bit : mask) {
      bit = coin(rng) ? 1 : 0;
      count += bit;
    }
    proper = count > 0 && count < n;
  }
  if (!proper) {
    mask.assign(static_cast<std::size_t>(n), 0);
    mask[0] = 1;
  }
  CMat p = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    if (mask[static_cast<std::size_t>(k)]) p(k, k) = 1.0;
  }
  CMat u1 = draw_unitary_or_identity(n, rng);
  CMat u2 = draw_unitary_or_identity(n, rng);
  return DecompositionWitness{p * u1, draw_inner_map(phi, rng),
                              (CMat::Identity(n, n) - p) * u2, draw_inner_map(phi, rng)};
}

std::optional<DecompositionWitness> scaled_unitary_candidate(const KrausMap& phi,
                                                             std::mt19937_64& rng, double tol) {
  const int n = phi.dim;
  std::uniform_real_distribution<double> weight(0.05, 0.95);
  const double lam = weight(rng);
  CMat u1 = draw_unitary_or_identity(n, rng);
  CMat u2 = draw_unitary_or_identity(n, rng);
  CMat a = std::sqrt(lam) * u1;
  CMat b = std::sqrt(1.0 - lam) * u2;
  CMat b_inv = u2.adjoint() / std::sqrt(1.0 - lam);
  return recover_second_map(phi, a, draw_inner_map(phi, rng), b, b_inv, tol);
}

std::optional<DecompositionWitness> polar_candidate(const KrausMap& phi, std::mt19937_64& rng,
                                                    double tol) {
  const int n = phi.dim;
  CMat q = random_unitary(n, rng);
  std::uniform_real_distribution<double> weight(0.1, 0.9);
  CVec d(n);
  for (int k = 0; k < n; ++k) d(k) = Complex(weight(rng), 0.0);
  CMat h = q * d.asDiagonal() * q.adjoint();
  h = (0.5 * (h + h.adjoint())).eval();

  CMat a = h * draw_unitary_or_identity(n, rng);
  CMat complement = CMat::Identity(n, n) - h * h;
  complement = (0.5 * (complement + complement.adjoint())).eval();
  CMat b = psd_sqrt(complement, tol);
  CMat b_inv = b.inverse();
  return recover_second_map(phi, a, draw_inner_map(phi, rng), b, b_inv, tol);
}

}  // namespace

RefutationSearchResult search_refuting_witness(const KrausMap& phi, std::size_t budget,
                                               std::uint64_t seed, double tol) {
  require_ucp(classify(phi, tol), "search subject");

  std::mt19937_64 rng(seed);
  RefutationSearchResult result;
  result.log.seed = seed;
  result.log.budget = budget;
  result.log.trials.reserve(budget);

  static constexpr const char* kFamilies[] = {"projection", "scaled-unitary", "polar"};
  for (std::size_t t = 0; t < budget; ++t) {
    const std::size_t family = t % 3;
    std::optional<DecompositionWitness> candidate;
    switch (family) {
      case 0:
        candidate = projection_candidate(phi, rng);
        break;
      case 1:
        candidate = scaled_unitary_candidate(phi, rng, tol);
        break;
      default:
        candidate = polar_candidate(phi, rng, tol);
        break;
    }

    SearchTrial trial;
    trial.index = t;
    trial.family = kFamilies[family];
    result.log.budget_consumed = t + 1;
    if (!candidate) {
      trial.reconstruction = std::numeric_limits<double>::quiet_NaN();
      result.log.trials.push_back(std::move(trial));
      continue;
    }

    trial.candidate_formed = true;
    ++result.log.candidates_formed;
    WitnessVerdict verdict = validate_witness(phi, *candidate, tol);
    trial.valid = verdict.valid;
    trial.trivializing = verdict.valid && verdict.trivializing;
    trial.reconstruction = verdict.residuals.reconstruction;
    if (verdict.valid) ++result.log.valid_count;
    if (trial.trivializing) ++result.log.trivializing_count;
    result.log.trials.push_back(std::move(trial));

    if (verdict.valid && !verdict.trivializing) {
      result.witness = std::move(candidate);
      result.verdict = std::move(verdict);
      break;
    }
  }
  return result;
}

double kadison_schwarz_gap(const KrausMap& phi, const CMat& x, double tol) {
  require_ucp(classify(phi, tol), "map");
  if (x.rows() != phi.dim || x.cols() != phi.dim) {
    throw std::invalid_argument("argument dimension does not match the map");
  }
  CMat quad = opconvex::apply(phi, CMat(x * x.adjoint()));
  CMat image = opconvex::apply(phi, x);
  CMat gap = quad - image * image.adjoint();
  gap = (0.5 * (gap + gap.adjoint())).eval();
  SpectralDecomposition eig = hermitian_eig(gap, tol);
  return eig.eigenvalues(eig.eigenvalues.size() - 1);
}

}  // namespace opconvex
