#ifndef OPCONVEX_EXTREMALITY_HPP
#define OPCONVEX_EXTREMALITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "opconvex/combine.hpp"

namespace opconvex {

enum class CertKind {
  UsualExtreme,
  NotUsualExtreme,
  Thm37Certified,
  RefutedOperational,
};

// Recovered data of an automorphism decomposition: the coefficients are
// sqrt(lambda) u_a, sqrt(1-lambda) u_b and the inner maps are
// Ad(u_a^* u), Ad(u_b^* u) for the subject Ad u.
struct Thm37Evidence {
  double lambda = 0.0;
  CMat u_a;
  CMat u_b;
  CMat u;
};

struct ExtremalityCertificate {
  CertKind kind;
  KrausMap subject;
  std::optional<DecompositionWitness> witness;
  // Coefficients c with sum_ij c(i*m+j) v_i v_j^* = 0 over the canonical
  // Kraus operators, present for NotUsualExtreme.
  std::optional<CVec> dependence;
  std::optional<Thm37Evidence> thm37;
  std::map<std::string, double> residuals;
};

// Raised when an automorphism decomposition fails one of the certified
// identities; with exact inputs this indicates a numerical or input
// anomaly, never a counterexample.
class TheoremAnomalyError : public std::runtime_error {
 public:
  TheoremAnomalyError(const std::string& what, std::map<std::string, double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::map<std::string, double>& residuals() const { return residuals_; }

 private:
  std::map<std::string, double> residuals_;
};

// Extremality of a ucp map in the usual sense, decided by the linear
// independence of the products v_i v_j^* of its canonical Kraus operators.
ExtremalityCertificate usual_extreme_check(const KrausMap& phi, double tol = kDefaultTol);

// Certifies the automorphism-decomposition identities for a valid witness of
// an automorphism subject: scalar coefficient Gram matrices, unitary
// coefficient factors, and the recovered inner maps. Precondition failures
// throw std::invalid_argument; identity failures throw TheoremAnomalyError.
ExtremalityCertificate certify_thm37(const KrausMap& theta, const DecompositionWitness& w,
                                     double tol = kDefaultTol);

struct SearchTrial {
  std::size_t index = 0;
  std::string family;
  bool candidate_formed = false;
  bool valid = false;
  bool trivializing = false;
  // NaN when no candidate witness was formed.
  double reconstruction = 0.0;
};

struct SearchLog {
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t budget_consumed = 0;
  std::size_t candidates_formed = 0;
  std::size_t valid_count = 0;
  std::size_t trivializing_count = 0;
  std::vector<SearchTrial> trials;
};

struct RefutationSearchResult {
  std::optional<DecompositionWitness> witness;
  std::optional<WitnessVerdict> verdict;
  SearchLog log;
};

// Randomized search for a valid, non-trivializing decomposition of a ucp
// map. Sound: any returned witness passes validate_witness with valid and
// not trivializing. Incomplete: exhausting the budget proves nothing.
// Deterministic for a fixed seed. Candidate families rotate per trial:
// complementary diagonal projections, scaled unitaries with the second map
// recovered by inverting the coefficient, and polar-form PSD coefficients
// with the same recovery.
RefutationSearchResult search_refuting_witness(const KrausMap& phi, std::size_t budget,
                                               std::uint64_t seed, double tol = kDefaultTol);

// Minimum eigenvalue of Phi(x x^*) - Phi(x) Phi(x)^*; nonnegative up to
// tolerance for every ucp map.
double kadison_schwarz_gap(const KrausMap& phi, const CMat& x, double tol = kDefaultTol);

}  // namespace opconvex

#endif
