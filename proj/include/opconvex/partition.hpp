#ifndef OPCONVEX_PARTITION_HPP
#define OPCONVEX_PARTITION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "opconvex/matrix.hpp"

namespace opconvex {

// The three finite-partition-of-unity notions. FOP is the sum condition on
// v v^*, Lindblad on v^* v, Connes-Stormer on PSD members summing to 1.
enum class PartitionKind { Fop, Lindblad, ConnesStormer };

// Finite list of nonzero square matrices of a common dimension. Members are
// kept in the given order and never normalized; verification is read-only.
struct OperationalPartition {
  std::vector<CMat> members;

  explicit OperationalPartition(std::vector<CMat> ms);

  int dim() const { return static_cast<int>(members.front().rows()); }
  std::size_t size() const { return members.size(); }
};

struct MemberViolation {
  std::size_t index = 0;
  std::string reason;
  double value = 0.0;
};

struct PartitionReport {
  PartitionKind kind = PartitionKind::Fop;
  bool passed = false;
  // Frobenius norm of the sum-condition residual.
  double defect = 0.0;
  std::vector<MemberViolation> member_violations;
};

// Passed iff ||sum v_i v_i^* - 1||_F <= tol and every ||v_i||_F > tol.
PartitionReport verify_fop(const OperationalPartition& p, double tol = kDefaultTol);

// Passed iff ||sum v_i^* v_i - 1||_F <= tol and every ||v_i||_F > tol.
PartitionReport verify_lindblad(const OperationalPartition& p, double tol = kDefaultTol);

// Passed iff every member is PSD within tol and ||sum v_i - 1||_F <= tol.
PartitionReport verify_cs(const OperationalPartition& p, double tol = kDefaultTol);

// Size-2 FOP {sqrt(lambda) u v^*, sqrt(1-lambda) u w^*} from unitaries
// u, v, w and lambda strictly inside (0,1).
OperationalPartition bridge_coefficients(const CMat& u, const CMat& v, const CMat& w,
                                         double lambda, double tol = kDefaultTol);

}  // namespace opconvex

#endif
