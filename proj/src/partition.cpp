#include "opconvex/partition.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace opconvex {

namespace {

void check_nonzero_members(const OperationalPartition& p, double tol,
                           PartitionReport& report) {
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    const double norm = p.members[i].norm();
    if (norm <= tol)
      report.member_violations.push_back({i, "member norm below tolerance", norm});
  }
}

}  // namespace

OperationalPartition::OperationalPartition(std::vector<CMat> ms) : members(std::move(ms)) {
  if (members.empty())
    throw std::invalid_argument("OperationalPartition: member list must be nonempty");
  const Eigen::Index n = members.front().rows();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].rows() != members[i].cols()) {
      std::ostringstream os;
      os << "OperationalPartition: member " << i << " is not square ("
         << members[i].rows() << "x" << members[i].cols() << ")";
      throw std::invalid_argument(os.str());
    }
    if (members[i].rows() != n) {
      std::ostringstream os;
      os << "OperationalPartition: member " << i << " has dimension "
         << members[i].rows() << ", expected " << n;
      throw std::invalid_argument(os.str());
    }
  }
}

PartitionReport verify_fop(const OperationalPartition& p, double tol) {
  PartitionReport report;
  report.kind = PartitionKind::Fop;
  const int n = p.dim();
  CMat sum = CMat::Zero(n, n);
  for (const CMat& v : p.members) sum += v * v.adjoint();
  report.defect = (sum - CMat::Identity(n, n)).norm();
  check_nonzero_members(p, tol, report);
  report.passed = report.defect <= tol && report.member_violations.empty();
  return report;
}

PartitionReport verify_lindblad(const OperationalPartition& p, double tol) {
  PartitionReport report;
  report.kind = PartitionKind::Lindblad;
  const int n = p.dim();
  CMat sum = CMat::Zero(n, n);
  for (const CMat& v : p.members) sum += v.adjoint() * v;
  report.defect = (sum - CMat::Identity(n, n)).norm();
  check_nonzero_members(p, tol, report);
  report.passed = report.defect <= tol && report.member_violations.empty();
  return report;
}

PartitionReport verify_cs(const OperationalPartition& p, double tol) {
  PartitionReport report;
  report.kind = PartitionKind::ConnesStormer;
  const int n = p.dim();
  CMat sum = CMat::Zero(n, n);
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    const CMat& v = p.members[i];
    sum += v;
    const double herm = (v - v.adjoint()).norm();
    if (herm > tol * std::max(1.0, v.norm())) {
      report.member_violations.push_back({i, "member not Hermitian", herm});
      continue;
    }
    const PsdReport psd = is_psd(v, tol);
    if (!psd.psd)
      report.member_violations.push_back({i, "member not PSD", psd.min_eigenvalue});
  }
  check_nonzero_members(p, tol, report);
  report.defect = (sum - CMat::Identity(n, n)).norm();
  report.passed = report.defect <= tol && report.member_violations.empty();
  return report;
}

OperationalPartition bridge_coefficients(const CMat& u, const CMat& v, const CMat& w,
                                         double lambda, double tol) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    std::ostringstream os;
    os << "bridge_coefficients: lambda must lie strictly in (0,1), got " << lambda;
    throw std::invalid_argument(os.str());
  }
  const char* names[] = {"u", "v", "w"};
  const CMat* mats[] = {&u, &v, &w};
  for (int k = 0; k < 3; ++k) {
    if (!is_unitary(*mats[k], tol)) {
      std::ostringstream os;
      os << "bridge_coefficients: " << names[k] << " is not unitary (defect "
         << unitarity_defect(*mats[k]) << ")";
      throw std::invalid_argument(os.str());
    }
  }
  if (u.rows() != v.rows() || u.rows() != w.rows())
    throw std::invalid_argument("bridge_coefficients: dimension mismatch among u, v, w");

  std::vector<CMat> members;
  members.push_back(std::sqrt(lambda) * u * v.adjoint());
  members.push_back(std::sqrt(1.0 - lambda) * u * w.adjoint());
  return OperationalPartition(std::move(members));
}

}  // namespace opconvex
