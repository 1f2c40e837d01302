#include "opconvex/io.hpp"

#include <cmath>
#include <fstream>

namespace opconvex::io {

namespace {

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double require_finite_number(const json& j, const char* where) {
  if (!j.is_number()) {
    throw std::invalid_argument(std::string(where) + ": expected a number");
  }
  double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(where) + ": entry is not finite");
  }
  return v;
}

int require_positive_int(const json& j, const char* where) {
  if (!j.is_number_integer()) {
    throw std::invalid_argument(std::string(where) + ": expected an integer");
  }
  auto v = j.get<long long>();
  if (v <= 0 || v > 1 << 20) {
    throw std::invalid_argument(std::string(where) + ": out of range");
  }
  return static_cast<int>(v);
}

const json& require_field(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string(where) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

const char* kind_name(CertKind kind) {
  switch (kind) {
    case CertKind::UsualExtreme:
      return "usual-extreme";
    case CertKind::NotUsualExtreme:
      return "not-usual-extreme";
    case CertKind::Thm37Certified:
      return "thm37-certified";
    case CertKind::RefutedOperational:
      return "refuted-operational";
  }
  return "unknown";
}

const char* kind_name(PartitionKind kind) {
  switch (kind) {
    case PartitionKind::Fop:
      return "fop";
    case PartitionKind::Lindblad:
      return "lindblad";
    case PartitionKind::ConnesStormer:
      return "connes-stormer";
  }
  return "unknown";
}

json complex_vector_to_json(const CVec& v) {
  json data = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    data.push_back({v(k).real(), v(k).imag()});
  }
  return data;
}

}  // namespace

json matrix_to_json(const CMat& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMat matrix_from_json(const json& j) {
  const int rows = require_positive_int(require_field(j, "rows", "matrix"), "matrix rows");
  const int cols = require_positive_int(require_field(j, "cols", "matrix"), "matrix cols");
  const json& data = require_field(j, "data", "matrix");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("matrix data: expected " + std::to_string(rows * cols) +
                                " entries");
  }
  CMat m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      const json& entry = data.at(k);
      if (!entry.is_array() || entry.size() != 2) {
        throw std::invalid_argument("matrix data: entry " + std::to_string(k) +
                                    " is not an [re, im] pair");
      }
      m(r, c) = Complex(require_finite_number(entry.at(0), "matrix data"),
                        require_finite_number(entry.at(1), "matrix data"));
    }
  }
  return m;
}

json partition_to_json(const OperationalPartition& p) {
  json arr = json::array();
  for (const CMat& v : p.members) arr.push_back(matrix_to_json(v));
  return arr;
}

OperationalPartition partition_from_json(const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("partition: expected an array of matrices");
  }
  std::vector<CMat> members;
  members.reserve(j.size());
  for (const json& entry : j) members.push_back(matrix_from_json(entry));
  return OperationalPartition(std::move(members));
}

json channel_to_json(const KrausMap& phi) {
  json kraus = json::array();
  for (const CMat& v : phi.kraus) kraus.push_back(matrix_to_json(v));
  return json{{"dim", phi.dim}, {"kraus", std::move(kraus)}};
}

KrausMap channel_from_json(const json& j) {
  const int dim = require_positive_int(require_field(j, "dim", "channel"), "channel dim");
  const json& kraus = require_field(j, "kraus", "channel");
  if (!kraus.is_array() || kraus.empty()) {
    throw std::invalid_argument("channel kraus: expected a nonempty array of matrices");
  }
  std::vector<CMat> ops;
  ops.reserve(kraus.size());
  for (const json& entry : kraus) ops.push_back(matrix_from_json(entry));
  return KrausMap(dim, std::move(ops));
}

json witness_to_json(const DecompositionWitness& w) {
  return json{{"a", matrix_to_json(w.a)},
              {"phi1", channel_to_json(w.phi1)},
              {"b", matrix_to_json(w.b)},
              {"phi2", channel_to_json(w.phi2)}};
}

DecompositionWitness witness_from_json(const json& j) {
  return DecompositionWitness{matrix_from_json(require_field(j, "a", "witness")),
                              channel_from_json(require_field(j, "phi1", "witness")),
                              matrix_from_json(require_field(j, "b", "witness")),
                              channel_from_json(require_field(j, "phi2", "witness"))};
}

json partition_report_to_json(const PartitionReport& report) {
  json violations = json::array();
  for (const MemberViolation& v : report.member_violations) {
    violations.push_back(
        {{"index", v.index}, {"reason", v.reason}, {"value", finite_or_null(v.value)}});
  }
  return json{{"kind", kind_name(report.kind)},
              {"passed", report.passed},
              {"defect", finite_or_null(report.defect)},
              {"member_violations", std::move(violations)}};
}

json flags_to_json(const ChannelFlags& flags) {
  return json{{"cp", flags.cp},
              {"unital", flags.unital},
              {"trace_preserving", flags.trace_preserving},
              {"automorphism", flags.automorphism},
              {"size", flags.size},
              {"choi_min_eigenvalue", finite_or_null(flags.choi_min_eigenvalue)},
              {"unital_defect", finite_or_null(flags.unital_defect)},
              {"trace_defect", finite_or_null(flags.trace_defect)}};
}

json verdict_to_json(const WitnessVerdict& verdict) {
  json residuals{{"fop_defect", finite_or_null(verdict.residuals.fop_defect)},
                 {"reconstruction", finite_or_null(verdict.residuals.reconstruction)},
                 {"aa_scalar", finite_or_null(verdict.residuals.aa_scalar)},
                 {"bb_scalar", finite_or_null(verdict.residuals.bb_scalar)},
                 {"proportionality", finite_or_null(verdict.residuals.proportionality)}};
  json out{{"valid", verdict.valid},
           {"trivializing", verdict.trivializing},
           {"phi1_ucp", verdict.phi1_ucp},
           {"phi2_ucp", verdict.phi2_ucp},
           {"residuals", std::move(residuals)}};
  out["lambda"] = verdict.lambda ? json(finite_or_null(*verdict.lambda)) : json(nullptr);
  return out;
}

json certificate_to_json(const ExtremalityCertificate& cert) {
  json residuals = json::object();
  for (const auto& [key, value] : cert.residuals) residuals[key] = finite_or_null(value);
  json out{{"kind", kind_name(cert.kind)},
           {"subject", channel_to_json(cert.subject)},
           {"residuals", std::move(residuals)}};
  if (cert.witness) out["witness"] = witness_to_json(*cert.witness);
  if (cert.dependence) out["dependence"] = complex_vector_to_json(*cert.dependence);
  if (cert.thm37) {
    out["thm37"] = json{{"lambda", cert.thm37->lambda},
                        {"u_a", matrix_to_json(cert.thm37->u_a)},
                        {"u_b", matrix_to_json(cert.thm37->u_b)},
                        {"u", matrix_to_json(cert.thm37->u)}};
  }
  return out;
}

json search_result_to_json(const RefutationSearchResult& result) {
  json trials = json::array();
  for (const SearchTrial& t : result.log.trials) {
    trials.push_back({{"index", t.index},
                      {"family", t.family},
                      {"candidate_formed", t.candidate_formed},
                      {"valid", t.valid},
                      {"trivializing", t.trivializing},
                      {"reconstruction", finite_or_null(t.reconstruction)}});
  }
  json out{{"found", result.witness.has_value()},
           {"seed", result.log.seed},
           {"budget", result.log.budget},
           {"budget_consumed", result.log.budget_consumed},
           {"candidates_formed", result.log.candidates_formed},
           {"valid_count", result.log.valid_count},
           {"trivializing_count", result.log.trivializing_count},
           {"trials", std::move(trials)}};
  if (result.witness) {
    out["kind"] = kind_name(CertKind::RefutedOperational);
    out["witness"] = witness_to_json(*result.witness);
  }
  if (result.verdict) out["verdict"] = verdict_to_json(*result.verdict);
  return out;
}

json repro_report_to_json(const ReproReport& report) {
  json steps = json::array();
  for (const ReproStep& s : report.steps) {
    steps.push_back({{"description", s.description},
                     {"residual", finite_or_null(s.residual)},
                     {"passed", s.passed}});
  }
  return json{{"scenario", report.scenario},
              {"seed", report.seed},
              {"tol", report.tol},
              {"overall", report.overall},
              {"steps", std::move(steps)}};
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read file: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + err.what());
  }
}

}  // namespace opconvex::io
