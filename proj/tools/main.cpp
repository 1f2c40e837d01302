#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "opconvex/io.hpp"

namespace oc = opconvex;
using oc::io::json;

namespace {

struct Global {
  double tol = oc::kDefaultTol;
  std::uint64_t seed = 0;
  std::size_t budget = 500;
  bool json_out = false;
};

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

const char* yesno(bool b) { return b ? "yes" : "no"; }

void print_matrix(const oc::CMat& m, const std::string& indent = "  ") {
  Eigen::IOFormat fmt(Eigen::FullPrecision, 0, "  ", "\n" + indent, "", "", "", "");
  std::cout << indent << m.format(fmt) << '\n';
}

void print_channel(const oc::KrausMap& phi) {
  std::cout << "dim: " << phi.dim << "\nkraus operators: " << phi.kraus.size() << '\n';
  for (std::size_t k = 0; k < phi.kraus.size(); ++k) {
    std::cout << "operator " << k + 1 << ":\n";
    print_matrix(phi.kraus[k]);
  }
}

void print_residuals(const std::map<std::string, double>& residuals) {
  for (const auto& [key, value] : residuals) {
    std::cout << "  " << key << ": " << value << '\n';
  }
}

void print_partition_report(const oc::PartitionReport& report, bool json_out) {
  if (json_out) {
    print_json(oc::io::partition_report_to_json(report));
    return;
  }
  const char* label = report.kind == oc::PartitionKind::Fop        ? "fop"
                      : report.kind == oc::PartitionKind::Lindblad ? "lindblad"
                                                                   : "connes-stormer";
  std::cout << label << " check: " << (report.passed ? "PASS" : "FAIL") << '\n'
            << "defect: " << report.defect << '\n';
  if (report.member_violations.empty()) {
    std::cout << "member violations: none\n";
  } else {
    std::cout << "member violations:\n";
    for (const auto& v : report.member_violations) {
      std::cout << "  member " << v.index << ": " << v.reason << " (" << v.value << ")\n";
    }
  }
}

void print_verdict(const oc::WitnessVerdict& verdict, bool json_out) {
  if (json_out) {
    print_json(oc::io::verdict_to_json(verdict));
    return;
  }
  std::cout << "valid: " << yesno(verdict.valid) << '\n'
            << "trivializing: " << yesno(verdict.trivializing) << '\n';
  if (verdict.lambda) {
    std::cout << "lambda: " << *verdict.lambda << '\n';
  } else {
    std::cout << "lambda: n/a\n";
  }
  std::cout << "phi1 ucp: " << yesno(verdict.phi1_ucp) << '\n'
            << "phi2 ucp: " << yesno(verdict.phi2_ucp) << '\n'
            << "residuals:\n"
            << "  fop_defect: " << verdict.residuals.fop_defect << '\n'
            << "  reconstruction: " << verdict.residuals.reconstruction << '\n'
            << "  aa_scalar: " << verdict.residuals.aa_scalar << '\n'
            << "  bb_scalar: " << verdict.residuals.bb_scalar << '\n'
            << "  proportionality: " << verdict.residuals.proportionality << '\n';
}

void print_certificate(const oc::ExtremalityCertificate& cert, bool json_out) {
  if (json_out) {
    print_json(oc::io::certificate_to_json(cert));
    return;
  }
  const char* label = cert.kind == oc::CertKind::UsualExtreme      ? "usual-extreme"
                      : cert.kind == oc::CertKind::NotUsualExtreme ? "not-usual-extreme"
                      : cert.kind == oc::CertKind::Thm37Certified  ? "thm37-certified"
                                                                   : "refuted-operational";
  std::cout << "kind: " << label << '\n';
  std::cout << "residuals:\n";
  print_residuals(cert.residuals);
  if (cert.thm37) {
    std::cout << "lambda: " << cert.thm37->lambda << '\n';
    std::cout << "u_a:\n";
    print_matrix(cert.thm37->u_a);
    std::cout << "u_b:\n";
    print_matrix(cert.thm37->u_b);
    std::cout << "u:\n";
    print_matrix(cert.thm37->u);
  }
  if (cert.dependence) {
    std::cout << "dependence coefficients over canonical kraus products (i*m+j):\n";
    for (Eigen::Index k = 0; k < cert.dependence->size(); ++k) {
      const oc::Complex c = (*cert.dependence)(k);
      std::cout << "  [" << k << "] " << c.real() << (c.imag() < 0 ? " - " : " + ")
                << std::abs(c.imag()) << "i\n";
    }
  }
}

oc::KrausMap load_channel(const std::string& path) {
  return oc::io::channel_from_json(oc::io::parse_file(path));
}

int cmd_verify(const std::string& path, oc::PartitionKind kind, const Global& g) {
  oc::OperationalPartition p = oc::io::partition_from_json(oc::io::parse_file(path));
  oc::PartitionReport report = kind == oc::PartitionKind::Fop ? oc::verify_fop(p, g.tol)
                               : kind == oc::PartitionKind::Lindblad
                                   ? oc::verify_lindblad(p, g.tol)
                                   : oc::verify_cs(p, g.tol);
  print_partition_report(report, g.json_out);
  return report.passed ? 0 : 1;
}

int cmd_choi(const std::string& path, const Global& g) {
  oc::ChoiMatrix choi = oc::to_choi(load_channel(path));
  if (g.json_out) {
    print_json(oc::io::matrix_to_json(choi.matrix));
  } else {
    std::cout << "choi matrix (dim " << choi.dim << "):\n";
    print_matrix(choi.matrix);
  }
  return 0;
}

int cmd_kraus(const std::string& path, const Global& g) {
  oc::CMat m = oc::io::matrix_from_json(oc::io::parse_file(path));
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("choi matrix must be square");
  }
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m.rows()))));
  if (static_cast<Eigen::Index>(n) * n != m.rows()) {
    throw std::invalid_argument("choi matrix side must be a perfect square");
  }
  oc::KrausMap phi = oc::kraus_from_choi(oc::ChoiMatrix(n, std::move(m)), g.tol);
  if (g.json_out) {
    print_json(oc::io::channel_to_json(phi));
  } else {
    print_channel(phi);
  }
  return 0;
}

int cmd_classify(const std::string& path, const Global& g) {
  oc::ChannelFlags flags = oc::classify(load_channel(path), g.tol);
  if (g.json_out) {
    print_json(oc::io::flags_to_json(flags));
  } else {
    std::cout << "cp: " << yesno(flags.cp) << '\n'
              << "unital: " << yesno(flags.unital) << '\n'
              << "trace_preserving: " << yesno(flags.trace_preserving) << '\n'
              << "automorphism: " << yesno(flags.automorphism) << '\n'
              << "size: " << flags.size << '\n'
              << "choi_min_eigenvalue: " << flags.choi_min_eigenvalue << '\n'
              << "unital_defect: " << flags.unital_defect << '\n'
              << "trace_defect: " << flags.trace_defect << '\n';
  }
  return 0;
}

int cmd_size(const std::string& path, const Global& g) {
  std::size_t s = oc::size(load_channel(path), g.tol);
  if (g.json_out) {
    print_json(json{{"size", s}});
  } else {
    std::cout << "size: " << s << '\n';
  }
  return 0;
}

int cmd_combine(const std::string& coeff_path, const std::vector<std::string>& map_paths,
                const Global& g) {
  oc::OperationalPartition coeffs =
      oc::io::partition_from_json(oc::io::parse_file(coeff_path));
  std::vector<oc::KrausMap> maps;
  maps.reserve(map_paths.size());
  for (const std::string& path : map_paths) maps.push_back(load_channel(path));
  oc::KrausMap combined = oc::op_convex_combine(coeffs, maps, g.tol);
  if (g.json_out) {
    print_json(oc::io::channel_to_json(combined));
  } else {
    print_channel(combined);
  }
  return 0;
}

int cmd_validate_witness(const std::string& target_path, const std::string& witness_path,
                         const Global& g) {
  oc::KrausMap target = load_channel(target_path);
  oc::DecompositionWitness w = oc::io::witness_from_json(oc::io::parse_file(witness_path));
  oc::WitnessVerdict verdict = oc::validate_witness(target, w, g.tol);
  print_verdict(verdict, g.json_out);
  return verdict.valid ? 0 : 1;
}

int cmd_certify(const std::string& target_path, const std::string& witness_path,
                const Global& g) {
  oc::KrausMap target = load_channel(target_path);
  oc::DecompositionWitness w = oc::io::witness_from_json(oc::io::parse_file(witness_path));
  oc::ExtremalityCertificate cert = oc::certify_thm37(target, w, g.tol);
  print_certificate(cert, g.json_out);
  return 0;
}

int cmd_extreme_check(const std::string& path, const Global& g) {
  oc::ExtremalityCertificate cert = oc::usual_extreme_check(load_channel(path), g.tol);
  print_certificate(cert, g.json_out);
  return cert.kind == oc::CertKind::UsualExtreme ? 0 : 1;
}

int cmd_refute(const std::string& path, const Global& g) {
  oc::KrausMap phi = load_channel(path);
  oc::RefutationSearchResult result = oc::search_refuting_witness(phi, g.budget, g.seed, g.tol);
  if (g.json_out) {
    print_json(oc::io::search_result_to_json(result));
    return result.witness ? 0 : 1;
  }
  if (result.witness) {
    std::cout << "REFUTED: valid non-trivializing witness found after "
              << result.log.budget_consumed << " of " << result.log.budget << " trials\n"
              << "reconstruction: " << result.verdict->residuals.reconstruction << '\n'
              << "aa_scalar: " << result.verdict->residuals.aa_scalar << '\n'
              << "bb_scalar: " << result.verdict->residuals.bb_scalar << '\n'
              << "coefficient a:\n";
    print_matrix(result.witness->a);
    std::cout << "coefficient b:\n";
    print_matrix(result.witness->b);
    std::cout << "(re-run with --json for the full witness)\n";
    return 0;
  }
  std::cout << "NO WITNESS FOUND (inconclusive): exhausted budget " << result.log.budget
            << " (" << result.log.valid_count << " valid candidates, "
            << result.log.trivializing_count << " trivializing)\n";
  if (oc::classify(phi, g.tol).automorphism) {
    std::cout << "note: subject is an automorphism; every valid two-term decomposition "
                 "trivializes, so no refuting witness exists\n";
  }
  return 1;
}

int cmd_ks_gap(const std::string& channel_path, const std::string& matrix_path,
               const Global& g) {
  oc::KrausMap phi = load_channel(channel_path);
  oc::CMat x = oc::io::matrix_from_json(oc::io::parse_file(matrix_path));
  const double gap = oc::kadison_schwarz_gap(phi, x, g.tol);
  const bool passed = gap >= -g.tol;
  if (g.json_out) {
    print_json(json{{"gap", gap}, {"passed", passed}});
  } else {
    std::cout << "kadison-schwarz gap: " << gap << '\n'
              << (passed ? "PASS" : "FAIL") << '\n';
  }
  return passed ? 0 : 1;
}

int cmd_repro(const std::string& scenario, const Global& g) {
  oc::ReproReport report = oc::run_repro_suite(scenario, g.seed, g.tol);
  if (g.json_out) {
    print_json(oc::io::repro_report_to_json(report));
  } else {
    std::cout << "scenario: " << report.scenario << " (seed " << report.seed << ", tol "
              << report.tol << ")\n";
    for (const oc::ReproStep& step : report.steps) {
      std::cout << "  [" << (step.passed ? "PASS" : "FAIL") << "] " << step.description
                << " (residual " << step.residual << ")\n";
    }
    std::cout << "overall: " << (report.overall ? "PASS" : "FAIL") << '\n';
  }
  return report.overall ? 0 : 1;
}

int cmd_make(const std::string& kind, const std::vector<std::string>& args) {
  oc::CMat m;
  if (kind == "e") {
    if (args.size() != 3) {
      throw std::invalid_argument("usage: make e <n> <i> <j>");
    }
    m = oc::matrix_units(std::stoi(args[0]), std::stoi(args[1]), std::stoi(args[2]));
  } else if (kind == "pauli") {
    if (args.size() != 1 || args[0].size() != 1) {
      throw std::invalid_argument("usage: make pauli <x|y|z|i>");
    }
    m = oc::CMat(2, 2);
    switch (args[0][0]) {
      case 'x':
        m << 0, 1, 1, 0;
        break;
      case 'y':
        m << 0, oc::Complex(0, -1), oc::Complex(0, 1), 0;
        break;
      case 'z':
        m << 1, 0, 0, -1;
        break;
      case 'i':
        m = oc::CMat::Identity(2, 2);
        break;
      default:
        throw std::invalid_argument("unknown pauli label: " + args[0]);
    }
  } else if (kind == "id") {
    if (args.size() != 1) {
      throw std::invalid_argument("usage: make id <n>");
    }
    const int n = std::stoi(args[0]);
    if (n <= 0) {
      throw std::invalid_argument("make id: dimension must be positive");
    }
    m = oc::CMat::Identity(n, n);
  } else {
    throw std::invalid_argument("unknown builder \"" + kind + "\" (known: e, pauli, id)");
  }
  print_json(oc::io::matrix_to_json(m));
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"checks for unital completely positive maps: operational partitions of "
               "unity, operational convex combinations, and extreme point certification"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--tol", g.tol, "numerical tolerance for all checks")
      ->envname("OPCONVEX_TOL")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized commands");
  app.add_option("--budget", g.budget, "trial budget for witness search");
  app.add_flag("--json", g.json_out, "emit machine-readable JSON reports");

  int exit_code = 0;

  std::string verify_path;
  CLI::App* verify_fop_cmd =
      app.add_subcommand("verify-fop", "check sum v_i v_i* = 1 for a partition file");
  verify_fop_cmd->add_option("partition", verify_path, "partition JSON file")->required();
  verify_fop_cmd->callback(
      [&] { exit_code = cmd_verify(verify_path, oc::PartitionKind::Fop, g); });

  CLI::App* verify_lindblad_cmd =
      app.add_subcommand("verify-lindblad", "check sum v_i* v_i = 1 for a partition file");
  verify_lindblad_cmd->add_option("partition", verify_path, "partition JSON file")->required();
  verify_lindblad_cmd->callback(
      [&] { exit_code = cmd_verify(verify_path, oc::PartitionKind::Lindblad, g); });

  CLI::App* verify_cs_cmd = app.add_subcommand(
      "verify-cs", "check the members are PSD and sum to 1 for a partition file");
  verify_cs_cmd->add_option("partition", verify_path, "partition JSON file")->required();
  verify_cs_cmd->callback(
      [&] { exit_code = cmd_verify(verify_path, oc::PartitionKind::ConnesStormer, g); });

  std::string choi_path;
  CLI::App* choi_cmd = app.add_subcommand("choi", "choi matrix of a channel file");
  choi_cmd->add_option("channel", choi_path, "channel JSON file")->required();
  choi_cmd->callback([&] { exit_code = cmd_choi(choi_path, g); });

  std::string kraus_path;
  CLI::App* kraus_cmd =
      app.add_subcommand("kraus", "canonical kraus operators of a choi matrix file");
  kraus_cmd->add_option("choi", kraus_path, "matrix JSON file holding a choi matrix")
      ->required();
  kraus_cmd->callback([&] { exit_code = cmd_kraus(kraus_path, g); });

  std::string classify_path;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "cp/unital/trace-preserving/automorphism flags");
  classify_cmd->add_option("channel", classify_path, "channel JSON file")->required();
  classify_cmd->callback([&] { exit_code = cmd_classify(classify_path, g); });

  std::string size_path;
  CLI::App* size_cmd =
      app.add_subcommand("size", "canonical kraus operator count of a cp map");
  size_cmd->add_option("channel", size_path, "channel JSON file")->required();
  size_cmd->callback([&] { exit_code = cmd_size(size_path, g); });

  std::string combine_coeffs;
  std::vector<std::string> combine_maps;
  CLI::App* combine_cmd = app.add_subcommand(
      "combine", "operational convex combination sum Ad v_i . Phi_i");
  combine_cmd->add_option("partition", combine_coeffs, "coefficient partition JSON file")
      ->required();
  combine_cmd->add_option("channels", combine_maps, "one channel JSON file per coefficient")
      ->required()
      ->expected(-1);
  combine_cmd->callback([&] { exit_code = cmd_combine(combine_coeffs, combine_maps, g); });

  std::string target_path;
  std::string witness_path;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate-witness", "validate a two-term decomposition witness against a target");
  validate_cmd->add_option("target", target_path, "target channel JSON file")->required();
  validate_cmd->add_option("witness", witness_path, "witness JSON file")->required();
  validate_cmd->callback(
      [&] { exit_code = cmd_validate_witness(target_path, witness_path, g); });

  std::string certify_target;
  std::string certify_witness;
  CLI::App* certify_cmd = app.add_subcommand(
      "certify-thm37", "certify the forced form of a valid automorphism decomposition");
  certify_cmd->add_option("target", certify_target, "automorphism channel JSON file")
      ->required();
  certify_cmd->add_option("witness", certify_witness, "witness JSON file")->required();
  certify_cmd->callback([&] { exit_code = cmd_certify(certify_target, certify_witness, g); });

  std::string extreme_path;
  CLI::App* extreme_cmd = app.add_subcommand(
      "extreme-check", "extremality in the usual sense via kraus product independence");
  extreme_cmd->add_option("channel", extreme_path, "channel JSON file")->required();
  extreme_cmd->callback([&] { exit_code = cmd_extreme_check(extreme_path, g); });

  std::string refute_path;
  CLI::App* refute_cmd = app.add_subcommand(
      "refute-opextreme", "search for a valid non-trivializing decomposition witness");
  refute_cmd->add_option("channel", refute_path, "channel JSON file")->required();
  refute_cmd->callback([&] { exit_code = cmd_refute(refute_path, g); });

  std::string ks_channel;
  std::string ks_matrix;
  CLI::App* ks_cmd = app.add_subcommand(
      "ks-gap", "minimum eigenvalue of Phi(x x*) - Phi(x) Phi(x)*");
  ks_cmd->add_option("channel", ks_channel, "channel JSON file")->required();
  ks_cmd->add_option("x", ks_matrix, "matrix JSON file")->required();
  ks_cmd->callback([&] { exit_code = cmd_ks_gap(ks_channel, ks_matrix, g); });

  std::string repro_scenario;
  CLI::App* repro_cmd =
      app.add_subcommand("repro", "run a scripted scenario and report each step");
  repro_cmd
      ->add_option("scenario", repro_scenario,
                   "one of: example-3.3, example-3.6, theorem-3.7, remark-3.5")
      ->required();
  repro_cmd->callback([&] { exit_code = cmd_repro(repro_scenario, g); });

  std::string make_kind;
  std::vector<std::string> make_args;
  CLI::App* make_cmd = app.add_subcommand(
      "make", "emit builder matrices as JSON: make e <n> <i> <j>, make pauli <x|y|z|i>, "
              "make id <n>");
  make_cmd->add_option("kind", make_kind, "builder name: e, pauli, id")->required();
  make_cmd->add_option("args", make_args, "builder arguments");
  make_cmd->callback([&] { exit_code = cmd_make(make_kind, make_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const oc::TheoremAnomalyError& e) {
    std::cerr << "theorem anomaly: " << e.what() << '\n';
    for (const auto& [key, value] : e.residuals()) {
      std::cerr << "  " << key << ": " << value << '\n';
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
