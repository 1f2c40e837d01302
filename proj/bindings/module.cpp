#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opconvex/extremality.hpp"
#include "opconvex/repro.hpp"

namespace py = pybind11;
using namespace opconvex;

PYBIND11_MODULE(_core, m) {
  m.doc() = "unital completely positive maps: operational partitions of unity, "
            "operational convex combinations, extreme point checks";
  m.attr("__version__") = "1.0.0";
  m.attr("DEFAULT_TOL") = kDefaultTol;

  py::register_exception<TheoremAnomalyError>(m, "TheoremAnomaly", PyExc_RuntimeError);

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
      .def_readonly("eigenvectors", &SpectralDecomposition::eigenvectors);

  py::class_<PsdReport>(m, "PsdReport")
      .def_readonly("psd", &PsdReport::psd)
      .def_readonly("min_eigenvalue", &PsdReport::min_eigenvalue);

  py::enum_<PartitionKind>(m, "PartitionKind")
      .value("FOP", PartitionKind::Fop)
      .value("LINDBLAD", PartitionKind::Lindblad)
      .value("CONNES_STORMER", PartitionKind::ConnesStormer);

  py::class_<OperationalPartition>(m, "OperationalPartition")
      .def(py::init<std::vector<CMat>>(), py::arg("members"))
      .def_readonly("members", &OperationalPartition::members)
      .def_property_readonly("dim", &OperationalPartition::dim)
      .def("__len__", &OperationalPartition::size);

  py::class_<MemberViolation>(m, "MemberViolation")
      .def_readonly("index", &MemberViolation::index)
      .def_readonly("reason", &MemberViolation::reason)
      .def_readonly("value", &MemberViolation::value);

  py::class_<PartitionReport>(m, "PartitionReport")
      .def_readonly("kind", &PartitionReport::kind)
      .def_readonly("passed", &PartitionReport::passed)
      .def_readonly("defect", &PartitionReport::defect)
      .def_readonly("member_violations", &PartitionReport::member_violations);

  py::class_<KrausMap>(m, "KrausMap")
      .def(py::init<int, std::vector<CMat>, bool>(), py::arg("dim"), py::arg("kraus"),
           py::arg("canonical") = false)
      .def_readonly("dim", &KrausMap::dim)
      .def_readonly("kraus", &KrausMap::kraus)
      .def_readonly("canonical", &KrausMap::canonical);

  py::class_<ChoiMatrix>(m, "ChoiMatrix")
      .def(py::init<int, CMat>(), py::arg("dim"), py::arg("matrix"))
      .def_readonly("dim", &ChoiMatrix::dim)
      .def_readonly("matrix", &ChoiMatrix::matrix);

  py::class_<ChannelFlags>(m, "ChannelFlags")
      .def_readonly("cp", &ChannelFlags::cp)
      .def_readonly("unital", &ChannelFlags::unital)
      .def_readonly("trace_preserving", &ChannelFlags::trace_preserving)
      .def_readonly("automorphism", &ChannelFlags::automorphism)
      .def_readonly("size", &ChannelFlags::size)
      .def_readonly("choi_min_eigenvalue", &ChannelFlags::choi_min_eigenvalue)
      .def_readonly("unital_defect", &ChannelFlags::unital_defect)
      .def_readonly("trace_defect", &ChannelFlags::trace_defect);

  py::class_<DecompositionWitness>(m, "DecompositionWitness")
      .def(py::init<CMat, KrausMap, CMat, KrausMap>(), py::arg("a"), py::arg("phi1"),
           py::arg("b"), py::arg("phi2"))
      .def_readonly("a", &DecompositionWitness::a)
      .def_readonly("phi1", &DecompositionWitness::phi1)
      .def_readonly("b", &DecompositionWitness::b)
      .def_readonly("phi2", &DecompositionWitness::phi2);

  py::class_<WitnessResiduals>(m, "WitnessResiduals")
      .def_readonly("fop_defect", &WitnessResiduals::fop_defect)
      .def_readonly("reconstruction", &WitnessResiduals::reconstruction)
      .def_readonly("aa_scalar", &WitnessResiduals::aa_scalar)
      .def_readonly("bb_scalar", &WitnessResiduals::bb_scalar)
      .def_readonly("proportionality", &WitnessResiduals::proportionality);

  py::class_<WitnessVerdict>(m, "WitnessVerdict")
      .def_readonly("valid", &WitnessVerdict::valid)
      .def_readonly("trivializing", &WitnessVerdict::trivializing)
      .def_readonly("lambda_", &WitnessVerdict::lambda)
      .def_readonly("phi1_ucp", &WitnessVerdict::phi1_ucp)
      .def_readonly("phi2_ucp", &WitnessVerdict::phi2_ucp)
      .def_readonly("residuals", &WitnessVerdict::residuals);

  py::enum_<CertKind>(m, "CertKind")
      .value("USUAL_EXTREME", CertKind::UsualExtreme)
      .value("NOT_USUAL_EXTREME", CertKind::NotUsualExtreme)
      .value("THM37_CERTIFIED", CertKind::Thm37Certified)
      .value("REFUTED_OPERATIONAL", CertKind::RefutedOperational);

  py::class_<Thm37Evidence>(m, "Thm37Evidence")
      .def_readonly("lambda_", &Thm37Evidence::lambda)
      .def_readonly("u_a", &Thm37Evidence::u_a)
      .def_readonly("u_b", &Thm37Evidence::u_b)
      .def_readonly("u", &Thm37Evidence::u);

  py::class_<ExtremalityCertificate>(m, "ExtremalityCertificate")
      .def_readonly("kind", &ExtremalityCertificate::kind)
      .def_readonly("subject", &ExtremalityCertificate::subject)
      .def_readonly("witness", &ExtremalityCertificate::witness)
      .def_readonly("dependence", &ExtremalityCertificate::dependence)
      .def_readonly("thm37", &ExtremalityCertificate::thm37)
      .def_readonly("residuals", &ExtremalityCertificate::residuals);

  py::class_<SearchTrial>(m, "SearchTrial")
      .def_readonly("index", &SearchTrial::index)
      .def_readonly("family", &SearchTrial::family)
      .def_readonly("candidate_formed", &SearchTrial::candidate_formed)
      .def_readonly("valid", &SearchTrial::valid)
      .def_readonly("trivializing", &SearchTrial::trivializing)
      .def_readonly("reconstruction", &SearchTrial::reconstruction);

  py::class_<SearchLog>(m, "SearchLog")
      .def_readonly("seed", &SearchLog::seed)
      .def_readonly("budget", &SearchLog::budget)
      .def_readonly("budget_consumed", &SearchLog::budget_consumed)
      .def_readonly("candidates_formed", &SearchLog::candidates_formed)
      .def_readonly("valid_count", &SearchLog::valid_count)
      .def_readonly("trivializing_count", &SearchLog::trivializing_count)
      .def_readonly("trials", &SearchLog::trials);

  py::class_<RefutationSearchResult>(m, "RefutationSearchResult")
      .def_readonly("witness", &RefutationSearchResult::witness)
      .def_readonly("verdict", &RefutationSearchResult::verdict)
      .def_readonly("log", &RefutationSearchResult::log);

  py::class_<ReproStep>(m, "ReproStep")
      .def_readonly("description", &ReproStep::description)
      .def_readonly("residual", &ReproStep::residual)
      .def_readonly("passed", &ReproStep::passed);

  py::class_<ReproReport>(m, "ReproReport")
      .def_readonly("scenario", &ReproReport::scenario)
      .def_readonly("seed", &ReproReport::seed)
      .def_readonly("tol", &ReproReport::tol)
      .def_readonly("overall", &ReproReport::overall)
      .def_readonly("steps", &ReproReport::steps);

  m.def("matrix_units", &opconvex::matrix_units, py::arg("n"), py::arg("i"), py::arg("j"),
        "matrix unit e_ij of M_n, 1-based");
  m.def("hermiticity_defect", &opconvex::hermiticity_defect, py::arg("m"));
  m.def("unitarity_defect", &opconvex::unitarity_defect, py::arg("u"));
  m.def("is_unitary", &opconvex::is_unitary, py::arg("u"), py::arg("tol") = kDefaultTol);
  m.def("hermitian_eig", &opconvex::hermitian_eig, py::arg("m"), py::arg("tol") = kDefaultTol);
  m.def("is_psd", &opconvex::is_psd, py::arg("m"), py::arg("tol") = kDefaultTol);
  m.def("kron", &opconvex::kron, py::arg("a"), py::arg("b"));
  m.def("frobenius_distance", &opconvex::frobenius_distance, py::arg("a"), py::arg("b"));
  m.def("random_unitary",
        static_cast<CMat (*)(int, std::uint64_t)>(&opconvex::random_unitary), py::arg("n"),
        py::arg("seed"), "Haar-distributed unitary, deterministic per seed");
  m.def("psd_sqrt", &opconvex::psd_sqrt, py::arg("m"), py::arg("tol") = kDefaultTol);

  m.def("verify_fop", &opconvex::verify_fop, py::arg("partition"), py::arg("tol") = kDefaultTol);
  m.def("verify_lindblad", &opconvex::verify_lindblad, py::arg("partition"),
        py::arg("tol") = kDefaultTol);
  m.def("verify_cs", &opconvex::verify_cs, py::arg("partition"), py::arg("tol") = kDefaultTol);
  m.def("bridge_coefficients", &opconvex::bridge_coefficients, py::arg("u"), py::arg("v"),
        py::arg("w"), py::arg("lam"), py::arg("tol") = kDefaultTol);

  m.def("ad", &opconvex::ad, py::arg("v"), "the map x -> v x v*");
  m.def("identity_map", &opconvex::identity_map, py::arg("n"));
  m.def("apply", &opconvex::apply, py::arg("phi"), py::arg("x"));
  m.def("to_choi", &opconvex::to_choi, py::arg("phi"));
  m.def("kraus_from_choi", &opconvex::kraus_from_choi, py::arg("choi"), py::arg("tol") = kDefaultTol);
  m.def("size", &opconvex::size, py::arg("phi"), py::arg("tol") = kDefaultTol);
  m.def("classify", &opconvex::classify, py::arg("phi"), py::arg("tol") = kDefaultTol);
  m.def("map_distance", &opconvex::map_distance, py::arg("phi"), py::arg("psi"));
  m.def("compose", &opconvex::compose, py::arg("outer"), py::arg("inner"));
  m.def("canonicalize", &opconvex::canonicalize, py::arg("phi"), py::arg("tol") = kDefaultTol);
  m.def("scale_map", &opconvex::scale_map, py::arg("phi"), py::arg("factor"));

  m.def("op_convex_combine", &opconvex::op_convex_combine, py::arg("coeffs"), py::arg("maps"),
        py::arg("tol") = kDefaultTol);
  m.def("validate_witness", &opconvex::validate_witness, py::arg("target"), py::arg("witness"),
        py::arg("tol") = kDefaultTol);
  m.def("scalar_witness", &opconvex::scalar_witness, py::arg("lam"), py::arg("phi1"), py::arg("phi2"));

  m.def("usual_extreme_check", &opconvex::usual_extreme_check, py::arg("phi"),
        py::arg("tol") = kDefaultTol);
  m.def("certify_thm37", &opconvex::certify_thm37, py::arg("theta"), py::arg("witness"),
        py::arg("tol") = kDefaultTol);
  m.def("search_refuting_witness", &opconvex::search_refuting_witness, py::arg("phi"),
        py::arg("budget"), py::arg("seed"), py::arg("tol") = kDefaultTol);
  m.def("kadison_schwarz_gap", &opconvex::kadison_schwarz_gap, py::arg("phi"), py::arg("x"),
        py::arg("tol") = kDefaultTol);

  m.def("run_repro_suite", &opconvex::run_repro_suite, py::arg("scenario"), py::arg("seed"),
        py::arg("tol") = kDefaultTol);
  m.def("repro_scenarios", &opconvex::repro_scenarios);
}
