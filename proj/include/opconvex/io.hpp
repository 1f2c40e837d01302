#ifndef OPCONVEX_IO_HPP
#define OPCONVEX_IO_HPP

#include <string>

#include <json.hpp>

#include "opconvex/extremality.hpp"
#include "opconvex/repro.hpp"

namespace opconvex::io {

using json = nlohmann::json;

// Matrix documents are {"rows": r, "cols": c, "data": [[re, im], ...]} with
// data in row-major order; every entry must be finite. Partitions are bare
// arrays of matrices, channels are {"dim": n, "kraus": [matrix, ...]}, and
// witnesses are {"a": matrix, "phi1": channel, "b": matrix, "phi2": channel}.
// All parsers throw std::invalid_argument on malformed input.

json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);

json partition_to_json(const OperationalPartition& p);
OperationalPartition partition_from_json(const json& j);

json channel_to_json(const KrausMap& phi);
KrausMap channel_from_json(const json& j);

json witness_to_json(const DecompositionWitness& w);
DecompositionWitness witness_from_json(const json& j);

json partition_report_to_json(const PartitionReport& report);
json flags_to_json(const ChannelFlags& flags);
json verdict_to_json(const WitnessVerdict& verdict);
json certificate_to_json(const ExtremalityCertificate& cert);
json search_result_to_json(const RefutationSearchResult& result);
json repro_report_to_json(const ReproReport& report);

// Reads and parses a JSON file; unreadable or malformed input raises
// std::invalid_argument so the command layer can map it to its own exit code.
json parse_file(const std::string& path);

}  // namespace opconvex::io

#endif
