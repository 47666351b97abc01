#pragma once

#include <string>

#include <json.hpp>

#include "ipf/diagnostics.hpp"
#include "ipf/entropy.hpp"
#include "ipf/identification.hpp"
#include "ipf/network.hpp"

namespace ipf::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Wraps a payload as {"schema_version", "kind", ...payload}.
json document(const std::string& kind, json payload);

json to_json(const Vector& v);
json to_json(const Matrix& m);  // array of rows
Vector vector_from_json(const json& j);
Matrix matrix_from_json(const json& j);

json to_json(const EnsembleStats& stats);
EnsembleStats stats_from_json(const json& j);
/// Columns t, mean_i, r_ij, rdot_ij (rdot only when derived).
std::string to_csv(const EnsembleStats& stats);

json to_json(const EntropyEstimate& e);
json to_json(const IdentifiedOperator& op);
json to_json(const EigenChain& chain);
json to_json(const SegmentSchedule& schedule);
SegmentSchedule schedule_from_json(const json& j);
json to_json(const GammaRatios& g);
json to_json(const InvariantSet& inv);
json to_json(const TripletReport& rep);
json to_json(const InfoNetwork& net);
json to_json(const DiagnosticsReport& rep);

/// Serialized text of a document: two-space indent and a trailing newline.
std::string dump(const json& doc);
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace ipf::io
