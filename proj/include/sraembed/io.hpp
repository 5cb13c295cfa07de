#pragma once

#include "sraembed/assouad.hpp"
#include "sraembed/audit.hpp"
#include "sraembed/generators.hpp"
#include "sraembed/metric_space.hpp"
#include "sraembed/pipeline.hpp"
#include "sraembed/point_map.hpp"
#include "sraembed/sra.hpp"

#include <json.hpp>

#include <string>

namespace sraembed::io {

using Json = nlohmann::ordered_json;

/// {"labels": [...], "matrix": [[...]]}
FiniteMetricSpace parse_space_json(const std::string& text);
/// Header row of labels followed by a square numeric body.
FiniteMetricSpace parse_space_csv(const std::string& text);
/// JSON when the first non-blank character is '{', CSV otherwise.
FiniteMetricSpace parse_space(const std::string& text);
FiniteMetricSpace read_space(const std::string& path);

std::string space_to_json(const FiniteMetricSpace& space);
std::string space_to_csv(const FiniteMetricSpace& space);

/// `label,c0,c1,...` then one row per domain point, 17 significant digits.
std::string embedding_to_csv(const FiniteMetricSpace& space, const PointMap& map);
/// Rows are matched to points by label; the domain is the set of labelled rows.
PointMap parse_embedding_csv(const std::string& text, const FiniteMetricSpace& space);

GenSpec parse_gen_spec(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

Json labels_json(const FiniteMetricSpace& space, const Subset& subset);
Json to_json(const CheckRecord& check);
Json to_json(const FiniteMetricSpace& space, const AuditReport& report);
Json to_json(const PipelineConstants& constants);
Json to_json(const FiniteMetricSpace& space, const CriticalRadiusEntry& entry);
Json to_json(const FiniteMetricSpace& space, const DoublingCertificate& cert);
/// Nets per scale, colors, M, j, and per-point block norms.
Json assouad_debug_json(const FiniteMetricSpace& space, const AssouadMap& result);

/// Dumps with two-space indentation and a trailing newline.
std::string dump(const Json& j);

} // namespace sraembed::io
