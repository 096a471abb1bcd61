#pragma once

#include <string>
#include <string_view>

#include "contour/harness/study.hpp"

namespace contour::harness {

enum class ReportFormat { Json, AlignedText, Tsv };

ReportFormat format_from_string(std::string_view name);

inline constexpr int kReportSchemaVersion = 1;

/// JSON layout: {schema_version, config, results: [...], eigen?: [...],
/// notes, runtime}. `runtime` holds worker count, SIMD path and timing; the
/// rest is the deterministic report body.
Json report_to_json(const StudyReport& report);
StudyReport report_from_json(const Json& j);

/// The JSON document without its `runtime` member, for determinism checks.
std::string report_body(const StudyReport& report);

std::string emit_report(const StudyReport& report, ReportFormat format);

}  // namespace contour::harness
