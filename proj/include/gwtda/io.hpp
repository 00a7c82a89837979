#pragma once

#include <iosfwd>
#include <string>

#include "gwtda/core.hpp"
#include "gwtda/harness.hpp"

namespace gwtda {

/// One point per row, comma separated; lines starting with '#' are skipped.
PointCloud read_cloud_csv(std::istream& in);
PointCloud ingest_csv(const std::string& path);

void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
void emit_cloud(const PointCloud& cloud, const std::string& path);

void write_distance_csv(std::ostream& out, const DistanceMatrix& dist);

/// Writes the report JSON to `path` (or its tabular records as CSV if the
/// path ends in ".csv").
void emit_report(const ExperimentReport& report, const std::string& path);
void write_report_csv(std::ostream& out, const ExperimentReport& report);

}  // namespace gwtda
