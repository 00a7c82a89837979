#include "gwtda/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace gwtda {

namespace {

double parse_double(const std::string& field, std::size_t line_no) {
  const char* begin = field.c_str();
  while (*begin == ' ' || *begin == '\t') ++begin;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
  if (end == begin || (end && *end != '\0') || errno == ERANGE) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace

PointCloud read_cloud_csv(std::istream& in) {
  std::vector<double> coords;
  std::size_t d = 0;
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string field;
    std::size_t count = 0;
    while (std::getline(ss, field, ',')) {
      coords.push_back(parse_double(field, line_no));
      ++count;
    }
    if (n == 0) {
      d = count;
    } else if (count != d) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(d) + " columns, got " + std::to_string(count));
    }
    ++n;
  }
  if (n == 0) throw Error(ErrorCode::ParseError, "no points in input");
  try {
    return PointCloud(n, d, std::move(coords));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

PointCloud ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_cloud_csv(in);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  out.precision(17);
  out << "# " << cloud.size() << " points in R^" << cloud.dim() << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << p[k];
    }
    out << '\n';
  }
}

void emit_cloud(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  write_cloud_csv(out, cloud);
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& dist) {
  out.precision(17);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    for (std::size_t j = 0; j < dist.size(); ++j) {
      if (j) out << ',';
      out << dist(i, j);
    }
    out << '\n';
  }
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  // Columns: the union of scalar keys across records, in first-seen order.
  std::vector<std::string> columns;
  std::set<std::string> seen;
  for (const auto& rec : report.records) {
    for (const auto& [key, value] : rec.items()) {
      if (value.is_primitive() && seen.insert(key).second) columns.push_back(key);
    }
  }
  out.precision(17);
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& rec : report.records) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ',';
      if (!rec.contains(columns[c])) continue;
      const auto& v = rec[columns[c]];
      if (v.is_string()) {
        out << v.get<std::string>();
      } else if (v.is_number_float()) {
        out << v.get<double>();
      } else if (!v.is_null()) {
        out << v.dump();
      }
    }
    out << '\n';
  }
}

void emit_report(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    write_report_csv(out, report);
  } else {
    out << report.to_json().dump(2) << '\n';
  }
}

}  // namespace gwtda
