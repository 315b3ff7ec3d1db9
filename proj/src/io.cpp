#include "fhlab/io.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace fhlab::io {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += "\r\n";
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("io: cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw ConfigError("io: short write to '" + path + "'");
}

namespace {

const char* tag_name(sections::StructureTag tag) {
  switch (tag) {
    case sections::StructureTag::lower_toeplitz: return "lower_toeplitz";
    case sections::StructureTag::upper_toeplitz: return "upper_toeplitz";
    case sections::StructureTag::hankel: return "hankel";
    case sections::StructureTag::block_upper_2x2: return "block_upper_2x2";
    case sections::StructureTag::general: return "general";
  }
  return "general";
}

}  // namespace

void save_csv(const sections::SectionMatrix& section,
              const std::string& path) {
  std::string out;
  for (Eigen::Index i = 0; i < section.entries.rows(); ++i) {
    std::vector<std::string> row;
    row.reserve(section.entries.cols());
    for (Eigen::Index j = 0; j < section.entries.cols(); ++j) {
      row.push_back(fmt(section.entries(i, j)));
    }
    out += csv_line(row);
  }
  write_text(path, out);
}

void save_json(const sections::SectionMatrix& section,
               const std::string& path) {
  nlohmann::json j;
  j["schema"] = "fh-lab/1";
  j["truncation"] = section.truncation;
  j["headroom"] = section.headroom;
  j["tag"] = tag_name(section.tag);
  j["tail_bound"] = section.tail_bound;
  j["rows"] = section.entries.rows();
  j["cols"] = section.entries.cols();
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < section.entries.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index jcol = 0; jcol < section.entries.cols(); ++jcol) {
      row.push_back(fmt(section.entries(i, jcol)));
    }
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  write_text(path, j.dump(2) + "\n");
}

}  // namespace fhlab::io
