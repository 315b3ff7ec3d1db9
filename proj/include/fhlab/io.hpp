#pragma once

#include <string>
#include <vector>

#include "fhlab/sections.hpp"
#include "fhlab/types.hpp"

namespace fhlab::io {

// Shortest exact decimal form ("%.17g"); reruns must serialize bit-equal.
std::string fmt(double x);
// Complex in analytic form "re+imj".
std::string fmt(cplx z);

// RFC 4180 field escaping.
std::string csv_escape(const std::string& field);
std::string csv_line(const std::vector<std::string>& fields);

void write_text(const std::string& path, const std::string& content);

// Section serializers: CSV is one matrix row per line with "re+imj" cells,
// JSON carries the metadata alongside the entries.
void save_csv(const sections::SectionMatrix& section, const std::string& path);
void save_json(const sections::SectionMatrix& section,
               const std::string& path);

}  // namespace fhlab::io
