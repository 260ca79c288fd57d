// SPDX-License-Identifier: Apache-2.0

#include "csv.hpp"

#include <fmt/format.h>

namespace mfunclab::cli {

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out_ << ',';
    out_ << quote(fields[k]);
  }
  out_ << "\r\n";
}

std::string CsvWriter::number(double v) { return fmt::format("{:.17g}", v); }

std::string CsvWriter::quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace mfunclab::cli
