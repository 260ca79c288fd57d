// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mfunclab::cli {

/// RFC 4180 writer: CRLF line ends, fields quoted only when needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);

  /// 17 significant digits, enough to read back the same double.
  static std::string number(double v);
  static std::string quote(std::string_view field);

 private:
  std::ostream& out_;
};

}  // namespace mfunclab::cli
