#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "robinsym/bvp1d.hpp"
#include "robinsym/oracle.hpp"

namespace robinsym::io {

using Json = nlohmann::ordered_json;

/// 12 significant digits, shortest form ("%.12g").
std::string csv_number(double v);

/// RFC 4180 table with a header row and LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> fields);
  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Json to_json(const oracle::ResidualReport& report);
Json to_json(const bvp1d::SymmetryReport& report);
Json to_json(const bvp1d::Solution& solution, bool include_samples = true);

/// Serialized document with a trailing newline.
std::string dump(const Json& doc);

}  // namespace robinsym::io
