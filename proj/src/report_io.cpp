#include "robinsym/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "robinsym/errors.hpp"

namespace robinsym::io {

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string q = "\"";
  for (const char c : field) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

void write_row(std::ostringstream& os, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    os << quote(row[i]);
  }
  os << '\n';
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> fields) {
  if (fields.size() != header_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "CSV row width does not match header");
  }
  rows_.push_back(std::move(fields));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write_row(os, header_);
  for (const auto& r : rows_) write_row(os, r);
  return os.str();
}

Json to_json(const oracle::ResidualReport& r) {
  Json j;
  j["params"] = {{"n", r.n}, {"R", r.R}, {"a", r.a}, {"beta", r.beta}};
  j["h"] = r.h;
  j["stencil_order"] = r.stencil_order;
  j["richardson"] = r.richardson;
  j["n_interior"] = r.n_interior;
  j["n_boundary"] = r.n_boundary;
  j["max_pde_residual_fd"] = r.max_pde_residual_fd;
  j["max_robin_residual_fd"] = r.max_robin_residual_fd;
  j["laplacian_scale"] = r.laplacian_scale;
  j["tolerance"] = r.tolerance;
  j["observed_order"] = r.observed_order ? Json(*r.observed_order) : Json(nullptr);
  j["pass"] = r.pass;
  j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const bvp1d::SymmetryReport& r) {
  return Json{{"symmetry_defect", r.symmetry_defect},
              {"endpoint_defect", r.endpoint_defect},
              {"min_value", r.min_value},
              {"max_value", r.max_value},
              {"argmax", r.argmax},
              {"monotone_decreasing_right", r.monotone_decreasing_right},
              {"positive", r.positive}};
}

Json to_json(const bvp1d::Solution& s, bool include_samples) {
  Json j{{"shooting_param", s.shooting_param},
         {"newton_iters", s.newton_iters},
         {"bc_residuals", {s.bc_left, s.bc_right}},
         {"node_count", s.nodes.size()}};
  if (include_samples) {
    j["x"] = s.nodes;
    j["u"] = s.u;
    j["du"] = s.du;
  }
  return j;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace robinsym::io
