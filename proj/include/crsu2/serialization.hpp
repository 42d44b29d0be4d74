#ifndef CRSU2_SERIALIZATION_HPP
#define CRSU2_SERIALIZATION_HPP

// JSON encoding: complex numbers as [re, im], matrices as arrays of rows.

#include <complex>
#include <stdexcept>

#include "json.hpp"

#include "crsu2/core.hpp"
#include "crsu2/report.hpp"

namespace crsu2 {

inline nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex_from_json: expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <class Derived>
nlohmann::json matrix_to_json(const Eigen::MatrixBase<Derived>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(Complex(m(i, j))));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline GMatrix g_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("g_matrix_from_json: expected 3 rows");
  GMatrix m;
  for (int r = 0; r < 3; ++r) {
    if (!j[r].is_array() || j[r].size() != 3) throw std::invalid_argument("g_matrix_from_json: expected 3 columns");
    for (int c = 0; c < 3; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

inline nlohmann::json record_to_json(const CheckRecord& r) {
  return {{"name", r.name},
          {"inputs", r.inputs},
          {"residual", r.residual},
          {"tolerance", r.tolerance},
          {"bound", r.bound == CheckRecord::Bound::below ? "below" : "above"},
          {"pass", r.passed}};
}

inline nlohmann::json summary_to_json(const Report& report) {
  return {{"total", report.records.size()},
          {"passed", report.passed_count()},
          {"failed", report.failed_count()},
          {"pass", report.passed()}};
}

inline nlohmann::json records_to_json(const Report& report) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : report.records) a.push_back(record_to_json(r));
  return a;
}

}  // namespace crsu2

#endif  // CRSU2_SERIALIZATION_HPP
