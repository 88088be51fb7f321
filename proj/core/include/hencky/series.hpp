#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hencky {

/// Tabulated numeric output with fixed column names plus free-form
/// key/value metadata that ends up in the CSV header.
struct CurveSeries {
  std::string mode;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> meta;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }

  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw std::out_of_range("CurveSeries: no column '" + name + "'");
  }

  std::vector<double> column(const std::string& name) const {
    const std::size_t j = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[j]);
    return out;
  }

  const std::string* find_meta(const std::string& key) const {
    for (const auto& [k, v] : meta)
      if (k == key) return &v;
    return nullptr;
  }

  void set_meta(const std::string& key, std::string value) {
    for (auto& [k, v] : meta)
      if (k == key) {
        v = std::move(value);
        return;
      }
    meta.emplace_back(key, std::move(value));
  }
};

}  // namespace hencky
