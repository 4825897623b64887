// table.hpp
//
// ConvergenceTable: the universal report row format. Exact rationals with a
// declared target and tolerance; rendering stays in the CLI layer.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oklab/core.hpp"
#include "oklab/errors.hpp"

namespace oklab {

struct TableRow {
  std::string index;                 // "m", "(p,k)" or a grading vector
  Rational value;
  std::optional<Rational> residual;  // |value - target| when a target exists
};

struct ConvergenceTable {
  std::string name;
  std::string index_label = "m";
  std::string value_label = "value";
  std::optional<Rational> target;
  std::optional<Rational> tolerance;
  std::vector<TableRow> rows;

  void add(std::int64_t index, const Rational& value) {
    TableRow row{std::to_string(index), value, std::nullopt};
    if (target) row.residual = value >= *target ? value - *target : *target - value;
    rows.push_back(std::move(row));
  }

  void add(const std::string& index, const Rational& value) {
    TableRow row{index, value, std::nullopt};
    if (target) row.residual = value >= *target ? value - *target : *target - value;
    rows.push_back(std::move(row));
  }

  const Rational& last() const {
    if (rows.empty()) throw EmptyInput("ConvergenceTable: no rows");
    return rows.back().value;
  }

  bool empty() const { return rows.empty(); }
};

}  // namespace oklab
