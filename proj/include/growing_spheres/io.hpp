/*
 * Copyright 2026 The Growing Spheres Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Dataset ingestion and classifier selection strings for the command line.

#ifndef GROWING_SPHERES_IO_HPP_
#define GROWING_SPHERES_IO_HPP_

#include <chrono>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "growing_spheres/builtin.hpp"
#include "growing_spheres/classifier.hpp"
#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"
#include "growing_spheres/external.hpp"
#include "growing_spheres/format.hpp"

namespace gs {

struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<FeatureVector> rows;
};

namespace internal {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

}  // namespace internal

// Header row of feature names, then numeric rows. `label_column`, when given,
// is dropped from the features.
inline Dataset read_csv(std::istream& in,
                        const std::optional<std::string>& label_column = {}) {
  Dataset out;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> skip;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::trim(line).empty()) continue;
    const auto cells = internal::split(line, ',');
    if (columns == 0) {
      columns = cells.size();
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string name(internal::trim(cells[i]));
        if (label_column && name == *label_column) {
          skip = i;
        } else {
          out.feature_names.push_back(name);
        }
      }
      if (label_column && !skip) {
        throw Error(ErrorCode::kInvalidArgument,
                    "label column '" + *label_column + "' not in header");
      }
      if (out.feature_names.empty()) {
        throw Error(ErrorCode::kInvalidDimension, "no feature columns");
      }
      continue;
    }
    if (cells.size() != columns) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " columns, header has " +
                      std::to_string(columns));
    }
    FeatureVector row(out.feature_names.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (skip && i == *skip) continue;
      const auto value = parse_double(internal::trim(cells[i]));
      if (!value || !std::isfinite(*value)) {
        throw Error(ErrorCode::kNonFinite,
                    "line " + std::to_string(line_no) + ", column " +
                        std::to_string(i + 1) + ": '" +
                        std::string(internal::trim(cells[i])) +
                        "' is not a finite number");
      }
      row[j++] = *value;
    }
    out.rows.push_back(std::move(row));
  }
  if (columns == 0) throw Error(ErrorCode::kEmptyDataset, "missing header row");
  return out;
}

inline Dataset read_csv_file(const std::string& path,
                             const std::optional<std::string>& label_column = {}) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_csv(in, label_column);
}

namespace internal {

inline double parse_number(std::string_view text, std::string_view what) {
  const auto v = parse_double(trim(text));
  if (!v || !std::isfinite(*v)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": '" + std::string(text) +
                    "' is not a number");
  }
  return *v;
}

inline std::size_t parse_index(std::string_view text) {
  const auto v = parse_int<std::size_t>(trim(text));
  if (!v) {
    throw Error(ErrorCode::kInvalidArgument,
                "'" + std::string(text) + "' is not a feature index");
  }
  return *v;
}

inline FeatureVector parse_numbers(std::string_view text, std::string_view what) {
  FeatureVector out;
  std::vector<double> values;
  for (std::string_view cell : split(text, ',')) {
    values.push_back(parse_number(cell, what));
  }
  return FeatureVector(std::move(values));
}

}  // namespace internal

// Parses the part after "builtin:", e.g. "axis:0:0.5" or
// "hyperplane:1,0:-0.5".
inline BuiltinSpec parse_builtin_spec(std::string_view text) {
  const auto parts = internal::split(text, ':');
  const std::string_view kind = parts.front();
  auto expect = [&](std::size_t n) {
    if (parts.size() != n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "malformed builtin classifier '" + std::string(text) + "'");
    }
  };
  if (kind == "hyperplane") {
    expect(3);
    return Hyperplane{internal::parse_numbers(parts[1], "hyperplane weight"),
                      internal::parse_number(parts[2], "hyperplane offset")};
  }
  if (kind == "axis") {
    expect(3);
    return AxisThreshold{internal::parse_index(parts[1]),
                         internal::parse_number(parts[2], "threshold")};
  }
  if (kind == "sphere") {
    expect(3);
    return HypersphereBoundary{internal::parse_numbers(parts[1], "center"),
                               internal::parse_number(parts[2], "radius")};
  }
  if (kind == "min") {
    expect(3);
    MinThreshold spec;
    for (std::string_view cell : internal::split(parts[1], ',')) {
      spec.indices.push_back(internal::parse_index(cell));
    }
    spec.threshold = internal::parse_number(parts[2], "threshold");
    return spec;
  }
  if (kind == "const") {
    expect(2);
    const auto label = parse_int<int>(internal::trim(parts[1]));
    if (!label) {
      throw Error(ErrorCode::kInvalidArgument,
                  "'" + std::string(parts[1]) + "' is not a label");
    }
    return Constant{Label(*label)};
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown builtin classifier '" + std::string(kind) + "'");
}

// "builtin:<spec>" or "exec:<path> [adapter args]".
inline std::unique_ptr<Classifier> make_classifier(
    std::string_view selector, std::size_t dimension,
    std::chrono::milliseconds timeout = ExternalClassifier::kDefaultTimeout) {
  constexpr std::string_view kBuiltin = "builtin:";
  constexpr std::string_view kExec = "exec:";
  if (selector.starts_with(kBuiltin)) {
    return std::make_unique<BuiltinClassifier>(
        parse_builtin_spec(selector.substr(kBuiltin.size())), dimension);
  }
  if (selector.starts_with(kExec)) {
    std::istringstream words{std::string(selector.substr(kExec.size()))};
    std::vector<std::string> argv;
    for (std::string w; words >> w;) argv.push_back(w);
    return std::make_unique<ExternalClassifier>(std::move(argv), dimension,
                                                timeout);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "classifier must start with 'builtin:' or 'exec:', got '" +
                  std::string(selector) + "'");
}

}  // namespace gs

#endif  // GROWING_SPHERES_IO_HPP_
