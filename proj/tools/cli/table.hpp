#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "run_spec.hpp"

namespace giantatom::cli {

/// Empty, number or text.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& out, const Table& table);
/// {"meta": ..., "rows": [{column: value, ...}, ...]}; empty cells become null.
void write_json(std::ostream& out, const Table& table, const nlohmann::ordered_json& meta);

/// Writes to `path`, or to `fallback` when the path is empty. Throws
/// std::runtime_error when the file cannot be written.
void emit(const Table& table, OutputFormat format, const std::string& path, const nlohmann::ordered_json& meta,
          std::ostream& fallback);

}  // namespace giantatom::cli
