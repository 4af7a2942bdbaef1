#pragma once

// Tabular report output. Numbers are written with 17 significant digits
// so that CSV diffs are bit-stable; infinities are written as "inf".

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "fpio/outcome.hpp"

namespace fpio {

/// 17 significant digits, general notation, "inf"/"-inf" for infinities.
std::string format_number(double v);

using Cell = std::variant<double, std::string>;

/// Finite ratio as a number, infinite as "inf", indeterminate as "undefined".
Cell ratio_cell(const Ratio& r);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// One-row reports are written as a JSON object instead of an array.
    bool single = false;
};

enum class OutputFormat { csv, json };

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

/// Semicolon-joined flag list for the trailing "flags" column.
std::string join_flags(const std::vector<std::string>& flags);

}  // namespace fpio
