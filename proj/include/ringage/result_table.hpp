#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ringage {

/// One cell of a result table; monostate serializes as an empty CSV field
/// or a JSON null.
using Value = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

/// Rows of one experiment under a fixed column schema.
struct ResultTable {
    std::string kind;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
    /// Full configuration echo, attached to every JSON record.
    nlohmann::ordered_json config = nlohmann::ordered_json::object();

    /// Appends a row; throws if its width differs from the schema or every
    /// value is null.
    void add_row(std::vector<Value> row);
    std::size_t column(const std::string& name) const;
    const Value& at(std::size_t row, const std::string& name) const;
};

/// 12 significant digits, shortest form ("%.12g").
std::string format_number(double x);

/// Header row, then one line per row.
void write_csv(const ResultTable& table, std::ostream& out);
/// One JSON object per row: {"experiment", "config", "row": {column: value}}.
void write_json_lines(const ResultTable& table, std::ostream& out);

}  // namespace ringage
