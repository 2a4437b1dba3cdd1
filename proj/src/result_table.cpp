#include "ringage/result_table.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "ringage/error.hpp"

namespace ringage {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string csv_field(const Value& v) {
    return std::visit(overloaded{
                          [](std::monostate) { return std::string(); },
                          [](std::int64_t i) { return std::to_string(i); },
                          [](double d) { return format_number(d); },
                          [](bool b) { return std::string(b ? "true" : "false"); },
                          [](const std::string& s) {
                              if (s.find_first_of(",\"\n") == std::string::npos) return s;
                              std::string q = "\"";
                              for (char c : s) {
                                  if (c == '"') q += '"';
                                  q += c;
                              }
                              return q + '"';
                          },
                      },
                      v);
}

nlohmann::ordered_json json_value(const Value& v) {
    return std::visit(overloaded{
                          [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                          [](std::int64_t i) { return nlohmann::ordered_json(i); },
                          [](double d) {
                              if (!std::isfinite(d)) return nlohmann::ordered_json(format_number(d));
                              return nlohmann::ordered_json(std::stod(format_number(d)));
                          },
                          [](bool b) { return nlohmann::ordered_json(b); },
                          [](const std::string& s) { return nlohmann::ordered_json(s); },
                      },
                      v);
}

}  // namespace

void ResultTable::add_row(std::vector<Value> row) {
    if (row.size() != columns.size())
        throw InvalidArgument(fmt::format("row has {} values, schema has {} columns", row.size(), columns.size()));
    if (std::all_of(row.begin(), row.end(), [](const Value& v) { return std::holds_alternative<std::monostate>(v); }))
        throw InvalidArgument("row has no non-null value");
    rows.push_back(std::move(row));
}

std::size_t ResultTable::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw InvalidArgument(fmt::format("no column '{}' in {} table", name, kind));
    return static_cast<std::size_t>(it - columns.begin());
}

const Value& ResultTable::at(std::size_t row, const std::string& name) const { return rows.at(row).at(column(name)); }

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.12g}", x);
}

void write_csv(const ResultTable& table, std::ostream& out) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c]);
        out << '\n';
    }
}

void write_json_lines(const ResultTable& table, std::ostream& out) {
    for (const auto& row : table.rows) {
        nlohmann::ordered_json values = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) values[table.columns[c]] = json_value(row[c]);
        nlohmann::ordered_json record = nlohmann::ordered_json::object();
        record["experiment"] = table.kind;
        record["config"] = table.config;
        record["row"] = values;
        out << record.dump() << '\n';
    }
}

}  // namespace ringage
