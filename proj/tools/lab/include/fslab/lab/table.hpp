#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace fslab::lab {

/// Empty, integer, real, boolean or text cell.
using Value = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

/// Reals use 17 significant digits; booleans print as true/false; empty prints nothing.
std::string format_value(const Value& v);

/// Fixed-schema table written as RFC 4180 CSV.
class ResultTable {
public:
    ResultTable() = default;
    explicit ResultTable(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Value>>& rows() const { return rows_; }

    void add_row(std::vector<Value> row);  // throws unless the width matches

    void write_csv(std::ostream& out) const;
    std::string to_csv() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Value>> rows_;
};

}  // namespace fslab::lab
