#include "fslab/lab/table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fslab/error.hpp"

namespace fslab::lab {

std::string format_value(const Value& v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& x) const { return x; }
        std::string operator()(double x) const {
            if (std::isnan(x)) return "nan";
            if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }
    };
    return std::visit(Visitor{}, v);
}

namespace {

void write_field(std::ostream& out, const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<Value> row) {
    if (row.size() != columns_.size()) {
        throw Error("row has " + std::to_string(row.size()) + " fields, table has " + std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

void ResultTable::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out << ',';
        write_field(out, columns_[i]);
    }
    out << "\r\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            write_field(out, format_value(row[i]));
        }
        out << "\r\n";
    }
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    write_csv(out);
    return out.str();
}

}  // namespace fslab::lab
