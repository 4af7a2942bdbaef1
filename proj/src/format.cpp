#include "fpio/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace fpio {

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, res.ptr);
}

Cell ratio_cell(const Ratio& r) {
    if (r.is_finite()) return r.value();
    return std::string(r.is_infinite() ? "inf" : "undefined");
}

namespace {

std::string csv_field(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

nlohmann::ordered_json json_row(const Table& t, const std::vector<Cell>& row) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        const Cell& c = row[i];
        if (const auto* d = std::get_if<double>(&c)) {
            if (std::isfinite(*d)) {
                obj[t.columns[i]] = *d;
            } else {
                obj[t.columns[i]] = format_number(*d);
            }
        } else {
            obj[t.columns[i]] = std::get<std::string>(c);
        }
    }
    return obj;
}

}  // namespace

void write_csv(std::ostream& out, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& t) {
    if (t.single && t.rows.size() == 1) {
        out << json_row(t, t.rows.front()).dump(2) << '\n';
        return;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) arr.push_back(json_row(t, row));
    out << arr.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& t, OutputFormat format) {
    if (format == OutputFormat::csv) {
        write_csv(out, t);
    } else {
        write_json(out, t);
    }
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string s;
    for (const auto& f : flags) {
        if (!s.empty()) s += ';';
        s += f;
    }
    return s;
}

}  // namespace fpio
