#include "degwave/io.hpp"

#include "degwave/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace degwave {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw ArgumentError("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header_.size()));
    }
    rows_.push_back(std::move(cells));
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += quote(cells[i]);
    }
    out += '\n';
}

} // namespace

std::string CsvTable::str() const {
    std::string out;
    append_line(out, header_);
    for (const auto& r : rows_) {
        append_line(out, r);
    }
    return out;
}

std::string cell(double v) { return format_number(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(const std::string& v) { return v; }
std::string cell(std::string_view v) { return std::string(v); }
std::string cell(const char* v) { return v; }
std::string cell(bool v) { return v ? "true" : "false"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

CsvTable time_series_table(const TimeSeries& series, const std::string& name) {
    CsvTable t({"t", name});
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        t.add_row({cell(series.times[k]), cell(series.values[k])});
    }
    return t;
}

} // namespace degwave
