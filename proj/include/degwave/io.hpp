#pragma once

// Deterministic CSV and file output. Numbers are printed with %.17g so a
// value survives a round trip and identical runs give identical bytes.

#include "degwave/spaces.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace degwave {

/// %.17g, with "nan", "inf" and "-inf" spelled out.
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    /// Appends a row; ArgumentError when the width differs from the header.
    void add_row(std::vector<std::string> cells);

    const std::vector<std::string>& header() const noexcept { return header_; }
    std::size_t rows() const noexcept { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string cell(double v);
std::string cell(std::size_t v);
std::string cell(const std::string& v);
std::string cell(std::string_view v);
std::string cell(const char* v);
std::string cell(bool v);

/// Writes `text`, creating parent directories; failures raise
/// std::runtime_error naming the path.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Two-column CSV (t, name).
CsvTable time_series_table(const TimeSeries& series, const std::string& name);

} // namespace degwave
