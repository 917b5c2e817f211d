#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fracsch::tools {

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// In-memory CSV table: header row plus string cells, LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }

    /// Starts a row; fill it with the add overloads.
    CsvTable& row();
    CsvTable& add(double v);
    CsvTable& add(long long v);
    CsvTable& add(int v) { return add(static_cast<long long>(v)); }
    CsvTable& add(std::size_t v) { return add(static_cast<long long>(v)); }
    CsvTable& add(bool v);
    CsvTable& add(std::string_view v);
    CsvTable& add(const char* v) { return add(std::string_view(v)); }

    std::string str() const;
    /// Writes str() to path, creating parent directories. Throws std::runtime_error on I/O failure.
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Reads a header-prefixed CSV of plain (unquoted) cells.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace fracsch::tools
