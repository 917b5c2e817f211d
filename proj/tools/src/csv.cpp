#include "fracsch_tools/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracsch::tools {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
    if (!rows_.empty() && rows_.back().size() != header_.size())
        throw std::logic_error("CsvTable: previous row has " + std::to_string(rows_.back().size()) + " cells, expected " +
                               std::to_string(header_.size()));
    rows_.emplace_back();
    rows_.back().reserve(header_.size());
    return *this;
}

CsvTable& CsvTable::add(double v) {
    rows_.back().push_back(format_double(v));
    return *this;
}

CsvTable& CsvTable::add(long long v) {
    rows_.back().push_back(std::to_string(v));
    return *this;
}

CsvTable& CsvTable::add(bool v) {
    rows_.back().push_back(v ? "true" : "false");
    return *this;
}

CsvTable& CsvTable::add(std::string_view v) {
    if (v.find_first_of(",\"\n") != std::string_view::npos) {
        std::string q = "\"";
        for (char c : v) {
            if (c == '"') q += '"';
            q += c;
        }
        rows_.back().push_back(q + "\"");
    } else {
        rows_.back().emplace_back(v);
    }
    return *this;
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    const std::string s = str();
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace fracsch::tools
