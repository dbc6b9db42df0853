#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace cxosc_cli {

using Json = nlohmann::ordered_json;

/// Column-major numeric table.
struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
};

/// 17 significant digits, round-trip exact.
std::string format_number(double value);

/// Writes `<dir>/<stem>.csv` or `<dir>/<stem>.table.json`; returns the file name.
std::string write_table(const std::filesystem::path& dir, const std::string& stem,
                        const Table& table, const std::string& format);

void write_json(const std::filesystem::path& path, const Json& doc);

} // namespace cxosc_cli
