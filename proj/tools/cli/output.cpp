#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cxosc_cli {

std::string format_number(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    return os;
}

} // namespace

std::string write_table(const std::filesystem::path& dir, const std::string& stem,
                        const Table& table, const std::string& format)
{
    const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
    for (const auto& col : table.columns)
        if (col.size() != rows)
            throw std::logic_error("table columns differ in length");

    if (format == "json") {
        const std::string name = stem + ".table.json";
        Json doc;
        doc["columns"] = table.names;
        Json data = Json::array();
        for (std::size_t i = 0; i < rows; ++i) {
            Json row = Json::array();
            for (const auto& col : table.columns)
                row.push_back(col[i]);
            data.push_back(std::move(row));
        }
        doc["rows"] = std::move(data);
        write_json(dir / name, doc);
        return name;
    }

    const std::string name = stem + ".csv";
    auto os = open_output(dir / name);
    for (std::size_t c = 0; c < table.names.size(); ++c)
        os << (c ? "," : "") << table.names[c];
    os << '\n';
    std::string line;
    for (std::size_t i = 0; i < rows; ++i) {
        line.clear();
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c)
                line.push_back(',');
            line += format_number(table.columns[c][i]);
        }
        line.push_back('\n');
        os << line;
    }
    return name;
}

void write_json(const std::filesystem::path& path, const Json& doc)
{
    auto os = open_output(path);
    os << doc.dump(2) << '\n';
}

} // namespace cxosc_cli
