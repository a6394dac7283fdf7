#include "debrisim/util/tabio.hpp"

#include <cstdarg>
#include <fstream>
#include <sstream>

namespace debrisim {

std::vector<TabRow> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<TabRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        TabRow row;
        row.line = lineno;
        std::string field;
        while (ss >> field) row.fields.push_back(field);
        if (!row.fields.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

double parse_double(const TabRow& row, std::size_t idx, const std::string& what) {
    if (idx >= row.fields.size())
        throw IoError("line " + std::to_string(row.line) + ": missing field '" + what + "'");
    try {
        std::size_t pos = 0;
        const double d = std::stod(row.fields[idx], &pos);
        if (pos != row.fields[idx].size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw IoError("line " + std::to_string(row.line) + ": field '" + what +
                      "' is not a number: '" + row.fields[idx] + "'");
    }
}

int parse_int(const TabRow& row, std::size_t idx, const std::string& what) {
    if (idx >= row.fields.size())
        throw IoError("line " + std::to_string(row.line) + ": missing field '" + what + "'");
    try {
        std::size_t pos = 0;
        const int i = std::stoi(row.fields[idx], &pos);
        if (pos != row.fields[idx].size()) throw std::invalid_argument("");
        return i;
    } catch (const std::exception&) {
        throw IoError("line " + std::to_string(row.line) + ": field '" + what +
                      "' is not an integer: '" + row.fields[idx] + "'");
    }
}

std::string strprintf(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    va_list args2;
    va_copy(args2, args);
    const int n = std::vsnprintf(nullptr, 0, fmt, args);
    va_end(args);
    std::string out(static_cast<std::size_t>(n), '\0');
    std::vsnprintf(out.data(), out.size() + 1, fmt, args2);
    va_end(args2);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace debrisim
