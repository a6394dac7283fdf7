#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace debrisim {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads a whitespace-delimited text table; '#' comments, blank lines skipped.
/// Returns rows of string fields with 1-based source line numbers.
struct TabRow {
    std::vector<std::string> fields;
    int line = 0;
};
std::vector<TabRow> read_table(const std::string& path);

double parse_double(const TabRow& row, std::size_t idx, const std::string& what);
int parse_int(const TabRow& row, std::size_t idx, const std::string& what);

/// printf into a std::string.
std::string strprintf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace debrisim
