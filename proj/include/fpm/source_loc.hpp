#pragma once

#include <cstdint>
#include <string>
#include <tuple>

namespace fpm {

/// A 1-based (line, column) position in a named source file. Columns count
/// bytes from the start of the line; a tab occupies one column.
struct SourceLoc {
    std::string file;
    int line = 1;
    int column = 1;

    friend bool operator==(const SourceLoc &a, const SourceLoc &b) {
        return a.line == b.line && a.column == b.column && a.file == b.file;
    }
    friend bool operator<(const SourceLoc &a, const SourceLoc &b) {
        return std::tie(a.file, a.line, a.column) < std::tie(b.file, b.line, b.column);
    }
};

std::string to_string(const SourceLoc &loc);

} // namespace fpm
