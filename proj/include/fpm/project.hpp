#pragma once

#include "fpm/ast.hpp"
#include "fpm/diagnostics.hpp"
#include "fpm/symbols.hpp"

#include <string>
#include <vector>

namespace fpm {

struct SourceFile {
    std::string path; // as referenced by graphs and reports
    std::string content;
};

/// A parsed-and-resolved MiniC project: all ASTs share one node table, the
/// symbol table spans files. Immutable once built.
struct Project {
    std::vector<SourceFile> files;
    std::vector<Unit> units;
    NodeTable nodes;
    SymbolTable symbols;
    std::vector<Diagnostic> parse_diagnostics;

    const SourceFile *find_file(const std::string &path) const;
};

/// Parse every file (sorted by path for determinism) and resolve symbols.
/// Files that fail to parse contribute whatever parsed before the error.
Project analyze_project(std::vector<SourceFile> files);

/// All .c files under `root`, recursively, with paths relative to `root`,
/// sorted.
std::vector<SourceFile> read_project_dir(const std::string &root);

} // namespace fpm
