#include "fpm/project.hpp"

#include "fpm/parser.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fpm {

const SourceFile *Project::find_file(const std::string &path) const {
    for (const auto &f : files)
        if (f.path == path)
            return &f;
    return nullptr;
}

Project analyze_project(std::vector<SourceFile> files) {
    std::sort(files.begin(), files.end(),
              [](const SourceFile &a, const SourceFile &b) { return a.path < b.path; });

    Project project;
    project.files = std::move(files);
    for (const SourceFile &file : project.files) {
        ParseResult parsed = parse_translation_unit(file.content, file.path, project.nodes);
        project.units.push_back(Unit{file.path, parsed.root});
        project.parse_diagnostics.insert(project.parse_diagnostics.end(),
                                         parsed.diagnostics.begin(), parsed.diagnostics.end());
    }
    project.symbols = build_symbol_tables(project.units, project.nodes);
    return project;
}

std::vector<SourceFile> read_project_dir(const std::string &root) {
    namespace fs = std::filesystem;
    std::vector<SourceFile> files;
    if (!fs::exists(root))
        return files;
    for (const auto &entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".c")
            continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        files.push_back(SourceFile{fs::relative(entry.path(), root).generic_string(), buf.str()});
    }
    std::sort(files.begin(), files.end(),
              [](const SourceFile &a, const SourceFile &b) { return a.path < b.path; });
    return files;
}

} // namespace fpm
