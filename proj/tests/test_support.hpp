#pragma once

#include "fpm/project.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fpm::test {

inline std::string fixture_dir() { return FPM_FIXTURE_DIR; }

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open fixture " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Project analyze_fixture_dir(const std::string &name) {
    return analyze_project(read_project_dir(fixture_dir() + "/" + name));
}

inline Project analyze_source(const std::string &source, const std::string &path = "t.c") {
    return analyze_project({SourceFile{path, source}});
}

/// All node ids of a given kind, in id order.
inline std::vector<NodeId> nodes_of_kind(const NodeTable &nodes, NodeKind kind) {
    std::vector<NodeId> out;
    for (const auto &n : nodes.all())
        if (n.kind == kind)
            out.push_back(n.id);
    return out;
}

inline NodeId find_node(const NodeTable &nodes, NodeKind kind, int line,
                        const std::string &file = "") {
    for (const auto &n : nodes.all())
        if (n.kind == kind && n.loc.line == line && (file.empty() || n.loc.file == file))
            return n.id;
    return kNoNode;
}

/// Field-by-field textual dump, used for determinism checks.
inline std::string dump_ast(const NodeTable &nodes) {
    std::ostringstream os;
    for (const auto &n : nodes.all()) {
        os << n.id << ' ' << to_string(n.kind) << ' ' << n.loc.file << ':' << n.loc.line << ':'
           << n.loc.column << " name=" << n.name << " op=" << n.op << " type=" << n.type_text
           << " extern=" << n.is_extern << " init=" << n.has_init << " fn="
           << (n.enclosing_function ? *n.enclosing_function : kNoNode) << " children=[";
        for (NodeId c : n.children)
            os << c << ',';
        os << "] code=" << n.code << '\n';
    }
    return os.str();
}

} // namespace fpm::test
