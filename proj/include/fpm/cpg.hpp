#pragma once

#include "fpm/ast.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpm {

enum class EdgeLabel { Ast, Cfg, C, D, F, S, V };

std::string_view to_string(EdgeLabel label);
std::optional<EdgeLabel> edge_label_from_string(std::string_view name);

struct Edge {
    NodeId src = kNoNode;
    NodeId dst = kNoNode;
    EdgeLabel label = EdgeLabel::Ast;

    friend bool operator==(const Edge &a, const Edge &b) {
        return a.src == b.src && a.dst == b.dst && a.label == b.label;
    }
    friend bool operator<(const Edge &a, const Edge &b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.label != b.label) return a.label < b.label;
        return a.dst < b.dst;
    }
};

/// Code property graph: AST nodes, plus AST / CFG / control- / data-dependence
/// edges, with per-node source metadata (file, line, column, code, function).
struct Cpg {
    NodeTable nodes;
    std::vector<Edge> edges; // deduped, sorted by (src, label, dst)

    size_t count_label(EdgeLabel label) const;
    bool has_edge(NodeId src, NodeId dst, EdgeLabel label) const;

    /// Name of the function a node belongs to; empty for file-scope nodes.
    std::string function_name(NodeId id) const;
};

} // namespace fpm
