#include "fpm/cpg.hpp"

#include <algorithm>
#include <array>

namespace fpm {

namespace {
constexpr std::array<std::pair<EdgeLabel, std::string_view>, 7> kLabelNames = {{
    {EdgeLabel::Ast, "AST"},
    {EdgeLabel::Cfg, "CFG"},
    {EdgeLabel::C, "C"},
    {EdgeLabel::D, "D"},
    {EdgeLabel::F, "F"},
    {EdgeLabel::S, "S"},
    {EdgeLabel::V, "V"},
}};
} // namespace

std::string_view to_string(EdgeLabel label) {
    for (const auto &[l, name] : kLabelNames)
        if (l == label)
            return name;
    return "?";
}

std::optional<EdgeLabel> edge_label_from_string(std::string_view name) {
    for (const auto &[l, n] : kLabelNames)
        if (n == name)
            return l;
    return std::nullopt;
}

size_t Cpg::count_label(EdgeLabel label) const {
    size_t count = 0;
    for (const Edge &e : edges)
        if (e.label == label)
            ++count;
    return count;
}

bool Cpg::has_edge(NodeId src, NodeId dst, EdgeLabel label) const {
    return std::binary_search(edges.begin(), edges.end(), Edge{src, dst, label});
}

std::string Cpg::function_name(NodeId id) const {
    const AstNode &n = nodes[id];
    if (!n.mu_function.empty())
        return n.mu_function;
    if (n.enclosing_function)
        return nodes[*n.enclosing_function].name;
    return "";
}

} // namespace fpm
