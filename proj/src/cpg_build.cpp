#include "fpm/dependence.hpp"

#include "fpm/diagnostics.hpp"

#include <algorithm>

namespace fpm {

std::vector<Cfg> build_all_cfgs(const Project &project) {
    std::vector<Cfg> cfgs;
    for (const Unit &unit : project.units)
        for (NodeId top : project.nodes[unit.root].children)
            if (project.nodes[top].kind == NodeKind::FunctionDef)
                cfgs.push_back(build_cfg(project.nodes, top));
    return cfgs;
}

Cpg assemble_cpg(const Project &project, const std::vector<Cfg> &cfgs, std::vector<Edge> control,
                 std::vector<Edge> data) {
    Cpg cpg;
    cpg.nodes = project.nodes;

    std::vector<Edge> edges;
    for (const AstNode &n : cpg.nodes.all())
        for (NodeId child : n.children)
            edges.push_back(Edge{n.id, child, EdgeLabel::Ast});

    // Statement-level control flow: function entry to first statement, then
    // along and across basic blocks.
    for (const Cfg &cfg : cfgs) {
        for (size_t b = 0; b < cfg.blocks.size(); ++b) {
            const auto &stmts = cfg.blocks[b].stmts;
            for (size_t i = 0; i + 1 < stmts.size(); ++i)
                edges.push_back(Edge{stmts[i], stmts[i + 1], EdgeLabel::Cfg});
            if (stmts.empty())
                continue;
            for (int s : cfg.blocks[b].succs) {
                const auto &next = cfg.blocks[static_cast<size_t>(s)].stmts;
                if (!next.empty())
                    edges.push_back(Edge{stmts.back(), next.front(), EdgeLabel::Cfg});
            }
        }
        const auto &entry_stmts = cfg.blocks[static_cast<size_t>(cfg.entry)].stmts;
        if (!entry_stmts.empty())
            edges.push_back(Edge{cfg.function, entry_stmts.front(), EdgeLabel::Cfg});
    }

    edges.insert(edges.end(), control.begin(), control.end());
    edges.insert(edges.end(), data.begin(), data.end());

    for (const Edge &e : edges)
        if (!cpg.nodes.contains(e.src) || !cpg.nodes.contains(e.dst))
            throw DanglingEdge("edge " + std::string(to_string(e.label)) + " " +
                               std::to_string(e.src) + "->" + std::to_string(e.dst) +
                               " references an unknown node");

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    cpg.edges = std::move(edges);
    return cpg;
}

} // namespace fpm
