#include "fpm/ecpg.hpp"

#include <algorithm>

namespace fpm {

std::vector<Edge> add_call_edges(const Cpg &cpg, const SymbolTable &symbols,
                                 std::vector<Diagnostic> *diagnostics) {
    std::vector<Edge> edges;
    for (const AstNode &n : cpg.nodes.all()) {
        if (n.kind != NodeKind::Call)
            continue;
        const Symbol *callee = symbols.resolve(n.id);
        if (!callee || callee->kind != SymbolKind::Function || !callee->has_definition())
            continue; // unresolved targets were already diagnosed during resolution
        NodeId entry = callee->def_node;
        edges.push_back(Edge{n.id, entry, EdgeLabel::F});

        std::vector<NodeId> params;
        for (NodeId child : cpg.nodes[entry].children)
            if (cpg.nodes[child].kind == NodeKind::Param)
                params.push_back(child);

        const std::vector<NodeId> &args = n.children; // all children of Call are Arg
        if (args.size() != params.size() && diagnostics)
            diagnostics->push_back(
                {Diagnostic::Kind::ArityMismatch, n.loc,
                 "call to '" + n.name + "' passes " + std::to_string(args.size()) +
                     " argument(s), expected " + std::to_string(params.size())});
        size_t pairs = std::min(args.size(), params.size());
        for (size_t i = 0; i < pairs; ++i)
            edges.push_back(Edge{args[i], params[i], EdgeLabel::F});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::vector<Edge> add_structural_edges(const Cpg &cpg) {
    std::vector<Edge> edges;
    for (const AstNode &n : cpg.nodes.all()) {
        switch (n.kind) {
        case NodeKind::If:
            edges.push_back(Edge{n.id, n.children[1], EdgeLabel::S}); // then block
            if (n.children.size() > 2)
                edges.push_back(Edge{n.id, n.children[2], EdgeLabel::S}); // else branch
            break;
        case NodeKind::Switch:
            for (size_t i = 1; i < n.children.size(); ++i)
                edges.push_back(Edge{n.id, n.children[i], EdgeLabel::S});
            break;
        case NodeKind::Block:
        case NodeKind::Else:
        case NodeKind::Case:
        case NodeKind::Default:
        case NodeKind::FunctionDef:
            for (NodeId child : n.children)
                if (is_statement_kind(cpg.nodes[child].kind))
                    edges.push_back(Edge{n.id, child, EdgeLabel::S});
            break;
        default:
            break;
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::vector<Edge> add_variable_edges(const Cpg &cpg, const SymbolTable &symbols) {
    std::vector<Edge> edges;
    for (const AstNode &n : cpg.nodes.all()) {
        if (n.kind != NodeKind::Identifier)
            continue;
        const Symbol *sym = symbols.resolve(n.id);
        if (!sym || sym->kind == SymbolKind::Function)
            continue;
        edges.push_back(Edge{sym->rep_node(), n.id, EdgeLabel::V});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

void Ecpg::finalize() {
    in_adj_.assign(base.nodes.size(), {});
    out_adj_.assign(base.nodes.size(), {});
    for_each_edge([&](const Edge &e) {
        out_adj_[static_cast<size_t>(e.src)].push_back({e.dst, e.label});
        in_adj_[static_cast<size_t>(e.dst)].push_back({e.src, e.label});
    });
}

size_t Ecpg::count_label(EdgeLabel label) const {
    size_t count = base.count_label(label);
    for (const Edge &e : extra)
        if (e.label == label)
            ++count;
    return count;
}

bool Ecpg::has_extra_edge(NodeId src, NodeId dst, EdgeLabel label) const {
    return std::binary_search(extra.begin(), extra.end(), Edge{src, dst, label});
}

EcpgBuild build_ecpg(const Project &project) {
    EcpgBuild result;
    result.diagnostics = project.parse_diagnostics;
    result.diagnostics.insert(result.diagnostics.end(), project.symbols.diagnostics.begin(),
                              project.symbols.diagnostics.end());

    std::vector<Cfg> cfgs = build_all_cfgs(project);
    std::vector<Edge> control;
    std::vector<Edge> data;
    for (const Cfg &cfg : cfgs) {
        auto c = control_dependence(cfg, project.nodes);
        auto d = data_dependence(cfg, project.nodes, project.symbols);
        control.insert(control.end(), c.begin(), c.end());
        data.insert(data.end(), d.begin(), d.end());
    }

    Ecpg g;
    g.base = assemble_cpg(project, cfgs, std::move(control), std::move(data));

    std::vector<Edge> extra = add_call_edges(g.base, project.symbols, &result.diagnostics);
    std::vector<Edge> s = add_structural_edges(g.base);
    std::vector<Edge> v = add_variable_edges(g.base, project.symbols);
    extra.insert(extra.end(), s.begin(), s.end());
    extra.insert(extra.end(), v.begin(), v.end());
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    g.extra = std::move(extra);

    g.finalize();
    result.graph = std::move(g);
    return result;
}

EcpgBuild build_ecpg_from_files(std::vector<SourceFile> files) {
    Project project = analyze_project(std::move(files));
    return build_ecpg(project);
}

} // namespace fpm
