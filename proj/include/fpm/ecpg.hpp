#pragma once

#include "fpm/cpg.hpp"
#include "fpm/dependence.hpp"
#include "fpm/diagnostics.hpp"
#include "fpm/project.hpp"

#include <string>
#include <vector>

namespace fpm {

/// Call dependence edges (label F): call site -> callee entry, and i-th
/// argument -> i-th parameter. Unresolved call targets contribute nothing;
/// arity mismatches pair the first min(#args, #params) arguments and are
/// reported as diagnostics.
std::vector<Edge> add_call_edges(const Cpg &cpg, const SymbolTable &symbols,
                                 std::vector<Diagnostic> *diagnostics = nullptr);

/// Structural dependence edges (label S):
///   - if statement -> its then block / else branch,
///   - switch statement -> each case/default clause,
///   - scope container -> each immediately nested statement or block.
std::vector<Edge> add_structural_edges(const Cpg &cpg);

/// Variable dependence edges (label V): declaration -> every resolved use,
/// including cross-file globals. Each use has at most one incoming V edge.
std::vector<Edge> add_variable_edges(const Cpg &cpg, const SymbolTable &symbols);

/// The extended code property graph: the base CPG plus F/S/V edges, with a
/// unified adjacency index for traversal.
class Ecpg {
public:
    Cpg base;
    std::vector<Edge> extra; // F, S, V; sorted, disjoint from base by label

    /// Rebuild the adjacency index; call after mutating base/extra.
    void finalize();

    struct Neighbor {
        NodeId node;
        EdgeLabel label;
    };
    const std::vector<Neighbor> &in_edges(NodeId id) const {
        return in_adj_[static_cast<size_t>(id)];
    }
    const std::vector<Neighbor> &out_edges(NodeId id) const {
        return out_adj_[static_cast<size_t>(id)];
    }

    const NodeTable &nodes() const { return base.nodes; }
    size_t count_label(EdgeLabel label) const;
    bool has_extra_edge(NodeId src, NodeId dst, EdgeLabel label) const;

    /// All edges, base then extra (both in canonical order).
    template <typename Fn>
    void for_each_edge(Fn &&fn) const {
        for (const Edge &e : base.edges)
            fn(e);
        for (const Edge &e : extra)
            fn(e);
    }

private:
    std::vector<std::vector<Neighbor>> in_adj_;
    std::vector<std::vector<Neighbor>> out_adj_;
};

struct EcpgBuild {
    Ecpg graph;
    std::vector<Diagnostic> diagnostics; // parse + resolution + edge-building
};

/// Front end to graph: parse, resolve, run the dependence builders and the
/// three edge adders. Per-file parse failures become diagnostics; the build
/// never fails outright because of one bad file.
EcpgBuild build_ecpg(const Project &project);
EcpgBuild build_ecpg_from_files(std::vector<SourceFile> files);

/// eCPG-JSON v1 interchange.
std::string export_ecpg(const Ecpg &ecpg);
Ecpg import_ecpg(const std::string &bytes);

} // namespace fpm
