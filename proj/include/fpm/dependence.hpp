#pragma once

#include "fpm/cfg.hpp"
#include "fpm/cpg.hpp"
#include "fpm/project.hpp"
#include "fpm/symbols.hpp"

#include <vector>

namespace fpm {

/// Control dependence edges (label C), predicate statement -> dependent
/// statement, computed from immediate post-dominators. Self-dependences of
/// loop predicates are not emitted.
std::vector<Edge> control_dependence(const Cfg &cfg, const NodeTable &nodes);

/// Data dependence edges (label D), defining statement -> using statement,
/// via reaching definitions. Parameters act as definitions at function entry.
/// Writes through arrays, members and address-taken call arguments are
/// may-defs: they generate edges but kill nothing.
std::vector<Edge> data_dependence(const Cfg &cfg, const NodeTable &nodes,
                                  const SymbolTable &symbols);

/// Per-statement definition/use sets over resolved symbols (exposed for the
/// dependence oracles in the test suite).
struct StmtEffects {
    struct Def {
        int symbol;
        bool must;
    };
    std::vector<Def> defs;
    std::vector<int> uses;
};
StmtEffects stmt_effects(const NodeTable &nodes, const SymbolTable &symbols, NodeId stmt);

/// Immediate post-dominator of every block (index into cfg.blocks), -1 where
/// undefined (blocks that cannot reach exit).
std::vector<int> immediate_post_dominators(const Cfg &cfg);

/// Per-function CFGs for every function in the project, in node-id order.
std::vector<Cfg> build_all_cfgs(const Project &project);

/// Merge AST structure, statement-level control flow and the dependence edge
/// sets into one graph with total source metadata. Throws DanglingEdge if a
/// dependence edge mentions an unknown node (an internal bug, not bad input).
Cpg assemble_cpg(const Project &project, const std::vector<Cfg> &cfgs,
                 std::vector<Edge> control, std::vector<Edge> data);

} // namespace fpm
