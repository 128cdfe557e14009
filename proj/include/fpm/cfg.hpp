#pragma once

#include "fpm/ast.hpp"

#include <vector>

namespace fpm {

struct BasicBlock {
    std::vector<NodeId> stmts;
    std::vector<int> succs;
};

/// Intra-procedural control flow graph over statement nodes. There is exactly
/// one synthetic exit block (always the last block, empty); every statement
/// appears in exactly one block.
struct Cfg {
    NodeId function = kNoNode;
    std::vector<BasicBlock> blocks;
    int entry = 0;
    int exit = 0;

    std::vector<std::vector<int>> predecessors() const;
};

/// Structured-control-flow CFG for one FunctionDef. Switches fan out one edge
/// per case plus a no-match edge when there is no default; loops produce back
/// edges; return statements jump to the exit block.
Cfg build_cfg(const NodeTable &nodes, NodeId function);

} // namespace fpm
