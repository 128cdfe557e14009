#pragma once

#include "fpm/ast.hpp"
#include "fpm/diagnostics.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace fpm {

enum class SymbolKind { Function, GlobalVariable, LocalVariable, Parameter };

std::string_view to_string(SymbolKind kind);

struct Symbol {
    int id = -1;
    std::string name;
    SymbolKind kind = SymbolKind::GlobalVariable;
    NodeId def_node = kNoNode;      // FunctionDef, defining VarDecl, or Param
    std::vector<NodeId> decl_nodes; // extern declarations (globals only)

    bool has_definition() const { return def_node != kNoNode; }
    /// Node that stands for the symbol in V edges: the definition when one
    /// exists, otherwise the first declaration.
    NodeId rep_node() const { return def_node != kNoNode ? def_node : decl_nodes.front(); }
};

/// Project-wide symbol information: every Identifier and Call node is mapped
/// to exactly one symbol or recorded as unresolved. Unresolved references are
/// kept (real SAST targets rarely parse completely), never fatal.
struct SymbolTable {
    std::vector<Symbol> symbols;
    std::unordered_map<NodeId, int> resolution;        // Identifier/Call node -> symbol id
    std::unordered_map<std::string, int> project_scope; // functions + globals by name
    std::vector<NodeId> unresolved;
    std::vector<Diagnostic> diagnostics;

    /// Resolution for an Identifier or Call node; nullptr when unresolved.
    const Symbol *resolve(NodeId use) const;

    /// Project-level (function / global variable) symbol by name.
    const Symbol *find_project_symbol(const std::string &name) const;
};

/// Two-pass resolution: project-level definitions and extern declarations
/// first (so calls and globals resolve across files and ahead of their
/// definition), then a scoped walk of each function body.
SymbolTable build_symbol_tables(const std::vector<Unit> &units, const NodeTable &nodes);

} // namespace fpm
