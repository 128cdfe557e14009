#include "fpm/symbols.hpp"

#include "fpm/parser.hpp"

namespace fpm {

std::string_view to_string(SymbolKind kind) {
    switch (kind) {
    case SymbolKind::Function: return "function";
    case SymbolKind::GlobalVariable: return "global_variable";
    case SymbolKind::LocalVariable: return "local_variable";
    case SymbolKind::Parameter: return "parameter";
    }
    return "?";
}

const Symbol *SymbolTable::resolve(NodeId use) const {
    auto it = resolution.find(use);
    return it == resolution.end() ? nullptr : &symbols[static_cast<size_t>(it->second)];
}

const Symbol *SymbolTable::find_project_symbol(const std::string &name) const {
    auto it = project_scope.find(name);
    return it == project_scope.end() ? nullptr : &symbols[static_cast<size_t>(it->second)];
}

namespace {

class Resolver {
public:
    Resolver(const NodeTable &nodes, SymbolTable &table) : nodes_(nodes), table_(table) {}

    void run(const std::vector<Unit> &units) {
        for (const Unit &unit : units)
            collect_project_symbols(unit.root);
        for (const Unit &unit : units) {
            for (NodeId top : nodes_[unit.root].children)
                if (nodes_[top].kind == NodeKind::FunctionDef)
                    resolve_function(top);
                else if (nodes_[top].kind == NodeKind::VarDecl)
                    resolve_children_of(top); // global initializer expressions
        }
    }

private:
    const NodeTable &nodes_;
    SymbolTable &table_;
    std::vector<std::unordered_map<std::string, int>> scopes_;

    int new_symbol(const std::string &name, SymbolKind kind, NodeId def, NodeId decl) {
        Symbol s;
        s.id = static_cast<int>(table_.symbols.size());
        s.name = name;
        s.kind = kind;
        s.def_node = def;
        if (decl != kNoNode)
            s.decl_nodes.push_back(decl);
        table_.symbols.push_back(std::move(s));
        return table_.symbols.back().id;
    }

    void duplicate_definition(const std::string &name, NodeId first, NodeId second) {
        table_.diagnostics.push_back(
            {Diagnostic::Kind::DuplicateDefinition, nodes_[second].loc,
             "duplicate definition of '" + name + "' (already defined at " +
                 to_string(nodes_[first].loc) + ")"});
    }

    void collect_project_symbols(NodeId root) {
        for (NodeId top : nodes_[root].children) {
            const AstNode &n = nodes_[top];
            if (n.kind == NodeKind::FunctionDef) {
                auto it = table_.project_scope.find(n.name);
                if (it != table_.project_scope.end()) {
                    Symbol &existing = table_.symbols[static_cast<size_t>(it->second)];
                    if (existing.has_definition())
                        duplicate_definition(n.name, existing.def_node, top);
                    else
                        existing.def_node = top; // extern var then function? keep first come
                } else {
                    table_.project_scope[n.name] =
                        new_symbol(n.name, SymbolKind::Function, top, kNoNode);
                }
            } else if (n.kind == NodeKind::VarDecl) {
                auto it = table_.project_scope.find(n.name);
                if (it == table_.project_scope.end()) {
                    int id = n.is_extern ? new_symbol(n.name, SymbolKind::GlobalVariable, kNoNode, top)
                                         : new_symbol(n.name, SymbolKind::GlobalVariable, top, kNoNode);
                    table_.project_scope[n.name] = id;
                } else {
                    Symbol &existing = table_.symbols[static_cast<size_t>(it->second)];
                    if (n.is_extern) {
                        existing.decl_nodes.push_back(top);
                    } else if (existing.has_definition()) {
                        duplicate_definition(n.name, existing.def_node, top);
                    } else {
                        existing.def_node = top;
                    }
                }
            }
        }
    }

    void resolve_function(NodeId fn) {
        scopes_.clear();
        scopes_.emplace_back();
        const AstNode &f = nodes_[fn];
        for (NodeId child : f.children) {
            if (nodes_[child].kind == NodeKind::Param)
                declare_local(child, SymbolKind::Parameter);
        }
        visit(f.children.back()); // body block
        scopes_.clear();
    }

    void declare_local(NodeId decl, SymbolKind kind) {
        const std::string &name = nodes_[decl].name;
        auto &scope = scopes_.back();
        auto it = scope.find(name);
        if (it != scope.end()) {
            duplicate_definition(name, table_.symbols[static_cast<size_t>(it->second)].def_node, decl);
            return;
        }
        scope[name] = new_symbol(name, kind, decl, kNoNode);
    }

    int lookup(const std::string &name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end())
                return found->second;
        }
        auto global = table_.project_scope.find(name);
        return global == table_.project_scope.end() ? -1 : global->second;
    }

    void resolve_children_of(NodeId id) {
        for (NodeId child : nodes_[id].children)
            visit(child);
    }

    void visit(NodeId id) {
        const AstNode &n = nodes_[id];
        switch (n.kind) {
        case NodeKind::Block:
        case NodeKind::Switch:
            scopes_.emplace_back();
            resolve_children_of(id);
            scopes_.pop_back();
            return;
        case NodeKind::For:
            scopes_.emplace_back(); // a for-init declaration scopes over the loop
            resolve_children_of(id);
            scopes_.pop_back();
            return;
        case NodeKind::VarDecl:
            // C declaration-point rule: the name is visible in its own
            // initializer.
            declare_local(id, SymbolKind::LocalVariable);
            resolve_children_of(id);
            return;
        case NodeKind::Identifier: {
            int sym = lookup(n.name);
            if (sym >= 0) {
                table_.resolution[id] = sym;
            } else {
                table_.unresolved.push_back(id);
                table_.diagnostics.push_back({Diagnostic::Kind::UnresolvedIdentifier, n.loc,
                                               "unresolved identifier '" + n.name + "'"});
            }
            return;
        }
        case NodeKind::Call: {
            int sym = lookup(n.name);
            if (sym >= 0 && table_.symbols[static_cast<size_t>(sym)].kind == SymbolKind::Function) {
                table_.resolution[id] = sym;
            } else {
                table_.unresolved.push_back(id);
                table_.diagnostics.push_back({Diagnostic::Kind::UnresolvedCall, n.loc,
                                               "call to unresolved function '" + n.name + "'"});
            }
            resolve_children_of(id);
            return;
        }
        default:
            resolve_children_of(id);
            return;
        }
    }
};

} // namespace

SymbolTable build_symbol_tables(const std::vector<Unit> &units, const NodeTable &nodes) {
    SymbolTable table;
    Resolver(nodes, table).run(units);
    return table;
}

} // namespace fpm
