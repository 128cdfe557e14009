#pragma once

#include "fpm/source_loc.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpm {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

enum class NodeKind {
    TranslationUnit,
    FunctionDef,
    Param,
    VarDecl,
    Assign,
    Call,
    Arg,
    If,
    Else,
    Switch,
    Case,
    Default,
    Block,
    While,
    For,
    Return,
    BinaryOp,
    UnaryOp,
    Identifier,
    Literal,
    MemberAccess,
};

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view name);

/// One AST node. `code` is the verbatim source span of the node, `loc` the
/// position of its first byte. Ids are unique across a whole project and the
/// children lists form a forest.
struct AstNode {
    NodeId id = kNoNode;
    NodeKind kind = NodeKind::TranslationUnit;
    std::string code;
    SourceLoc loc;
    std::vector<NodeId> children;
    std::optional<NodeId> enclosing_function;

    // Kind-specific payload. `name` holds the identifier text for
    // Identifier/VarDecl/Param/FunctionDef, the callee for Call and the member
    // for MemberAccess. `op` holds the operator spelling for
    // Assign/BinaryOp/UnaryOp/MemberAccess.
    std::string name;
    std::string op;
    std::string type_text;
    bool is_extern = false;
    bool has_init = false;

    // FUNCTION property for nodes that came from an imported graph, where
    // enclosing-function ids are not available. Parsed nodes leave this empty
    // and derive the property from enclosing_function.
    std::string mu_function;

    /// Last line covered by this node's source span.
    int end_line() const;
};

/// A parsed translation unit: source path plus its TranslationUnit root.
struct Unit {
    std::string path;
    NodeId root = kNoNode;
};

/// Statement-shaped kinds: nodes that occupy a slot in a block body and act
/// as units of control flow and dependence.
bool is_statement_kind(NodeKind kind);

/// Scope containers for structural (S) edges: nodes whose immediate children
/// live in the scope the node defines.
bool is_scope_kind(NodeKind kind);

/// Flat node store shared by the front end and the graphs built on top of it.
class NodeTable {
public:
    NodeId add(AstNode node);
    const AstNode &operator[](NodeId id) const { return nodes_[static_cast<size_t>(id)]; }
    AstNode &operator[](NodeId id) { return nodes_[static_cast<size_t>(id)]; }
    size_t size() const { return nodes_.size(); }
    bool contains(NodeId id) const { return id >= 0 && static_cast<size_t>(id) < nodes_.size(); }

    /// Drop nodes created after a checkpoint (parser error recovery).
    void truncate(size_t size) { nodes_.resize(size); }

    const std::vector<AstNode> &all() const { return nodes_; }

    template <typename Fn>
    void visit_subtree(NodeId root, Fn &&fn) const {
        fn(root);
        for (NodeId child : nodes_[static_cast<size_t>(root)].children)
            visit_subtree(child, fn);
    }

private:
    std::vector<AstNode> nodes_;
};

} // namespace fpm
