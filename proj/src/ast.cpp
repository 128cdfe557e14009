#include "fpm/ast.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace fpm {

namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 21> kKindNames = {{
    {NodeKind::TranslationUnit, "TranslationUnit"},
    {NodeKind::FunctionDef, "FunctionDef"},
    {NodeKind::Param, "Param"},
    {NodeKind::VarDecl, "VarDecl"},
    {NodeKind::Assign, "Assign"},
    {NodeKind::Call, "Call"},
    {NodeKind::Arg, "Arg"},
    {NodeKind::If, "If"},
    {NodeKind::Else, "Else"},
    {NodeKind::Switch, "Switch"},
    {NodeKind::Case, "Case"},
    {NodeKind::Default, "Default"},
    {NodeKind::Block, "Block"},
    {NodeKind::While, "While"},
    {NodeKind::For, "For"},
    {NodeKind::Return, "Return"},
    {NodeKind::BinaryOp, "BinaryOp"},
    {NodeKind::UnaryOp, "UnaryOp"},
    {NodeKind::Identifier, "Identifier"},
    {NodeKind::Literal, "Literal"},
    {NodeKind::MemberAccess, "MemberAccess"},
}};

} // namespace

std::string_view to_string(NodeKind kind) {
    for (const auto &[k, name] : kKindNames)
        if (k == kind)
            return name;
    return "?";
}

std::optional<NodeKind> node_kind_from_string(std::string_view name) {
    for (const auto &[k, n] : kKindNames)
        if (n == name)
            return k;
    return std::nullopt;
}

int AstNode::end_line() const {
    return loc.line + static_cast<int>(std::count(code.begin(), code.end(), '\n'));
}

bool is_statement_kind(NodeKind kind) {
    switch (kind) {
    case NodeKind::VarDecl:
    case NodeKind::Assign:
    case NodeKind::Call:
    case NodeKind::If:
    case NodeKind::Switch:
    case NodeKind::While:
    case NodeKind::For:
    case NodeKind::Return:
    case NodeKind::Block:
        return true;
    default:
        return false;
    }
}

bool is_scope_kind(NodeKind kind) {
    switch (kind) {
    case NodeKind::Block:
    case NodeKind::Else:
    case NodeKind::Case:
    case NodeKind::Default:
    case NodeKind::FunctionDef:
        return true;
    default:
        return false;
    }
}

NodeId NodeTable::add(AstNode node) {
    node.id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(std::move(node));
    return nodes_.back().id;
}

} // namespace fpm
