#pragma once

#include "fpm/ast.hpp"
#include "fpm/diagnostics.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fpm {

struct ParseResult {
    NodeId root = kNoNode; // TranslationUnit
    std::vector<Diagnostic> diagnostics;
};

/// Parse one MiniC translation unit into `nodes`. Recovers at top-level
/// granularity: a construct that fails to parse is reported as a diagnostic
/// and skipped, everything else still contributes to the tree. Arbitrary
/// bytes never crash the parser; at worst the unit is empty.
ParseResult parse_translation_unit(std::string_view source, const std::string &filename,
                                   NodeTable &nodes);

/// For-loop header slots. Absent parts are kNoNode.
struct ForParts {
    NodeId init = kNoNode;
    NodeId cond = kNoNode;
    NodeId step = kNoNode;
    NodeId body = kNoNode;
};
ForParts for_parts(const NodeTable &nodes, NodeId for_node);

} // namespace fpm
