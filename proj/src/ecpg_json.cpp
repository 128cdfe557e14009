#include "fpm/ecpg.hpp"

#include <json.hpp>

#include <algorithm>

namespace fpm {

using nlohmann::json;

std::string export_ecpg(const Ecpg &ecpg) {
    json doc;
    doc["version"] = 1;

    json nodes = json::array();
    for (const AstNode &n : ecpg.nodes().all()) {
        json node;
        node["id"] = n.id;
        node["kind"] = std::string(to_string(n.kind));
        node["code"] = n.code;
        node["file"] = n.loc.file;
        node["line"] = n.loc.line;
        node["column"] = n.loc.column;
        std::string fn = ecpg.base.function_name(n.id);
        if (fn.empty())
            node["function"] = nullptr;
        else
            node["function"] = fn;
        nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);

    json edges = json::array();
    ecpg.for_each_edge([&](const Edge &e) {
        json edge;
        edge["src"] = e.src;
        edge["dst"] = e.dst;
        edge["label"] = std::string(to_string(e.label));
        edges.push_back(std::move(edge));
    });
    doc["edges"] = std::move(edges);

    return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void schema_error(int version, const std::string &path, const std::string &message) {
    throw SchemaError(version, path, message);
}

const json &require(const json &obj, const char *key, const std::string &path, int version) {
    auto it = obj.find(key);
    if (it == obj.end())
        schema_error(version, path + "." + key, "missing required key");
    return *it;
}

} // namespace

Ecpg import_ecpg(const std::string &bytes) {
    json doc = json::parse(bytes, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded())
        throw SchemaError(0, "$", "not valid JSON");
    if (!doc.is_object())
        throw SchemaError(0, "$", "top level must be an object");

    int version = doc.value("version", 0);
    if (version != 1)
        throw SchemaError(version, "$.version", "unsupported schema version");

    const json &nodes = require(doc, "nodes", "$", version);
    const json &edges = require(doc, "edges", "$", version);
    if (!nodes.is_array() || !edges.is_array())
        throw SchemaError(version, "$", "'nodes' and 'edges' must be arrays");

    Ecpg g;
    // Ids must be dense (0..n-1) so that exported and imported graphs use
    // identical identifiers.
    std::vector<json> ordered(nodes.size());
    std::vector<bool> seen(nodes.size(), false);
    for (size_t i = 0; i < nodes.size(); ++i) {
        const json &n = nodes[i];
        std::string path = "$.nodes[" + std::to_string(i) + "]";
        if (!n.is_object())
            schema_error(version, path, "node must be an object");
        const json &id = require(n, "id", path, version);
        if (!id.is_number_integer())
            schema_error(version, path + ".id", "id must be an integer");
        long long v = id.get<long long>();
        if (v < 0 || v >= static_cast<long long>(nodes.size()) || seen[static_cast<size_t>(v)])
            schema_error(version, path + ".id", "ids must be unique and dense (0..n-1)");
        seen[static_cast<size_t>(v)] = true;
        ordered[static_cast<size_t>(v)] = n;
    }

    for (size_t i = 0; i < ordered.size(); ++i) {
        const json &n = ordered[i];
        std::string path = "$.nodes[id=" + std::to_string(i) + "]";
        AstNode node;
        std::string kind = require(n, "kind", path, version).get<std::string>();
        auto parsed_kind = node_kind_from_string(kind);
        if (!parsed_kind)
            schema_error(version, path + ".kind", "unknown node kind '" + kind + "'");
        node.kind = *parsed_kind;
        node.code = require(n, "code", path, version).get<std::string>();
        node.loc.file = require(n, "file", path, version).get<std::string>();
        node.loc.line = require(n, "line", path, version).get<int>();
        node.loc.column = require(n, "column", path, version).get<int>();
        if (node.loc.line < 1 || node.loc.column < 1)
            schema_error(version, path, "line and column are 1-based");
        const json &fn = require(n, "function", path, version);
        if (fn.is_string())
            node.mu_function = fn.get<std::string>();
        else if (!fn.is_null())
            schema_error(version, path + ".function", "must be a string or null");
        g.base.nodes.add(std::move(node));
    }

    std::vector<NodeId> ast_parent(g.base.nodes.size(), kNoNode);
    for (size_t i = 0; i < edges.size(); ++i) {
        const json &e = edges[i];
        std::string path = "$.edges[" + std::to_string(i) + "]";
        if (!e.is_object())
            schema_error(version, path, "edge must be an object");
        Edge edge;
        edge.src = require(e, "src", path, version).get<int>();
        edge.dst = require(e, "dst", path, version).get<int>();
        std::string label = require(e, "label", path, version).get<std::string>();
        auto parsed = edge_label_from_string(label);
        if (!parsed)
            schema_error(version, path + ".label", "unknown edge label '" + label + "'");
        edge.label = *parsed;
        if (!g.base.nodes.contains(edge.src) || !g.base.nodes.contains(edge.dst))
            schema_error(version, path, "edge endpoint does not exist");
        if (edge.label == EdgeLabel::F || edge.label == EdgeLabel::S || edge.label == EdgeLabel::V)
            g.extra.push_back(edge);
        else
            g.base.edges.push_back(edge);
        if (edge.label == EdgeLabel::Ast) {
            if (ast_parent[static_cast<size_t>(edge.dst)] == edge.src)
                continue; // duplicate edge, already attached
            if (ast_parent[static_cast<size_t>(edge.dst)] != kNoNode)
                schema_error(version, path, "node has more than one AST parent");
            ast_parent[static_cast<size_t>(edge.dst)] = edge.src;
            g.base.nodes[edge.src].children.push_back(edge.dst);
        }
    }

    // Reject cyclic AST structure; subtree walks must terminate.
    for (NodeId n = 0; n < static_cast<NodeId>(g.base.nodes.size()); ++n) {
        NodeId walker = ast_parent[static_cast<size_t>(n)];
        size_t steps = 0;
        while (walker != kNoNode) {
            if (++steps > g.base.nodes.size())
                throw SchemaError(version, "$.edges", "AST edges form a cycle");
            walker = ast_parent[static_cast<size_t>(walker)];
        }
    }

    std::sort(g.base.edges.begin(), g.base.edges.end());
    g.base.edges.erase(std::unique(g.base.edges.begin(), g.base.edges.end()),
                       g.base.edges.end());
    std::sort(g.extra.begin(), g.extra.end());
    g.extra.erase(std::unique(g.extra.begin(), g.extra.end()), g.extra.end());
    g.finalize();
    return g;
}

} // namespace fpm
