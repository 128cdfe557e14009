#include "fpm/slicer.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fpm {

std::string_view to_string(SliceDirection direction) {
    switch (direction) {
    case SliceDirection::Backward: return "backward";
    case SliceDirection::Forward: return "forward";
    case SliceDirection::Both: return "both";
    }
    return "?";
}

std::optional<SliceDirection> slice_direction_from_string(std::string_view name) {
    if (name == "backward") return SliceDirection::Backward;
    if (name == "forward") return SliceDirection::Forward;
    if (name == "both") return SliceDirection::Both;
    return std::nullopt;
}

LabelSet LabelSet::of(std::initializer_list<EdgeLabel> labels) {
    LabelSet set;
    for (EdgeLabel l : labels)
        set.mask |= 1u << static_cast<unsigned>(l);
    return set;
}

LabelSet LabelSet::slicing_default() {
    return of({EdgeLabel::C, EdgeLabel::D, EdgeLabel::F, EdgeLabel::S, EdgeLabel::V});
}

std::string LabelSet::to_string() const {
    std::string out;
    for (EdgeLabel l : {EdgeLabel::C, EdgeLabel::D, EdgeLabel::F, EdgeLabel::S, EdgeLabel::V,
                        EdgeLabel::Cfg}) {
        if (!contains(l))
            continue;
        if (!out.empty())
            out += ',';
        out += fpm::to_string(l);
    }
    return out;
}

std::optional<LabelSet> parse_label_set(std::string_view text) {
    LabelSet set;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view item =
            text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        if (!item.empty()) {
            auto label = edge_label_from_string(std::string(item));
            if (!label || *label == EdgeLabel::Ast)
                return std::nullopt;
            set.mask |= 1u << static_cast<unsigned>(*label);
        }
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return set.mask == 0 ? std::nullopt : std::optional<LabelSet>(set);
}

std::set<int> Slice::line_set(const std::string &path) const {
    std::set<int> out;
    for (const auto &group : files)
        if (group.path == path)
            for (const auto &line : group.lines)
                out.insert(line.n);
    return out;
}

std::string Slice::to_json() const {
    nlohmann::json doc;
    doc["criteria"] = nlohmann::json::array();
    for (const auto &c : criteria) {
        nlohmann::json jc;
        jc["file"] = c.file;
        jc["line"] = c.line;
        if (c.column)
            jc["column"] = *c.column;
        doc["criteria"].push_back(std::move(jc));
    }
    doc["direction"] = std::string(fpm::to_string(direction));
    doc["fallback_used"] = fallback_used;
    doc["files"] = nlohmann::json::array();
    for (const auto &group : files) {
        nlohmann::json jf;
        jf["path"] = group.path;
        jf["lines"] = nlohmann::json::array();
        for (const auto &line : group.lines)
            jf["lines"].push_back({{"n", line.n}, {"text", line.text}});
        doc["files"].push_back(std::move(jf));
    }
    return doc.dump(2) + "\n";
}

std::optional<std::string> DiskSourceStore::load(const std::string &path) const {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.is_relative() && !root_.empty())
        p = fs::path(root_) / p;
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<std::string> MemorySourceStore::load(const std::string &path) const {
    auto it = files_.find(path);
    return it == files_.end() ? std::nullopt : std::optional<std::string>(it->second);
}

Slicer::Slicer(const Ecpg &graph) : graph_(graph) {
    parent_.assign(graph_.nodes().size(), kNoNode);
    for (const AstNode &n : graph_.nodes().all()) {
        by_location_[n.loc.file][n.loc.line].push_back(n.id);
        int &max_line = max_line_[n.loc.file];
        max_line = std::max(max_line, n.end_line());
        if (n.kind == NodeKind::FunctionDef)
            functions_by_file_[n.loc.file].push_back(n.id);
        for (NodeId child : n.children)
            parent_[static_cast<size_t>(child)] = n.id;
    }
}

NodeId Slicer::enclosing_statement(NodeId id) const {
    NodeId walker = parent_[static_cast<size_t>(id)];
    while (walker != kNoNode && !is_statement_kind(graph_.nodes()[walker].kind))
        walker = parent_[static_cast<size_t>(walker)];
    return walker;
}

ResolvedCriteria Slicer::resolve_criteria(const std::vector<SlicingCriterion> &criteria) const {
    ResolvedCriteria result;
    for (const SlicingCriterion &c : criteria) {
        auto file_it = by_location_.find(c.file);
        if (file_it == by_location_.end())
            throw CriterionOutOfRange("criterion file '" + c.file + "' is not part of the graph");

        auto line_it = file_it->second.find(c.line);
        std::vector<NodeId> matched;
        if (line_it != file_it->second.end()) {
            for (NodeId id : line_it->second)
                if (!c.column || graph_.nodes()[id].loc.column == *c.column)
                    matched.push_back(id);
        }
        if (!matched.empty()) {
            result.nodes.insert(matched.begin(), matched.end());
            continue;
        }

        // Nothing sits on the criterion exactly: degrade to the whole
        // enclosing function so the warning still gets context.
        NodeId enclosing = kNoNode;
        auto fns = functions_by_file_.find(c.file);
        if (fns != functions_by_file_.end()) {
            for (NodeId fn : fns->second) {
                const AstNode &f = graph_.nodes()[fn];
                if (f.loc.line <= c.line && c.line <= f.end_line()) {
                    enclosing = fn;
                    break;
                }
            }
        }
        if (enclosing == kNoNode) {
            auto max_it = max_line_.find(c.file);
            if (max_it == max_line_.end() || c.line > max_it->second)
                throw CriterionOutOfRange("criterion " + c.file + ":" + std::to_string(c.line) +
                                          " lies beyond the file and no enclosing function exists");
            continue; // inside the file but between functions: no anchor
        }
        std::string fn_name = graph_.base.function_name(enclosing);
        for (const AstNode &n : graph_.nodes().all())
            if (n.loc.file == c.file && graph_.base.function_name(n.id) == fn_name &&
                n.kind != NodeKind::TranslationUnit)
                result.nodes.insert(n.id);
        result.fallback_used = true;
    }
    return result;
}

void Slicer::expansion(NodeId id, std::vector<NodeId> &out) const {
    out.push_back(id);
    for (NodeId child : graph_.nodes()[id].children) {
        switch (graph_.nodes()[child].kind) {
        case NodeKind::BinaryOp:
        case NodeKind::UnaryOp:
        case NodeKind::Identifier:
        case NodeKind::Literal:
        case NodeKind::MemberAccess:
        case NodeKind::Arg:
        case NodeKind::Call:
            expansion(child, out);
            break;
        default:
            break; // statements and scopes are their own traversal units
        }
    }
}

std::set<NodeId> Slicer::slice_nodes(const std::set<NodeId> &seeds, SliceDirection direction,
                                     LabelSet labels, size_t *pops) const {
    std::set<NodeId> result;
    std::deque<NodeId> worklist;
    std::vector<bool> enqueued(graph_.nodes().size(), false);
    size_t pop_count = 0;

    for (NodeId seed : seeds) {
        if (!enqueued[static_cast<size_t>(seed)]) {
            enqueued[static_cast<size_t>(seed)] = true;
            worklist.push_back(seed);
        }
    }

    std::vector<NodeId> frontier;
    while (!worklist.empty()) {
        NodeId n = worklist.front();
        worklist.pop_front();
        ++pop_count;
        result.insert(n);

        // A hit on an expression node also reaches its enclosing statement;
        // this is what lets flows continue through statements whose inner
        // identifiers were reached by V or F edges.
        if (!is_statement_kind(graph_.nodes()[n].kind)) {
            NodeId stmt = enclosing_statement(n);
            if (stmt != kNoNode && !enqueued[static_cast<size_t>(stmt)]) {
                enqueued[static_cast<size_t>(stmt)] = true;
                worklist.push_back(stmt);
            }
        }

        // A statement stands for its whole expression tree: dependence edges
        // ending on an inner identifier count as ending on the statement.
        frontier.clear();
        expansion(n, frontier);
        for (NodeId m : frontier) {
            if (direction == SliceDirection::Backward || direction == SliceDirection::Both) {
                for (const Ecpg::Neighbor &nb : graph_.in_edges(m)) {
                    if (labels.contains(nb.label) && !enqueued[static_cast<size_t>(nb.node)]) {
                        enqueued[static_cast<size_t>(nb.node)] = true;
                        worklist.push_back(nb.node);
                    }
                }
            }
            if (direction == SliceDirection::Forward || direction == SliceDirection::Both) {
                for (const Ecpg::Neighbor &nb : graph_.out_edges(m)) {
                    if (labels.contains(nb.label) && !enqueued[static_cast<size_t>(nb.node)]) {
                        enqueued[static_cast<size_t>(nb.node)] = true;
                        worklist.push_back(nb.node);
                    }
                }
            }
        }
    }
    if (pops)
        *pops = pop_count;
    return result;
}

Slice Slicer::reconstruct_source_slice(const std::set<NodeId> &nodes,
                                       const std::vector<SlicingCriterion> &criteria,
                                       SliceDirection direction, const SourceStore &sources,
                                       bool fallback_used) const {
    Slice slice;
    slice.criteria = criteria;
    slice.direction = direction;
    slice.fallback_used = fallback_used;
    slice.node_ids = nodes;

    std::map<std::string, std::set<int>> by_file;
    for (NodeId id : nodes) {
        const AstNode &n = graph_.nodes()[id];
        by_file[n.loc.file].insert(n.loc.line);
    }

    for (const auto &[path, lines] : by_file) {
        auto content = sources.load(path);
        if (!content)
            throw SourceUnavailable(path);
        std::vector<std::string> text_lines;
        std::string current;
        for (char ch : *content) {
            if (ch == '\n') {
                text_lines.push_back(std::move(current));
                current.clear();
            } else {
                current += ch;
            }
        }
        if (!current.empty())
            text_lines.push_back(std::move(current));

        SliceFileGroup group;
        group.path = path;
        for (int line : lines) {
            if (line < 1 || static_cast<size_t>(line) > text_lines.size())
                throw SourceUnavailable(path + ":" + std::to_string(line) +
                                        " (line beyond file contents)");
            group.lines.push_back(SliceLine{line, text_lines[static_cast<size_t>(line - 1)]});
        }
        slice.files.push_back(std::move(group));
    }
    return slice;
}

Slice Slicer::run(const std::vector<SlicingCriterion> &criteria, SliceDirection direction,
                  LabelSet labels, const SourceStore &sources) const {
    ResolvedCriteria resolved = resolve_criteria(criteria);
    std::set<NodeId> collected = slice_nodes(resolved.nodes, direction, labels);
    return reconstruct_source_slice(collected, criteria, direction, sources,
                                    resolved.fallback_used);
}

} // namespace fpm
