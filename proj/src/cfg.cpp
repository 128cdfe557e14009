#include "fpm/cfg.hpp"

#include "fpm/parser.hpp"

#include <algorithm>
#include <cassert>

namespace fpm {

std::vector<std::vector<int>> Cfg::predecessors() const {
    std::vector<std::vector<int>> preds(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int s : blocks[b].succs)
            preds[static_cast<size_t>(s)].push_back(static_cast<int>(b));
    return preds;
}

namespace {

constexpr int kExit = -1; // symbolic target, materialized in finalize()

class CfgBuilder {
public:
    explicit CfgBuilder(const NodeTable &nodes) : nodes_(nodes) {}

    Cfg build(NodeId fn) {
        current_ = new_block();
        const AstNode &f = nodes_[fn];
        emit_block_children(f.children.back());
        edge(current_, kExit);

        Cfg cfg;
        cfg.function = fn;
        finalize(cfg);
        return cfg;
    }

private:
    const NodeTable &nodes_;
    std::vector<BasicBlock> blocks_;
    int current_ = 0;

    int new_block() {
        blocks_.emplace_back();
        return static_cast<int>(blocks_.size()) - 1;
    }
    void edge(int from, int to) { blocks_[static_cast<size_t>(from)].succs.push_back(to); }
    void append(NodeId stmt) { blocks_[static_cast<size_t>(current_)].stmts.push_back(stmt); }

    void emit_block_children(NodeId block) {
        for (NodeId child : nodes_[block].children)
            emit_stmt(child);
    }

    void emit_stmt(NodeId id) {
        const AstNode &n = nodes_[id];
        switch (n.kind) {
        case NodeKind::VarDecl:
        case NodeKind::Assign:
        case NodeKind::Call:
            append(id);
            return;
        case NodeKind::Return:
            append(id);
            edge(current_, kExit);
            current_ = new_block(); // anything after a return is unreachable
            return;
        case NodeKind::Block:
            emit_block_children(id);
            return;
        case NodeKind::If:
            emit_if(id);
            return;
        case NodeKind::While:
            emit_while(id);
            return;
        case NodeKind::For:
            emit_for(id);
            return;
        case NodeKind::Switch:
            emit_switch(id);
            return;
        default:
            assert(false && "non-statement node in block body");
            return;
        }
    }

    void emit_if(NodeId id) {
        append(id);
        int cond = current_;

        int then_entry = new_block();
        edge(cond, then_entry);
        current_ = then_entry;
        emit_block_children(nodes_[id].children[1]);
        int then_end = current_;

        int else_end = -2;
        if (nodes_[id].children.size() > 2) {
            NodeId else_node = nodes_[id].children[2];
            int else_entry = new_block();
            edge(cond, else_entry);
            current_ = else_entry;
            emit_stmt(nodes_[else_node].children[0]); // Block or chained If
            else_end = current_;
        }

        int join = new_block();
        edge(then_end, join);
        if (else_end == -2)
            edge(cond, join);
        else
            edge(else_end, join);
        current_ = join;
    }

    void emit_while(NodeId id) {
        int header = new_block();
        edge(current_, header);
        current_ = header;
        append(id);

        int body = new_block();
        edge(header, body);
        current_ = body;
        emit_block_children(nodes_[id].children[1]);
        edge(current_, header); // back edge

        int after = new_block();
        edge(header, after);
        current_ = after;
    }

    void emit_for(NodeId id) {
        ForParts parts = for_parts(nodes_, id);
        if (parts.init != kNoNode)
            emit_stmt(parts.init);

        int header = new_block();
        edge(current_, header);
        current_ = header;
        append(id); // the For node carries the loop condition

        int body = new_block();
        edge(header, body);
        current_ = body;
        emit_block_children(parts.body);
        if (parts.step != kNoNode)
            emit_stmt(parts.step);
        edge(current_, header); // back edge

        int after = new_block();
        if (parts.cond != kNoNode)
            edge(header, after);
        current_ = after;
    }

    void emit_switch(NodeId id) {
        append(id);
        int branch = current_;
        std::vector<int> case_ends;
        bool has_default = false;

        const AstNode &sw = nodes_[id];
        for (size_t i = 1; i < sw.children.size(); ++i) { // child 0 is the scrutinee
            NodeId clause = sw.children[i];
            const AstNode &c = nodes_[clause];
            has_default = has_default || c.kind == NodeKind::Default;

            int entry = new_block();
            edge(branch, entry);
            current_ = entry;
            append(clause); // the label itself, for source mapping
            size_t first_stmt = c.kind == NodeKind::Case ? 1 : 0;
            for (size_t k = first_stmt; k < c.children.size(); ++k)
                emit_stmt(c.children[k]);
            case_ends.push_back(current_);
        }

        int join = new_block();
        for (int end : case_ends)
            edge(end, join);
        if (!has_default)
            edge(branch, join); // no-match path
        current_ = join;
    }

    /// Collapse empty pass-through blocks, drop unreachable empty blocks and
    /// materialize the synthetic exit as the last block.
    void finalize(Cfg &cfg) {
        int entry = 0;
        size_t n = blocks_.size();

        // Iteratively bypass empty blocks with a unique successor.
        bool changed = true;
        std::vector<bool> dead(n, false);
        while (changed) {
            changed = false;
            for (size_t b = 0; b < n; ++b) {
                if (dead[b] || !blocks_[b].stmts.empty() || blocks_[b].succs.size() != 1)
                    continue;
                int target = blocks_[b].succs[0];
                if (target == static_cast<int>(b))
                    continue;
                for (size_t p = 0; p < n; ++p) {
                    if (dead[p])
                        continue;
                    for (int &s : blocks_[p].succs)
                        if (s == static_cast<int>(b))
                            s = target;
                }
                if (entry == static_cast<int>(b) && target != kExit)
                    entry = target;
                dead[b] = true;
                changed = true;
            }
        }

        // Drop empty blocks that nothing reaches.
        std::vector<int> pred_count(n, 0);
        for (size_t b = 0; b < n; ++b)
            if (!dead[b])
                for (int s : blocks_[b].succs)
                    if (s != kExit)
                        ++pred_count[static_cast<size_t>(s)];
        for (size_t b = 0; b < n; ++b)
            if (!dead[b] && blocks_[b].stmts.empty() && pred_count[b] == 0 &&
                static_cast<int>(b) != entry)
                dead[b] = true;

        std::vector<int> remap(n, -1);
        for (size_t b = 0; b < n; ++b) {
            if (!dead[b]) {
                remap[b] = static_cast<int>(cfg.blocks.size());
                cfg.blocks.push_back(std::move(blocks_[b]));
            }
        }
        int exit_id = static_cast<int>(cfg.blocks.size());
        cfg.blocks.emplace_back(); // synthetic exit

        for (auto &block : cfg.blocks) {
            for (int &s : block.succs)
                s = s == kExit ? exit_id : remap[static_cast<size_t>(s)];
            std::vector<int> unique;
            for (int s : block.succs)
                if (std::find(unique.begin(), unique.end(), s) == unique.end())
                    unique.push_back(s);
            block.succs = std::move(unique);
        }
        cfg.entry = remap[static_cast<size_t>(entry)] >= 0 ? remap[static_cast<size_t>(entry)]
                                                           : exit_id;
        cfg.exit = exit_id;
    }
};

} // namespace

Cfg build_cfg(const NodeTable &nodes, NodeId function) {
    assert(nodes[function].kind == NodeKind::FunctionDef);
    return CfgBuilder(nodes).build(function);
}

} // namespace fpm
