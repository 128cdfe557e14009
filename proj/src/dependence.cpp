#include "fpm/dependence.hpp"

#include "fpm/parser.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fpm {

namespace {

// --- statement effects ------------------------------------------------------

void collect_expr_uses(const NodeTable &nodes, const SymbolTable &symbols, NodeId expr,
                       std::vector<int> &uses) {
    const AstNode &n = nodes[expr];
    if (n.kind == NodeKind::Identifier) {
        if (const Symbol *s = symbols.resolve(expr))
            uses.push_back(s->id);
        return;
    }
    for (NodeId child : n.children)
        collect_expr_uses(nodes, symbols, child, uses);
}

/// Calls anywhere in an expression conservatively define variables passed by
/// address (&v), so flows established inside the callee are not lost.
void collect_call_may_defs(const NodeTable &nodes, const SymbolTable &symbols, NodeId expr,
                           std::vector<StmtEffects::Def> &defs) {
    const AstNode &n = nodes[expr];
    if (n.kind == NodeKind::Call) {
        for (NodeId arg : n.children) {
            NodeId value = nodes[arg].children[0];
            if (nodes[value].kind == NodeKind::UnaryOp && nodes[value].op == "&") {
                NodeId operand = nodes[value].children[0];
                if (nodes[operand].kind == NodeKind::Identifier)
                    if (const Symbol *s = symbols.resolve(operand))
                        defs.push_back({s->id, false});
            }
        }
    }
    for (NodeId child : n.children)
        collect_call_may_defs(nodes, symbols, child, defs);
}

int decl_symbol(const SymbolTable &symbols, NodeId decl) {
    for (const Symbol &s : symbols.symbols)
        if (s.def_node == decl)
            return s.id;
    return -1;
}

} // namespace

StmtEffects stmt_effects(const NodeTable &nodes, const SymbolTable &symbols, NodeId stmt) {
    StmtEffects fx;
    const AstNode &n = nodes[stmt];
    std::vector<NodeId> exprs; // expression roots read by this statement

    switch (n.kind) {
    case NodeKind::VarDecl:
        if (n.has_init) {
            int sym = decl_symbol(symbols, stmt);
            if (sym >= 0)
                fx.defs.push_back({sym, true});
            exprs.push_back(n.children[0]);
        }
        break;
    case NodeKind::Assign: {
        NodeId lhs = n.children[0];
        exprs.push_back(n.children[1]);
        const AstNode &l = nodes[lhs];
        if (l.kind == NodeKind::Identifier) {
            if (const Symbol *s = symbols.resolve(lhs))
                fx.defs.push_back({s->id, true});
            if (n.op != "=") // compound assignment reads the target too
                exprs.push_back(lhs);
        } else if (l.kind == NodeKind::BinaryOp && l.op == "[]") {
            // a[i] = e may-defines a (one element, not the whole array) and
            // reads both the base and the index: with a pointer base the
            // write dereferences the current pointer value.
            if (nodes[l.children[0]].kind == NodeKind::Identifier)
                if (const Symbol *s = symbols.resolve(l.children[0]))
                    fx.defs.push_back({s->id, false});
            exprs.push_back(lhs);
        } else if (l.kind == NodeKind::MemberAccess) {
            NodeId base = l.children[0];
            while (nodes[base].kind == NodeKind::MemberAccess)
                base = nodes[base].children[0];
            if (nodes[base].kind == NodeKind::Identifier)
                if (const Symbol *s = symbols.resolve(base))
                    fx.defs.push_back({s->id, false});
            exprs.push_back(lhs);
        } else if (l.kind == NodeKind::UnaryOp && l.op == "*") {
            // *p = e reads p; which object it writes is unknown without
            // pointer analysis (a non-goal), so no def is recorded.
            exprs.push_back(l.children[0]);
        }
        break;
    }
    case NodeKind::Call:
        exprs.push_back(stmt);
        break;
    case NodeKind::Return:
        if (!n.children.empty())
            exprs.push_back(n.children[0]);
        break;
    case NodeKind::If:
    case NodeKind::While:
    case NodeKind::Switch:
        exprs.push_back(n.children[0]);
        break;
    case NodeKind::For: {
        ForParts parts = for_parts(nodes, stmt);
        if (parts.cond != kNoNode)
            exprs.push_back(parts.cond);
        break;
    }
    default:
        break; // Case/Default labels have no effects
    }

    for (NodeId e : exprs) {
        collect_expr_uses(nodes, symbols, e, fx.uses);
        collect_call_may_defs(nodes, symbols, e, fx.defs);
    }
    if (n.kind == NodeKind::Call)
        collect_call_may_defs(nodes, symbols, stmt, fx.defs);

    std::sort(fx.uses.begin(), fx.uses.end());
    fx.uses.erase(std::unique(fx.uses.begin(), fx.uses.end()), fx.uses.end());
    return fx;
}

// --- post-dominance and control dependence -----------------------------------

std::vector<int> immediate_post_dominators(const Cfg &cfg) {
    size_t n = cfg.blocks.size();
    auto preds = cfg.predecessors();

    // Reverse post-order on the reverse CFG, rooted at exit.
    std::vector<int> order;            // reverse CFG RPO
    std::vector<int> order_index(n, -1);
    {
        std::vector<int> state(n, 0);
        std::vector<int> stack = {cfg.exit};
        std::vector<size_t> next(n, 0);
        std::vector<int> post;
        while (!stack.empty()) {
            int b = stack.back();
            if (state[static_cast<size_t>(b)] == 0)
                state[static_cast<size_t>(b)] = 1;
            const auto &ps = preds[static_cast<size_t>(b)];
            size_t &i = next[static_cast<size_t>(b)];
            bool descended = false;
            while (i < ps.size()) {
                int p = ps[i++];
                if (state[static_cast<size_t>(p)] == 0) {
                    stack.push_back(p);
                    descended = true;
                    break;
                }
            }
            if (!descended && i >= ps.size()) {
                post.push_back(b);
                stack.pop_back();
            }
        }
        order.assign(post.rbegin(), post.rend());
        for (size_t i = 0; i < order.size(); ++i)
            order_index[static_cast<size_t>(order[i])] = static_cast<int>(i);
    }

    std::vector<int> ipdom(n, -1);
    ipdom[static_cast<size_t>(cfg.exit)] = cfg.exit;

    auto intersect = [&](int a, int b) {
        while (a != b) {
            while (order_index[static_cast<size_t>(a)] > order_index[static_cast<size_t>(b)])
                a = ipdom[static_cast<size_t>(a)];
            while (order_index[static_cast<size_t>(b)] > order_index[static_cast<size_t>(a)])
                b = ipdom[static_cast<size_t>(b)];
        }
        return a;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int b : order) {
            if (b == cfg.exit)
                continue;
            int new_idom = -1;
            for (int s : cfg.blocks[static_cast<size_t>(b)].succs) {
                if (order_index[static_cast<size_t>(s)] < 0 || ipdom[static_cast<size_t>(s)] < 0)
                    continue;
                new_idom = new_idom < 0 ? s : intersect(new_idom, s);
            }
            if (new_idom >= 0 && ipdom[static_cast<size_t>(b)] != new_idom) {
                ipdom[static_cast<size_t>(b)] = new_idom;
                changed = true;
            }
        }
    }
    return ipdom;
}

std::vector<Edge> control_dependence(const Cfg &cfg, const NodeTable &nodes) {
    std::vector<int> ipdom = immediate_post_dominators(cfg);
    std::set<std::pair<int, int>> block_deps; // (branch block, dependent block)

    for (size_t u = 0; u < cfg.blocks.size(); ++u) {
        const auto &succs = cfg.blocks[u].succs;
        if (succs.size() < 2)
            continue;
        for (int v : succs) {
            int runner = v;
            while (runner >= 0 && runner != ipdom[u]) {
                if (runner != static_cast<int>(u))
                    block_deps.emplace(static_cast<int>(u), runner);
                runner = runner == ipdom[static_cast<size_t>(runner)]
                             ? -1
                             : ipdom[static_cast<size_t>(runner)];
            }
        }
    }

    std::vector<Edge> edges;
    for (auto [u, w] : block_deps) {
        const auto &branch_stmts = cfg.blocks[static_cast<size_t>(u)].stmts;
        if (branch_stmts.empty())
            continue;
        NodeId predicate = branch_stmts.back();
        switch (nodes[predicate].kind) {
        case NodeKind::If:
        case NodeKind::While:
        case NodeKind::For:
        case NodeKind::Switch:
            break;
        default:
            continue; // only predicates branch
        }
        for (NodeId s : cfg.blocks[static_cast<size_t>(w)].stmts)
            if (s != predicate)
                edges.push_back(Edge{predicate, s, EdgeLabel::C});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

// --- reaching definitions and data dependence ---------------------------------

std::vector<Edge> data_dependence(const Cfg &cfg, const NodeTable &nodes,
                                  const SymbolTable &symbols) {
    struct DefSite {
        NodeId node;
        int symbol;
        bool must;
    };
    std::vector<DefSite> defs;

    // Parameters reach the entry as definitions.
    for (NodeId child : nodes[cfg.function].children)
        if (nodes[child].kind == NodeKind::Param) {
            int sym = -1;
            for (const Symbol &s : symbols.symbols)
                if (s.def_node == child)
                    sym = s.id;
            if (sym >= 0)
                defs.push_back({child, sym, true});
        }
    size_t param_defs = defs.size();

    std::vector<std::vector<StmtEffects>> effects(cfg.blocks.size());
    std::vector<std::vector<size_t>> stmt_def_ids(cfg.blocks.size());
    for (size_t b = 0; b < cfg.blocks.size(); ++b) {
        for (NodeId stmt : cfg.blocks[b].stmts) {
            StmtEffects fx = stmt_effects(nodes, symbols, stmt);
            for (const auto &d : fx.defs)
                defs.push_back({stmt, d.symbol, d.must});
            effects[b].push_back(std::move(fx));
        }
    }

    size_t nd = defs.size();
    auto apply_stmt = [&](std::vector<bool> &live, size_t first_def, const StmtEffects &fx) {
        size_t def_id = first_def;
        for (const auto &d : fx.defs) {
            if (d.must)
                for (size_t k = 0; k < nd; ++k)
                    if (live[k] && defs[k].symbol == d.symbol)
                        live[k] = false;
            live[def_id++] = true;
        }
    };

    // Block-local def counting for IN/OUT propagation.
    std::vector<size_t> block_first_def(cfg.blocks.size());
    {
        size_t cursor = param_defs;
        for (size_t b = 0; b < cfg.blocks.size(); ++b) {
            block_first_def[b] = cursor;
            for (const auto &fx : effects[b])
                cursor += fx.defs.size();
        }
    }

    std::vector<std::vector<bool>> in(cfg.blocks.size(), std::vector<bool>(nd, false));
    std::vector<std::vector<bool>> out(cfg.blocks.size(), std::vector<bool>(nd, false));
    for (size_t k = 0; k < param_defs; ++k)
        in[static_cast<size_t>(cfg.entry)][k] = true;

    auto preds = cfg.predecessors();
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t b = 0; b < cfg.blocks.size(); ++b) {
            std::vector<bool> live(nd, false);
            if (b == static_cast<size_t>(cfg.entry))
                for (size_t k = 0; k < param_defs; ++k)
                    live[k] = true;
            for (int p : preds[b])
                for (size_t k = 0; k < nd; ++k)
                    if (out[static_cast<size_t>(p)][k])
                        live[k] = true;
            if (live != in[b]) {
                in[b] = live;
            }
            size_t def_cursor = block_first_def[b];
            for (const auto &fx : effects[b]) {
                apply_stmt(live, def_cursor, fx);
                def_cursor += fx.defs.size();
            }
            if (live != out[b]) {
                out[b] = std::move(live);
                changed = true;
            }
        }
    }

    std::vector<Edge> edges;
    for (size_t b = 0; b < cfg.blocks.size(); ++b) {
        std::vector<bool> live = in[b];
        size_t def_cursor = block_first_def[b];
        for (size_t i = 0; i < cfg.blocks[b].stmts.size(); ++i) {
            NodeId stmt = cfg.blocks[b].stmts[i];
            const StmtEffects &fx = effects[b][i];
            for (int use : fx.uses)
                for (size_t k = 0; k < nd; ++k)
                    if (live[k] && defs[k].symbol == use && defs[k].node != stmt)
                        edges.push_back(Edge{defs[k].node, stmt, EdgeLabel::D});
            apply_stmt(live, def_cursor, fx);
            def_cursor += fx.defs.size();
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

} // namespace fpm
