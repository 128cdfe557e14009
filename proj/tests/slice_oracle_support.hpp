#pragma once

// Random labeled graphs and a naive reachability oracle for slice testing.
// The oracle builds its own adjacency from the raw edge lists and walks it
// with plain breadth-first closure, independent of the production worklist.

#include "fpm/ecpg.hpp"
#include "fpm/slicer.hpp"

#include <deque>
#include <random>
#include <set>
#include <vector>

namespace fpm::test {

/// Random dependence graph: bare statement nodes (no AST structure) and
/// random edges over the traversable labels.
inline Ecpg random_dependence_graph(std::mt19937 &rng, int max_nodes = 200, int max_edges = 800) {
    int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_nodes - 1));
    int m = static_cast<int>(rng() % static_cast<unsigned>(max_edges + 1));

    Ecpg g;
    for (int i = 0; i < n; ++i) {
        AstNode node;
        node.kind = NodeKind::Assign;
        node.code = "s" + std::to_string(i) + ";";
        node.loc = SourceLoc{"random.c", i + 1, 1};
        g.base.nodes.add(std::move(node));
    }
    const EdgeLabel labels[] = {EdgeLabel::Cfg, EdgeLabel::C, EdgeLabel::D,
                                EdgeLabel::F,   EdgeLabel::S, EdgeLabel::V};
    for (int i = 0; i < m; ++i) {
        Edge e;
        e.src = static_cast<NodeId>(rng() % static_cast<unsigned>(n));
        e.dst = static_cast<NodeId>(rng() % static_cast<unsigned>(n));
        e.label = labels[rng() % 6];
        if (e.label == EdgeLabel::F || e.label == EdgeLabel::S || e.label == EdgeLabel::V)
            g.extra.push_back(e);
        else
            g.base.edges.push_back(e);
    }
    std::sort(g.base.edges.begin(), g.base.edges.end());
    g.base.edges.erase(std::unique(g.base.edges.begin(), g.base.edges.end()), g.base.edges.end());
    std::sort(g.extra.begin(), g.extra.end());
    g.extra.erase(std::unique(g.extra.begin(), g.extra.end()), g.extra.end());
    g.finalize();
    return g;
}

/// Transitive reachability restricted to a label set: backward walks edges
/// target-to-source, forward source-to-target, Both treats them as
/// undirected.
inline std::set<NodeId> closure_oracle(const Ecpg &g, const std::set<NodeId> &seeds,
                                       SliceDirection direction, LabelSet labels) {
    size_t n = g.nodes().size();
    std::vector<std::vector<NodeId>> step(n);
    g.for_each_edge([&](const Edge &e) {
        if (!labels.contains(e.label))
            return;
        if (direction == SliceDirection::Backward || direction == SliceDirection::Both)
            step[static_cast<size_t>(e.dst)].push_back(e.src);
        if (direction == SliceDirection::Forward || direction == SliceDirection::Both)
            step[static_cast<size_t>(e.src)].push_back(e.dst);
    });

    std::set<NodeId> reached;
    std::deque<NodeId> queue(seeds.begin(), seeds.end());
    reached.insert(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId next : step[static_cast<size_t>(v)]) {
            if (!reached.count(next)) {
                reached.insert(next);
                queue.push_back(next);
            }
        }
    }
    return reached;
}

inline std::set<NodeId> random_seed_set(std::mt19937 &rng, size_t node_count) {
    std::set<NodeId> seeds;
    size_t k = 1 + rng() % 3;
    for (size_t i = 0; i < k; ++i)
        seeds.insert(static_cast<NodeId>(rng() % node_count));
    return seeds;
}

inline LabelSet random_label_set(std::mt19937 &rng) {
    const EdgeLabel all[] = {EdgeLabel::Cfg, EdgeLabel::C, EdgeLabel::D,
                             EdgeLabel::F,   EdgeLabel::S, EdgeLabel::V};
    LabelSet set;
    do {
        for (EdgeLabel l : all)
            if (rng() % 2)
                set.mask |= 1u << static_cast<unsigned>(l);
    } while (set.mask == 0);
    return set;
}

inline SliceDirection random_direction(std::mt19937 &rng) {
    switch (rng() % 3) {
    case 0: return SliceDirection::Backward;
    case 1: return SliceDirection::Forward;
    default: return SliceDirection::Both;
    }
}

} // namespace fpm::test
