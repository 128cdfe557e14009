#include "fpm/frg.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace fpm {

int FileReferenceGraph::index_of(const std::string &path) const {
    auto it = std::lower_bound(files.begin(), files.end(), path);
    if (it == files.end() || *it != path)
        return -1;
    return static_cast<int>(it - files.begin());
}

std::vector<std::vector<int>> FileReferenceGraph::out_adjacency() const {
    std::vector<std::vector<int>> adj(files.size());
    for (auto [a, b] : edges)
        adj[static_cast<size_t>(a)].push_back(b);
    return adj;
}

std::vector<std::vector<int>> SccIndex::cond_adjacency() const {
    std::vector<std::vector<int>> adj(members.size());
    for (auto [a, b] : condensation)
        adj[static_cast<size_t>(a)].push_back(b);
    return adj;
}

std::vector<int> SccIndex::topological_order() const {
    std::vector<int> indegree(members.size(), 0);
    for (auto [a, b] : condensation)
        ++indegree[static_cast<size_t>(b)];
    std::deque<int> ready;
    for (size_t c = 0; c < members.size(); ++c)
        if (indegree[c] == 0)
            ready.push_back(static_cast<int>(c));
    auto adj = cond_adjacency();
    std::vector<int> order;
    while (!ready.empty()) {
        int c = ready.front();
        ready.pop_front();
        order.push_back(c);
        for (int next : adj[static_cast<size_t>(c)])
            if (--indegree[static_cast<size_t>(next)] == 0)
                ready.push_back(next);
    }
    if (order.size() != members.size())
        throw std::logic_error("condensation graph contains a cycle");
    return order;
}

FileReferenceGraph build_frg(const SymbolTable &symbols, const std::vector<Unit> &units,
                             const NodeTable &nodes) {
    FileReferenceGraph frg;
    for (const Unit &u : units)
        frg.files.push_back(u.path);
    std::sort(frg.files.begin(), frg.files.end());

    std::set<std::pair<int, int>> edges;
    for (const AstNode &n : nodes.all()) {
        if (n.kind != NodeKind::Identifier && n.kind != NodeKind::Call)
            continue;
        const Symbol *sym = symbols.resolve(n.id);
        if (!sym || !sym->has_definition())
            continue;
        const std::string &def_file = nodes[sym->def_node].loc.file;
        if (def_file == n.loc.file)
            continue; // self references are not edges
        int a = frg.index_of(n.loc.file);
        int b = frg.index_of(def_file);
        if (a >= 0 && b >= 0)
            edges.emplace(a, b);
    }
    frg.edges.assign(edges.begin(), edges.end());
    return frg;
}

SccIndex compute_scc(const FileReferenceGraph &frg) {
    size_t n = frg.files.size();
    auto adj = frg.out_adjacency();

    SccIndex index;
    index.component_of.assign(n, -1);

    // Iterative Tarjan: dfs numbers, low links, explicit stacks.
    std::vector<int> dfn(n, -1);
    std::vector<int> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> scc_stack;
    int counter = 0;

    struct Frame {
        int v;
        size_t next_child;
    };
    for (size_t start = 0; start < n; ++start) {
        if (dfn[start] != -1)
            continue;
        std::vector<Frame> frames = {{static_cast<int>(start), 0}};
        dfn[start] = low[start] = counter++;
        scc_stack.push_back(static_cast<int>(start));
        on_stack[start] = true;

        while (!frames.empty()) {
            Frame &f = frames.back();
            auto &succs = adj[static_cast<size_t>(f.v)];
            if (f.next_child < succs.size()) {
                int w = succs[f.next_child++];
                if (dfn[static_cast<size_t>(w)] == -1) {
                    dfn[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
                    scc_stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(f.v)] =
                        std::min(low[static_cast<size_t>(f.v)], dfn[static_cast<size_t>(w)]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[static_cast<size_t>(frames.back().v)] =
                        std::min(low[static_cast<size_t>(frames.back().v)],
                                 low[static_cast<size_t>(v)]);
                if (low[static_cast<size_t>(v)] == dfn[static_cast<size_t>(v)]) {
                    int id = static_cast<int>(index.members.size());
                    index.members.emplace_back();
                    while (true) {
                        int w = scc_stack.back();
                        scc_stack.pop_back();
                        on_stack[static_cast<size_t>(w)] = false;
                        index.component_of[static_cast<size_t>(w)] = id;
                        index.members.back().push_back(w);
                        if (w == v)
                            break;
                    }
                    std::sort(index.members.back().begin(), index.members.back().end());
                }
            }
        }
    }

    std::set<std::pair<int, int>> cond;
    for (auto [a, b] : frg.edges) {
        int ca = index.component_of[static_cast<size_t>(a)];
        int cb = index.component_of[static_cast<size_t>(b)];
        if (ca != cb)
            cond.emplace(ca, cb);
    }
    index.condensation.assign(cond.begin(), cond.end());
    return index;
}

std::vector<std::string> farf(const FileReferenceGraph &frg, const SccIndex &scc,
                              const std::vector<std::string> &files, FarfStats *stats) {
    std::deque<int> queue;
    std::vector<bool> visited(scc.members.size(), false);
    for (const std::string &f : files) {
        int idx = frg.index_of(f);
        if (idx < 0)
            throw UnknownFile(f);
        int c = scc.component_of[static_cast<size_t>(idx)];
        if (!visited[static_cast<size_t>(c)]) {
            visited[static_cast<size_t>(c)] = true;
            queue.push_back(c);
        }
    }

    auto adj = scc.cond_adjacency();
    std::set<std::string> dependent;
    size_t pops = 0;
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        ++pops;
        for (int file : scc.members[static_cast<size_t>(c)])
            dependent.insert(frg.files[static_cast<size_t>(file)]);
        for (int next : adj[static_cast<size_t>(c)]) {
            if (!visited[static_cast<size_t>(next)]) {
                visited[static_cast<size_t>(next)] = true;
                queue.push_back(next);
            }
        }
    }
    if (stats)
        stats->scc_pops = pops;
    return {dependent.begin(), dependent.end()};
}

// --- cache ---------------------------------------------------------------------

std::string project_content_hash(const std::vector<SourceFile> &files) {
    // 64-bit FNV-1a over (path, content) pairs in sorted path order.
    std::vector<const SourceFile *> sorted;
    for (const auto &f : files)
        sorted.push_back(&f);
    std::sort(sorted.begin(), sorted.end(),
              [](const SourceFile *a, const SourceFile *b) { return a->path < b->path; });

    unsigned long long h = 1469598103934665603ULL;
    auto mix = [&h](const std::string &s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        h ^= 0xff;
        h *= 1099511628211ULL;
    };
    for (const SourceFile *f : sorted) {
        mix(f->path);
        mix(f->content);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

std::string frg_cache_to_json(const FrgCache &cache) {
    nlohmann::json doc;
    doc["hash"] = cache.hash;
    doc["files"] = cache.frg.files;
    doc["edges"] = nlohmann::json::array();
    for (auto [a, b] : cache.frg.edges)
        doc["edges"].push_back({cache.frg.files[static_cast<size_t>(a)],
                                cache.frg.files[static_cast<size_t>(b)]});
    nlohmann::json members = nlohmann::json::object();
    for (size_t c = 0; c < cache.scc.members.size(); ++c) {
        nlohmann::json list = nlohmann::json::array();
        for (int f : cache.scc.members[c])
            list.push_back(cache.frg.files[static_cast<size_t>(f)]);
        members[std::to_string(c)] = std::move(list);
    }
    doc["scc"]["members"] = std::move(members);
    doc["scc"]["cond_edges"] = nlohmann::json::array();
    for (auto [a, b] : cache.scc.condensation)
        doc["scc"]["cond_edges"].push_back({a, b});
    return doc.dump(2) + "\n";
}

FrgCache frg_cache_from_json(const std::string &bytes) {
    nlohmann::json doc = nlohmann::json::parse(bytes, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw SchemaError(1, "frg-cache", "not a JSON object");
    try {
        FrgCache cache;
        cache.hash = doc.at("hash").get<std::string>();
        cache.frg.files = doc.at("files").get<std::vector<std::string>>();

        for (const auto &e : doc.at("edges")) {
            int a = cache.frg.index_of(e.at(0).get<std::string>());
            int b = cache.frg.index_of(e.at(1).get<std::string>());
            if (a < 0 || b < 0)
                throw SchemaError(1, "frg-cache.edges", "edge references unknown file");
            cache.frg.edges.emplace_back(a, b);
        }

        const auto &members = doc.at("scc").at("members");
        cache.scc.members.resize(members.size());
        cache.scc.component_of.assign(cache.frg.files.size(), -1);
        for (auto it = members.begin(); it != members.end(); ++it) {
            size_t id = std::stoul(it.key());
            if (id >= cache.scc.members.size())
                throw SchemaError(1, "frg-cache.scc.members", "component ids must be dense");
            for (const auto &file : it.value()) {
                int idx = cache.frg.index_of(file.get<std::string>());
                if (idx < 0)
                    throw SchemaError(1, "frg-cache.scc.members", "unknown file in component");
                cache.scc.members[id].push_back(idx);
                cache.scc.component_of[static_cast<size_t>(idx)] = static_cast<int>(id);
            }
        }
        for (int c : cache.scc.component_of)
            if (c < 0)
                throw SchemaError(1, "frg-cache.scc.members", "components must cover all files");

        for (const auto &e : doc.at("scc").at("cond_edges"))
            cache.scc.condensation.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        return cache;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(1, "frg-cache", e.what());
    }
}

} // namespace fpm
