#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fpm/frg.hpp"
#include "test_support.hpp"

#include <deque>
#include <random>

using namespace fpm;
using namespace fpm::test;

namespace {

FileReferenceGraph frg_of(const Project &p) {
    return build_frg(p.symbols, p.units, p.nodes);
}

FileReferenceGraph make_graph(int n, const std::vector<std::pair<int, int>> &edges) {
    FileReferenceGraph frg;
    for (int i = 0; i < n; ++i)
        frg.files.push_back("f" + std::to_string(i / 100 % 10) + std::to_string(i / 10 % 10) +
                            std::to_string(i % 10) + ".c");
    std::sort(frg.files.begin(), frg.files.end());
    std::set<std::pair<int, int>> dedup;
    for (auto [a, b] : edges)
        if (a != b)
            dedup.emplace(a, b);
    frg.edges.assign(dedup.begin(), dedup.end());
    return frg;
}

bool has_edge(const FileReferenceGraph &frg, const std::string &a, const std::string &b) {
    int ia = frg.index_of(a);
    int ib = frg.index_of(b);
    for (auto [x, y] : frg.edges)
        if (x == ia && y == ib)
            return true;
    return false;
}

/// Naive transitive closure over the raw FRG, ignoring the SCC machinery.
std::set<std::string> bfs_oracle(const FileReferenceGraph &frg,
                                 const std::vector<std::string> &seeds) {
    auto adj = frg.out_adjacency();
    std::set<int> seen;
    std::deque<int> queue;
    for (const auto &s : seeds) {
        int idx = frg.index_of(s);
        if (seen.insert(idx).second)
            queue.push_back(idx);
    }
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (int next : adj[static_cast<size_t>(f)])
            if (seen.insert(next).second)
                queue.push_back(next);
    }
    std::set<std::string> out;
    for (int f : seen)
        out.insert(frg.files[static_cast<size_t>(f)]);
    return out;
}

/// Pairwise-reachability SCC oracle: same component iff mutually reachable.
std::vector<std::set<int>> scc_oracle(const FileReferenceGraph &frg) {
    size_t n = frg.files.size();
    auto adj = frg.out_adjacency();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (size_t s = 0; s < n; ++s) {
        std::deque<int> queue = {static_cast<int>(s)};
        reach[s][s] = true;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[static_cast<size_t>(v)])
                if (!reach[s][static_cast<size_t>(w)]) {
                    reach[s][static_cast<size_t>(w)] = true;
                    queue.push_back(w);
                }
        }
    }
    std::vector<std::set<int>> classes;
    std::vector<bool> assigned(n, false);
    for (size_t a = 0; a < n; ++a) {
        if (assigned[a])
            continue;
        std::set<int> cls;
        for (size_t b = 0; b < n; ++b)
            if (reach[a][b] && reach[b][a]) {
                cls.insert(static_cast<int>(b));
                assigned[b] = true;
            }
        classes.push_back(std::move(cls));
    }
    return classes;
}

} // namespace

TEST_CASE("cross-file call creates an FRG edge from caller file to callee file") {
    Project p = analyze_fixture_dir("cross_call");
    FileReferenceGraph frg = frg_of(p);
    CHECK(has_edge(frg, "a.c", "b.c"));
    CHECK(!has_edge(frg, "b.c", "a.c"));

    SccIndex scc = compute_scc(frg);
    auto dep = farf(frg, scc, {"a.c"});
    CHECK(dep == std::vector<std::string>({"a.c", "b.c"}));
    CHECK(farf(frg, scc, {"b.c"}) == std::vector<std::string>({"b.c"}));
}

TEST_CASE("extern global reference creates an edge toward the defining file") {
    Project p = analyze_fixture_dir("extern_global");
    FileReferenceGraph frg = frg_of(p);
    CHECK(has_edge(frg, "good.c", "io.c"));

    SccIndex scc = compute_scc(frg);
    CHECK(farf(frg, scc, {"io.c"}) == std::vector<std::string>({"io.c"}));
    CHECK(farf(frg, scc, {"good.c"}) == std::vector<std::string>({"good.c", "io.c"}));
}

TEST_CASE("self-contained files produce no edges") {
    Project p = analyze_source("int x = 1;\nvoid f() { x = 2; }\n");
    FileReferenceGraph frg = frg_of(p);
    CHECK(frg.edges.empty());
}

TEST_CASE("acyclic chain condenses to singleton components") {
    FileReferenceGraph frg = make_graph(3, {{0, 1}, {1, 2}});
    SccIndex scc = compute_scc(frg);
    CHECK(scc.members.size() == 3);
    for (const auto &m : scc.members)
        CHECK(m.size() == 1);
    CHECK(scc.condensation.size() == 2);
    CHECK(scc.topological_order().size() == 3);
}

TEST_CASE("mutual reference forms one component of size two") {
    Project p = analyze_project({SourceFile{"x.c", "int fx(int n) { return fy(n); }\n"},
                                 SourceFile{"y.c", "int fy(int n) { return fx(n); }\n"}});
    FileReferenceGraph frg = frg_of(p);
    SccIndex scc = compute_scc(frg);
    CHECK(scc.members.size() == 1);
    CHECK(scc.members[0].size() == 2);
    CHECK(scc.condensation.empty());
    CHECK(farf(frg, scc, {"x.c"}) == std::vector<std::string>({"x.c", "y.c"}));
}

TEST_CASE("random digraphs: SCC partition equals the pairwise-reachability oracle") {
    std::mt19937 rng(101);
    for (int round = 0; round < 30; ++round) {
        int n = 2 + static_cast<int>(rng() % 60);
        int m = static_cast<int>(rng() % static_cast<unsigned>(3 * n));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < m; ++i)
            edges.emplace_back(static_cast<int>(rng() % static_cast<unsigned>(n)),
                               static_cast<int>(rng() % static_cast<unsigned>(n)));
        FileReferenceGraph frg = make_graph(n, edges);
        SccIndex scc = compute_scc(frg);

        std::set<std::set<int>> actual;
        for (const auto &m2 : scc.members)
            actual.insert(std::set<int>(m2.begin(), m2.end()));
        std::set<std::set<int>> expected;
        for (const auto &cls : scc_oracle(frg))
            expected.insert(cls);
        REQUIRE(actual == expected);
        CHECK(scc.topological_order().size() == scc.members.size());
    }
}

TEST_CASE("farf equals BFS over the raw graph and respects the SCC pop bound") {
    std::mt19937 rng(202);
    for (int round = 0; round < 30; ++round) {
        int n = 2 + static_cast<int>(rng() % 120);
        int m = static_cast<int>(rng() % static_cast<unsigned>(4 * n));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < m; ++i)
            edges.emplace_back(static_cast<int>(rng() % static_cast<unsigned>(n)),
                               static_cast<int>(rng() % static_cast<unsigned>(n)));
        FileReferenceGraph frg = make_graph(n, edges);
        SccIndex scc = compute_scc(frg);

        std::vector<std::string> seeds;
        size_t k = 1 + rng() % 3;
        for (size_t i = 0; i < k; ++i)
            seeds.push_back(frg.files[rng() % frg.files.size()]);

        FarfStats stats;
        auto result = farf(frg, scc, seeds, &stats);
        std::set<std::string> expected = bfs_oracle(frg, seeds);
        REQUIRE(std::set<std::string>(result.begin(), result.end()) == expected);
        CHECK(stats.scc_pops <= scc.members.size());

        // farf(S) contains S; applying farf again adds nothing; unions
        // distribute over reachability.
        for (const auto &s : seeds)
            CHECK(std::find(result.begin(), result.end(), s) != result.end());
        CHECK(farf(frg, scc, result) == result);

        auto left = farf(frg, scc, {seeds[0]});
        auto rest = farf(frg, scc, seeds);
        std::set<std::string> unioned(left.begin(), left.end());
        for (size_t i = 1; i < seeds.size(); ++i) {
            auto part = farf(frg, scc, {seeds[i]});
            unioned.insert(part.begin(), part.end());
        }
        CHECK(std::set<std::string>(rest.begin(), rest.end()) == unioned);
    }
}

TEST_CASE("unknown files fail fast") {
    Project p = analyze_fixture_dir("cross_call");
    FileReferenceGraph frg = frg_of(p);
    SccIndex scc = compute_scc(frg);
    CHECK_THROWS_AS(farf(frg, scc, {"nope.c"}), UnknownFile);
}

TEST_CASE("cache round trip preserves graph, components and behavior") {
    Project p = analyze_fixture_dir("extern_global");
    FrgCache cache;
    cache.hash = project_content_hash(p.files);
    cache.frg = frg_of(p);
    cache.scc = compute_scc(cache.frg);

    std::string bytes = frg_cache_to_json(cache);
    CHECK(bytes.find("\"hash\"") != std::string::npos);
    CHECK(bytes.find("\"cond_edges\"") != std::string::npos);

    FrgCache back = frg_cache_from_json(bytes);
    CHECK(back.hash == cache.hash);
    CHECK(back.frg.files == cache.frg.files);
    CHECK(back.frg.edges == cache.frg.edges);
    CHECK(farf(back.frg, back.scc, {"good.c"}) == farf(cache.frg, cache.scc, {"good.c"}));

    CHECK_THROWS_AS(frg_cache_from_json("{\"hash\": 3}"), SchemaError);
    CHECK_THROWS_AS(frg_cache_from_json("galloping nonsense"), SchemaError);
}

TEST_CASE("content hash is order-independent and content-sensitive") {
    std::vector<SourceFile> a = {{"a.c", "int x;"}, {"b.c", "int y;"}};
    std::vector<SourceFile> b = {{"b.c", "int y;"}, {"a.c", "int x;"}};
    CHECK(project_content_hash(a) == project_content_hash(b));
    std::vector<SourceFile> c = {{"a.c", "int x;"}, {"b.c", "int z;"}};
    CHECK(project_content_hash(a) != project_content_hash(c));
}
