#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fpm/ecpg.hpp"
#include "fpm/slicer.hpp"
#include "test_support.hpp"

using namespace fpm;
using namespace fpm::test;

namespace {

Ecpg build_fixture(const std::string &name) {
    EcpgBuild built = build_ecpg(analyze_fixture_dir(name));
    return std::move(built.graph);
}

// Table-driven rule classifier; every F/S/V edge must match exactly one row.
int f_rule(const Ecpg &g, const Edge &e) {
    const AstNode &src = g.nodes()[e.src];
    const AstNode &dst = g.nodes()[e.dst];
    int matches = 0;
    int rule = -1;
    if (src.kind == NodeKind::Call && dst.kind == NodeKind::FunctionDef) {
        ++matches;
        rule = 0;
    }
    if (src.kind == NodeKind::Arg && dst.kind == NodeKind::Param) {
        ++matches;
        rule = 1;
    }
    REQUIRE(matches == 1);
    return rule;
}

int s_rule(const Ecpg &g, const Edge &e) {
    const AstNode &src = g.nodes()[e.src];
    const AstNode &dst = g.nodes()[e.dst];
    auto is_child = [&](NodeId c) {
        for (NodeId k : src.children)
            if (k == c)
                return true;
        return false;
    };
    int matches = 0;
    int rule = -1;
    if (src.kind == NodeKind::If && is_child(e.dst) &&
        (dst.kind == NodeKind::Block || dst.kind == NodeKind::Else)) {
        ++matches;
        rule = 0;
    }
    if (src.kind == NodeKind::Switch && is_child(e.dst) &&
        (dst.kind == NodeKind::Case || dst.kind == NodeKind::Default)) {
        ++matches;
        rule = 1;
    }
    if (is_scope_kind(src.kind) && is_child(e.dst) && is_statement_kind(dst.kind)) {
        ++matches;
        rule = 2;
    }
    REQUIRE(matches == 1);
    return rule;
}

void v_rule(const Ecpg &g, const Edge &e) {
    const AstNode &src = g.nodes()[e.src];
    const AstNode &dst = g.nodes()[e.dst];
    bool decl = src.kind == NodeKind::VarDecl || src.kind == NodeKind::Param;
    REQUIRE(decl);
    REQUIRE(dst.kind == NodeKind::Identifier);
    REQUIRE(src.name == dst.name);
}

} // namespace

TEST_CASE("slice demo: call edges link the call site into the callee") {
    Ecpg g = build_fixture("slice_demo");
    NodeId call = find_node(g.nodes(), NodeKind::Call, 3);
    NodeId callee = kNoNode;
    NodeId param = kNoNode;
    for (const AstNode &n : g.nodes().all()) {
        if (n.kind == NodeKind::FunctionDef && n.name == "assign")
            callee = n.id;
        if (n.kind == NodeKind::Param && n.name == "i")
            param = n.id;
    }
    REQUIRE(call != kNoNode);
    REQUIRE(callee != kNoNode);
    CHECK(g.has_extra_edge(call, callee, EdgeLabel::F));

    NodeId arg = g.nodes()[call].children[0];
    CHECK(g.nodes()[arg].kind == NodeKind::Arg);
    CHECK(g.has_extra_edge(arg, param, EdgeLabel::F));
}

TEST_CASE("calls to undefined externals produce no F edges but one diagnostic") {
    EcpgBuild built = build_ecpg(analyze_source("void f() { missing(1, 2); }"));
    CHECK(built.graph.count_label(EdgeLabel::F) == 0);
    int unresolved = 0;
    for (const auto &d : built.diagnostics)
        if (d.kind == Diagnostic::Kind::UnresolvedCall)
            ++unresolved;
    CHECK(unresolved == 1);
}

TEST_CASE("three-argument call to a three-parameter callee yields 1+3 F edges") {
    EcpgBuild built = build_ecpg(analyze_source("int add3(int a, int b, int c) { return a; }\n"
                                                "void f() { add3(1, 2, 3); }\n"));
    CHECK(built.graph.count_label(EdgeLabel::F) == 4);
}

TEST_CASE("arity mismatches pair min(arity) and are diagnosed") {
    EcpgBuild built = build_ecpg(analyze_source("int two(int a, int b) { return a; }\n"
                                                "void f() { two(1, 2, 3); }\n"));
    CHECK(built.graph.count_label(EdgeLabel::F) == 3); // call->entry + two pairs
    bool diagnosed = false;
    for (const auto &d : built.diagnostics)
        if (d.kind == Diagnostic::Kind::ArityMismatch)
            diagnosed = true;
    CHECK(diagnosed);
}

TEST_CASE("slice demo: the if at line 11 structurally owns the else branch") {
    Ecpg g = build_fixture("slice_demo");
    NodeId if_node = find_node(g.nodes(), NodeKind::If, 11);
    NodeId else_node = find_node(g.nodes(), NodeKind::Else, 14);
    REQUIRE(if_node != kNoNode);
    REQUIRE(else_node != kNoNode);
    CHECK(g.has_extra_edge(if_node, else_node, EdgeLabel::S));

    // and the else branch owns the statement at line 15 through its block
    NodeId tail = find_node(g.nodes(), NodeKind::Assign, 15);
    NodeId else_block = g.nodes()[else_node].children[0];
    CHECK(g.has_extra_edge(else_node, else_block, EdgeLabel::S));
    CHECK(g.has_extra_edge(else_block, tail, EdgeLabel::S));
}

TEST_CASE("a ten-case switch gets one S edge per case") {
    std::string source = "void act(int status) {\n    switch (status) {\n";
    for (int i = 1; i <= 10; ++i)
        source += "    case " + std::to_string(i) + ":\n        status = 0;\n";
    source += "    }\n}\n";
    EcpgBuild built = build_ecpg(analyze_source(source));
    const Ecpg &g = built.graph;
    NodeId sw = find_node(g.nodes(), NodeKind::Switch, 2);
    int fanout = 0;
    for (const Edge &e : g.extra)
        if (e.label == EdgeLabel::S && e.src == sw)
            ++fanout;
    CHECK(fanout == 10);
}

TEST_CASE("flat function bodies only produce scope-to-statement S edges") {
    EcpgBuild built = build_ecpg(analyze_source("void f() { int a = 1; a = 2; }"));
    const Ecpg &g = built.graph;
    CHECK(g.count_label(EdgeLabel::S) > 0);
    for (const Edge &e : g.extra) {
        if (e.label != EdgeLabel::S)
            continue;
        NodeKind k = g.nodes()[e.src].kind;
        CHECK(k != NodeKind::If);
        CHECK(k != NodeKind::Switch);
        CHECK(s_rule(g, e) == 2);
    }
}

TEST_CASE("slice demo: variable edges connect declarations to uses") {
    Ecpg g = build_fixture("slice_demo");
    NodeId global = find_node(g.nodes(), NodeKind::VarDecl, 1);
    NodeId use_in_if = kNoNode;
    for (const AstNode &n : g.nodes().all())
        if (n.kind == NodeKind::Identifier && n.name == "global_true" && n.loc.line == 11)
            use_in_if = n.id;
    REQUIRE(use_in_if != kNoNode);
    CHECK(g.has_extra_edge(global, use_in_if, EdgeLabel::V));
}

TEST_CASE("extern globals get cross-file V edges from the definition") {
    Ecpg g = build_fixture("extern_global");
    NodeId def = find_node(g.nodes(), NodeKind::VarDecl, 1, "io.c");
    REQUIRE(def != kNoNode);
    bool cross_file = false;
    for (const Edge &e : g.extra)
        if (e.label == EdgeLabel::V && e.src == def &&
            g.nodes()[e.dst].loc.file == "good.c")
            cross_file = true;
    CHECK(cross_file);
}

TEST_CASE("unused declarations have no outgoing V edges") {
    EcpgBuild built = build_ecpg(analyze_source("void f() { int unused = 1; int used = 2; int r = used; }"));
    const Ecpg &g = built.graph;
    NodeId unused = kNoNode;
    for (const AstNode &n : g.nodes().all())
        if (n.kind == NodeKind::VarDecl && n.name == "unused")
            unused = n.id;
    for (const Edge &e : g.extra)
        if (e.label == EdgeLabel::V)
            CHECK(e.src != unused);
}

TEST_CASE("each use has at most one incoming V edge") {
    Ecpg g = build_fixture("rules");
    std::map<NodeId, int> incoming;
    for (const Edge &e : g.extra)
        if (e.label == EdgeLabel::V)
            ++incoming[e.dst];
    for (const auto &[node, count] : incoming)
        CHECK(count == 1);
}

TEST_CASE("rule conformance: every F/S/V edge matches exactly one rule and all rules fire") {
    Ecpg g = build_fixture("rules");
    int f_rules[2] = {0, 0};
    int s_rules[3] = {0, 0, 0};
    int v_edges = 0;
    for (const Edge &e : g.extra) {
        switch (e.label) {
        case EdgeLabel::F:
            ++f_rules[f_rule(g, e)];
            break;
        case EdgeLabel::S:
            ++s_rules[s_rule(g, e)];
            break;
        case EdgeLabel::V:
            v_rule(g, e);
            ++v_edges;
            break;
        default:
            FAIL("unexpected label in extra edge set");
        }
    }
    CHECK(f_rules[0] > 0); // call -> entry
    CHECK(f_rules[1] > 0); // arg -> param
    CHECK(s_rules[0] > 0); // if -> branch
    CHECK(s_rules[1] > 0); // switch -> clause
    CHECK(s_rules[2] > 0); // scope -> nested statement/block
    CHECK(v_edges > 0);
}

TEST_CASE("eCPG edges are the disjoint union of base and F/S/V") {
    Ecpg g = build_fixture("slice_demo");
    CHECK(g.count_label(EdgeLabel::F) > 0);
    CHECK(g.count_label(EdgeLabel::S) > 0);
    CHECK(g.count_label(EdgeLabel::V) > 0);
    for (const Edge &e : g.base.edges) {
        CHECK(e.label != EdgeLabel::F);
        CHECK(e.label != EdgeLabel::S);
        CHECK(e.label != EdgeLabel::V);
    }
    for (const Edge &e : g.extra) {
        bool extra_label =
            e.label == EdgeLabel::F || e.label == EdgeLabel::S || e.label == EdgeLabel::V;
        CHECK(extra_label);
    }
}

TEST_CASE("a single empty file builds one node and no extra edges") {
    EcpgBuild built = build_ecpg(analyze_source(""));
    CHECK(built.graph.nodes().size() == 1);
    CHECK(built.graph.nodes()[0].kind == NodeKind::TranslationUnit);
    CHECK(built.graph.extra.empty());
}

TEST_CASE("a file that fails to parse does not fail the project build") {
    EcpgBuild built = build_ecpg(analyze_project(
        {SourceFile{"bad.c", "typedef struct broken"}, SourceFile{"good.c", "int ok = 1;"}}));
    bool has_good = false;
    for (const AstNode &n : built.graph.nodes().all())
        if (n.kind == NodeKind::VarDecl && n.name == "ok")
            has_good = true;
    CHECK(has_good);
    bool syntax_diag = false;
    for (const auto &d : built.diagnostics)
        if (d.kind == Diagnostic::Kind::SyntaxError)
            syntax_diag = true;
    CHECK(syntax_diag);
}

TEST_CASE("export/import round trip is byte-stable and id-identical") {
    Ecpg g = build_fixture("slice_demo");
    std::string bytes = export_ecpg(g);
    Ecpg back = import_ecpg(bytes);
    CHECK(back.nodes().size() == g.nodes().size());
    for (size_t i = 0; i < g.nodes().size(); ++i) {
        const AstNode &a = g.nodes()[static_cast<NodeId>(i)];
        const AstNode &b = back.nodes()[static_cast<NodeId>(i)];
        CHECK(a.loc == b.loc);
        CHECK(a.kind == b.kind);
        CHECK(a.code == b.code);
        CHECK(g.base.function_name(a.id) == back.base.function_name(b.id));
    }
    CHECK(export_ecpg(back) == bytes);
}

TEST_CASE("import rejects malformed graphs with SchemaError") {
    Ecpg g = build_fixture("slice_demo");
    std::string bytes = export_ecpg(g);

    SUBCASE("unknown edge label") {
        std::string broken = bytes;
        size_t pos = broken.find("\"label\": \"AST\"");
        REQUIRE(pos != std::string::npos);
        broken.replace(pos, 14, "\"label\": \"X\"");
        CHECK_THROWS_AS(import_ecpg(broken), SchemaError);
    }
    SUBCASE("wrong version") {
        std::string broken = bytes;
        size_t pos = broken.find("\"version\": 1");
        REQUIRE(pos != std::string::npos);
        broken.replace(pos, 12, "\"version\": 7");
        CHECK_THROWS_AS(import_ecpg(broken), SchemaError);
    }
    SUBCASE("not json") { CHECK_THROWS_AS(import_ecpg("not json at all"), SchemaError); }
    SUBCASE("missing keys") {
        CHECK_THROWS_AS(import_ecpg("{\"version\":1,\"nodes\":[{\"id\":0}],\"edges\":[]}"),
                        SchemaError);
    }
    SUBCASE("sparse ids") {
        CHECK_THROWS_AS(
            import_ecpg("{\"version\":1,\"nodes\":[{\"id\":5,\"kind\":\"Block\",\"code\":\"\","
                        "\"file\":\"a.c\",\"line\":1,\"column\":1,\"function\":null}],"
                        "\"edges\":[]}"),
            SchemaError);
    }
}

TEST_CASE("a graph from a foreign producer slices unchanged") {
    std::string bytes = read_file(fixture_dir() + "/external/graph.json");
    Ecpg g = import_ecpg(bytes);
    CHECK(g.nodes().size() == 5);

    Slicer slicer(g);
    DiskSourceStore store(fixture_dir() + "/external");
    Slice slice = slicer.run({SlicingCriterion{"ext.c", 3, std::nullopt}},
                             SliceDirection::Backward, LabelSet::slicing_default(), store);
    CHECK(slice.line_set("ext.c") == std::set<int>({1, 2, 3}));
}
