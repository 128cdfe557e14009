#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fpm/warnings.hpp"
#include "fpm/xml_lite.hpp"
#include "test_support.hpp"

#include <random>

using namespace fpm;
using namespace fpm::test;

TEST_CASE("cppcheck XML: errors, locations and attributes") {
    std::string bytes = read_file(fixture_dir() + "/reports/cppcheck_sample.xml");
    std::vector<Warning> warnings = parse_cppcheck_xml(bytes);
    REQUIRE(warnings.size() == 2); // the location-less information entry is dropped

    const Warning &first = warnings[0];
    CHECK(first.tool == SastTool::Cppcheck);
    CHECK(first.rule_id == "uninitvar");
    CHECK(first.severity == "error");
    REQUIRE(first.cwe.has_value());
    CHECK(*first.cwe == 457);
    CHECK(first.trace.size() == 2);
    CHECK(first.primary_loc.file == "demo.c");
    CHECK(first.primary_loc.line == 8);
    REQUIRE(first.primary_loc.column.has_value());
    CHECK(*first.primary_loc.column == 9);
    CHECK(first.trace[1].info == "x is declared here");

    // entity decoding in attribute values
    CHECK(warnings[1].message == "Possible null pointer dereference: p <here>");
    REQUIRE(warnings[1].cwe.has_value());
    CHECK(*warnings[1].cwe == 476);
}

TEST_CASE("cppcheck XML: empty errors element yields no warnings") {
    CHECK(parse_cppcheck_xml("<results version=\"2\"><errors/></results>").empty());
    CHECK(parse_cppcheck_xml("<results version=\"2\"></results>").empty());
}

TEST_CASE("cppcheck XML: structural violations raise MalformedReport") {
    CHECK_THROWS_AS(parse_cppcheck_xml("<results><errors>"), MalformedReport);
    CHECK_THROWS_AS(parse_cppcheck_xml("<wrong/>"), MalformedReport);
    CHECK_THROWS_AS(parse_cppcheck_xml("<results></wrong>"), MalformedReport);
    CHECK_THROWS_AS(parse_cppcheck_xml(""), MalformedReport);
}

TEST_CASE("parsers are total over garbage and truncated input") {
    std::string sample = read_file(fixture_dir() + "/reports/cppcheck_sample.xml");
    for (size_t cut = 0; cut < sample.size(); cut += 7) {
        try {
            parse_cppcheck_xml(sample.substr(0, cut));
        } catch (const MalformedReport &) {
        }
    }
    std::mt19937 rng(99);
    for (int round = 0; round < 200; ++round) {
        std::string junk;
        size_t len = rng() % 120;
        for (size_t i = 0; i < len; ++i)
            junk += static_cast<char>(rng() % 256);
        try {
            parse_cppcheck_xml(junk);
        } catch (const MalformedReport &) {
        }
        try {
            parse_generic_json(junk);
        } catch (const SchemaError &) {
        }
    }
}

TEST_CASE("warning JSON: field mapping, traces and unknown tools") {
    std::string bytes = read_file(fixture_dir() + "/reports/generic_sample.json");
    std::vector<Warning> warnings = parse_generic_json(bytes);
    REQUIRE(warnings.size() == 2);

    const Warning &w = warnings[0];
    CHECK(w.tool == SastTool::Infer);
    CHECK(w.rule_id == "NULL_DEREFERENCE");
    REQUIRE(w.cwe.has_value());
    CHECK(*w.cwe == 476);
    REQUIRE(w.trace.size() == 4); // primary + three steps, order preserved
    CHECK(w.trace[1].file == "a.c");
    CHECK(w.trace[2].info == "data assigned here");
    CHECK(!w.primary_loc.column.has_value());

    CHECK(warnings[1].tool == SastTool::Generic); // unknown names map to generic
    CHECK(warnings[1].trace.size() == 1);
}

TEST_CASE("warning JSON: missing line is a schema error") {
    CHECK_THROWS_AS(parse_generic_json("{\"warnings\":[{\"file\":\"a.c\"}]}"), SchemaError);
    CHECK_THROWS_AS(parse_generic_json("{\"warnings\":[{\"file\":\"a.c\",\"line\":\"x\"}]}"),
                    SchemaError);
    CHECK_THROWS_AS(parse_generic_json("[]"), SchemaError);
}

TEST_CASE("criteria derivation: primary only and full trace") {
    Warning w;
    w.primary_loc = WarnLoc{"file.c", 81, 12, ""};
    w.trace = {WarnLoc{"file.c", 81, 12, ""}, WarnLoc{"a.c", 4, std::nullopt, ""},
               WarnLoc{"e.c", 9, 3, ""}, WarnLoc{"a.c", 4, std::nullopt, ""}};

    auto primary = warning_to_criteria(w, CriteriaMode::PrimaryOnly);
    REQUIRE(primary.size() == 1);
    CHECK(primary[0].file == "file.c");
    CHECK(primary[0].line == 81);
    REQUIRE(primary[0].column.has_value());

    auto full = warning_to_criteria(w, CriteriaMode::FullTrace);
    REQUIRE(full.size() == 3); // duplicates removed, order preserved
    CHECK(full[0].file == "file.c");
    CHECK(full[1].file == "a.c");
    CHECK(full[2].file == "e.c");
}

TEST_CASE("criteria are never empty for a valid warning") {
    Warning w;
    w.primary_loc = WarnLoc{"x.c", 3, std::nullopt, ""};
    CHECK(warning_to_criteria(w, CriteriaMode::FullTrace).size() == 1);
    CHECK(warning_to_criteria(w, CriteriaMode::PrimaryOnly).size() == 1);
}

TEST_CASE("xml reader handles nesting, comments, cdata and self-closing tags") {
    xml::Element root =
        xml::parse_document("<!-- header --><a x=\"1\"><b/><b y='2'>text<c/></b><![CDATA[junk]]></a>");
    CHECK(root.name == "a");
    REQUIRE(root.attr("x") != nullptr);
    CHECK(*root.attr("x") == "1");
    CHECK(root.all("b").size() == 2);
    CHECK(root.all("b")[1]->first("c") != nullptr);
}
