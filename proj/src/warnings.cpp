#include "fpm/warnings.hpp"

#include "fpm/xml_lite.hpp"

#include <json.hpp>

namespace fpm {

std::string_view to_string(SastTool tool) {
    switch (tool) {
    case SastTool::Cppcheck: return "cppcheck";
    case SastTool::Infer: return "infer";
    case SastTool::Csa: return "csa";
    case SastTool::Generic: return "generic";
    }
    return "?";
}

SastTool sast_tool_from_string(std::string_view name) {
    if (name == "cppcheck") return SastTool::Cppcheck;
    if (name == "infer") return SastTool::Infer;
    if (name == "csa") return SastTool::Csa;
    return SastTool::Generic;
}

std::string_view to_string(CriteriaMode mode) {
    return mode == CriteriaMode::PrimaryOnly ? "primary_only" : "full_trace";
}

std::optional<CriteriaMode> criteria_mode_from_string(std::string_view name) {
    if (name == "primary_only") return CriteriaMode::PrimaryOnly;
    if (name == "full_trace") return CriteriaMode::FullTrace;
    return std::nullopt;
}

namespace {

std::optional<int> parse_cwe(const std::string &text) {
    try {
        int value = std::stoi(text);
        if (value >= 1 && value <= 1999)
            return value;
    } catch (...) {
    }
    return std::nullopt; // out-of-range or junk: treated as absent
}

std::optional<WarnLoc> location_from_xml(const xml::Element &loc) {
    const std::string *file = loc.attr("file");
    const std::string *line = loc.attr("line");
    if (!file || !line)
        return std::nullopt;
    WarnLoc out;
    out.file = *file;
    try {
        out.line = std::stoi(*line);
    } catch (...) {
        return std::nullopt;
    }
    if (out.line < 1)
        return std::nullopt;
    if (const std::string *column = loc.attr("column")) {
        try {
            int c = std::stoi(*column);
            if (c >= 1)
                out.column = c; // 0 means "unknown" in cppcheck output
        } catch (...) {
        }
    }
    if (const std::string *info = loc.attr("info"))
        out.info = *info;
    return out;
}

} // namespace

std::vector<Warning> parse_cppcheck_xml(const std::string &bytes) {
    xml::Element root = xml::parse_document(bytes);
    if (root.name != "results")
        throw MalformedReport(1, "root element must be <results>, got <" + root.name + ">");

    std::vector<Warning> warnings;
    const xml::Element *errors = root.first("errors");
    if (!errors)
        return warnings;

    for (const xml::Element *error : errors->all("error")) {
        Warning w;
        w.tool = SastTool::Cppcheck;
        if (const std::string *id = error->attr("id"))
            w.rule_id = *id;
        if (const std::string *severity = error->attr("severity"))
            w.severity = *severity;
        if (const std::string *msg = error->attr("msg"))
            w.message = *msg;
        if (const std::string *cwe = error->attr("cwe"))
            w.cwe = parse_cwe(*cwe);

        for (const xml::Element *loc : error->all("location"))
            if (auto parsed = location_from_xml(*loc))
                w.trace.push_back(*parsed);
        if (w.trace.empty())
            continue; // tool-level notes without a location are not findings
        w.primary_loc = w.trace.front();
        warnings.push_back(std::move(w));
    }
    return warnings;
}

std::vector<Warning> parse_generic_json(const std::string &bytes) {
    nlohmann::json doc = nlohmann::json::parse(bytes, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("warnings") ||
        !doc["warnings"].is_array())
        throw SchemaError(1, "warning-json", "expected an object with a 'warnings' array");

    std::vector<Warning> warnings;
    size_t index = 0;
    for (const auto &record : doc["warnings"]) {
        std::string path = "warnings[" + std::to_string(index++) + "]";
        if (!record.is_object())
            throw SchemaError(1, path, "record must be an object");
        if (!record.contains("file") || !record.contains("line"))
            throw SchemaError(1, path, "records need 'file' and 'line'");
        if (!record["line"].is_number_integer())
            throw SchemaError(1, path + ".line", "line must be an integer");

        Warning w;
        w.tool = sast_tool_from_string(record.value("tool", "generic"));
        w.rule_id = record.value("rule_id", "");
        w.message = record.value("message", "");
        w.severity = record.value("severity", "");
        if (record.contains("cwe")) {
            if (!record["cwe"].is_number_integer())
                throw SchemaError(1, path + ".cwe", "cwe must be an integer");
            int cwe = record["cwe"].get<int>();
            if (cwe >= 1 && cwe <= 1999)
                w.cwe = cwe;
        }
        w.primary_loc.file = record["file"].get<std::string>();
        w.primary_loc.line = record["line"].get<int>();
        if (w.primary_loc.line < 1)
            throw SchemaError(1, path + ".line", "line must be >= 1");
        if (record.contains("column") && record["column"].is_number_integer())
            w.primary_loc.column = record["column"].get<int>();

        w.trace.push_back(w.primary_loc);
        if (record.contains("trace")) {
            if (!record["trace"].is_array())
                throw SchemaError(1, path + ".trace", "trace must be an array");
            for (const auto &step : record["trace"]) {
                if (!step.is_object() || !step.contains("file") || !step.contains("line") ||
                    !step["line"].is_number_integer())
                    throw SchemaError(1, path + ".trace", "steps need 'file' and integer 'line'");
                WarnLoc loc;
                loc.file = step["file"].get<std::string>();
                loc.line = step["line"].get<int>();
                if (step.contains("column") && step["column"].is_number_integer())
                    loc.column = step["column"].get<int>();
                loc.info = step.value("info", "");
                w.trace.push_back(std::move(loc));
            }
        }
        warnings.push_back(std::move(w));
    }
    return warnings;
}

std::vector<SlicingCriterion> warning_to_criteria(const Warning &warning, CriteriaMode mode) {
    std::vector<SlicingCriterion> criteria;
    auto push = [&criteria](const WarnLoc &loc) {
        SlicingCriterion c{loc.file, loc.line, loc.column};
        for (const SlicingCriterion &existing : criteria)
            if (existing.file == c.file && existing.line == c.line && existing.column == c.column)
                return;
        criteria.push_back(std::move(c));
    };
    push(warning.primary_loc);
    if (mode == CriteriaMode::FullTrace)
        for (const WarnLoc &loc : warning.trace)
            push(loc);
    return criteria;
}

} // namespace fpm
