#include "fpm/report.hpp"

#include "fpm/toml_lite.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fpm {

namespace {

PromptTemplate builtin_generic() {
    PromptTemplate t;
    t.id = "generic";
    t.title = "Static analysis warning";
    t.system = "You are a proficient C/C++ code reviewer who audits static analysis warnings. "
               "Judge strictly from the provided report and code context.";
    t.checklist = {
        "Contextual Analysis of the Bug",
        "Data and Control Flow Analysis",
        "Feasibility Analysis of the Reported Condition",
        "Bug Verification",
    };
    return t;
}

PromptTemplate template_from_toml(const toml::Document &doc, const std::string &fallback_id) {
    PromptTemplate t;
    t.id = doc.get_string("", "id", fallback_id);
    t.title = doc.get_string("", "title", "");
    t.system = doc.get_string("", "system", "");
    if (const toml::Value *checklist = doc.find("", "checklist");
        checklist && checklist->type == toml::Value::Type::StringArray)
        t.checklist = checklist->array;
    auto shots = doc.table_arrays.find("shots");
    if (shots != doc.table_arrays.end()) {
        for (const toml::Table &table : shots->second) {
            PromptTemplate::Shot shot;
            if (auto q = table.find("question"); q != table.end())
                shot.question = q->second.str;
            if (auto a = table.find("answer"); a != table.end())
                shot.answer = a->second.str;
            t.shots.push_back(std::move(shot));
        }
    }
    return t;
}

} // namespace

TemplateRegistry TemplateRegistry::load_dir(const std::string &dir) {
    namespace fs = std::filesystem;
    TemplateRegistry registry;
    if (fs::exists(dir)) {
        std::vector<fs::path> paths;
        for (const auto &entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".toml")
                paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end());
        for (const fs::path &path : paths) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            toml::Document doc = toml::parse(buf.str(), path.generic_string());
            PromptTemplate t = template_from_toml(doc, path.stem().string());
            registry.templates_[t.id] = std::move(t);
        }
    }
    if (!registry.templates_.count("generic"))
        registry.templates_["generic"] = builtin_generic();
    return registry;
}

const PromptTemplate *TemplateRegistry::find(const std::string &id) const {
    auto it = templates_.find(id);
    return it == templates_.end() ? nullptr : &it->second;
}

const PromptTemplate &TemplateRegistry::generic() const { return templates_.at("generic"); }

std::string TemplateRegistry::template_id_for(std::optional<int> cwe,
                                              std::vector<Diagnostic> *diagnostics) const {
    if (cwe) {
        std::string id = "cwe" + std::to_string(*cwe);
        if (templates_.count(id))
            return id;
        if (diagnostics)
            diagnostics->push_back({Diagnostic::Kind::TemplateNotFound, SourceLoc{"", 1, 1},
                                    "no template for CWE-" + std::to_string(*cwe) +
                                        ", using the generic one"});
    }
    return "generic";
}

std::vector<std::string> TemplateRegistry::ids() const {
    std::vector<std::string> out;
    for (const auto &[id, t] : templates_)
        out.push_back(id);
    return out;
}

StructuredReport assemble_report(std::string warning_id, Warning warning, Slice slice,
                                 std::vector<std::string> dependent_files,
                                 const TemplateRegistry &registry, ReportMetadata metadata,
                                 std::vector<Diagnostic> *diagnostics) {
    StructuredReport report;
    report.warning_id = std::move(warning_id);
    report.cwe_template_id = registry.template_id_for(warning.cwe, diagnostics);
    report.warning = std::move(warning);
    report.slice = std::move(slice);
    report.dependent_files = std::move(dependent_files);
    report.metadata = metadata;
    return report;
}

namespace {

std::string location_string(const WarnLoc &loc) {
    std::string out = loc.file + ":" + std::to_string(loc.line);
    if (loc.column)
        out += ":" + std::to_string(*loc.column);
    return out;
}

void append_slice_listing(std::string &out, const Slice &slice) {
    for (const SliceFileGroup &group : slice.files) {
        out += "### " + group.path + "\n\n";
        int previous = 0;
        for (const SliceLine &line : group.lines) {
            if (previous != 0 && line.n != previous + 1)
                out += "    ...\n"; // elided run of irrelevant lines
            out += group.path + ":" + std::to_string(line.n) + " | " + line.text + "\n";
            previous = line.n;
        }
        out += "\n";
    }
}

} // namespace

std::string StructuredReport::to_markdown() const {
    std::string md;
    md += "# Warning " + warning_id + "\n\n";
    md += "- tool: " + std::string(to_string(warning.tool)) + "\n";
    md += "- rule: " + warning.rule_id + "\n";
    if (warning.cwe)
        md += "- cwe: CWE-" + std::to_string(*warning.cwe) + "\n";
    if (!warning.severity.empty())
        md += "- severity: " + warning.severity + "\n";
    md += "- location: " + location_string(warning.primary_loc) + "\n";
    md += "- message: " + warning.message + "\n\n";

    if (warning.trace.size() > 1) {
        md += "## Reported trace\n\n";
        int step = 1;
        for (const WarnLoc &loc : warning.trace) {
            md += std::to_string(step++) + ". " + location_string(loc);
            if (!loc.info.empty())
                md += " - " + loc.info;
            md += "\n";
        }
        md += "\n";
    }

    md += "## Files this warning depends on\n\n";
    for (const std::string &file : dependent_files)
        md += "- " + file + "\n";
    md += "\n";

    md += "## Code context (" + std::string(to_string(metadata.slice_direction)) +
          " slice; lines kept verbatim)\n\n";
    append_slice_listing(md, slice);
    return md;
}

std::string StructuredReport::to_json() const {
    nlohmann::json doc;
    doc["warning_id"] = warning_id;
    doc["cwe_template_id"] = cwe_template_id;
    nlohmann::json w;
    w["tool"] = std::string(to_string(warning.tool));
    w["rule_id"] = warning.rule_id;
    if (warning.cwe)
        w["cwe"] = *warning.cwe;
    w["severity"] = warning.severity;
    w["message"] = warning.message;
    auto loc_json = [](const WarnLoc &loc) {
        nlohmann::json j;
        j["file"] = loc.file;
        j["line"] = loc.line;
        if (loc.column)
            j["column"] = *loc.column;
        if (!loc.info.empty())
            j["info"] = loc.info;
        return j;
    };
    w["location"] = loc_json(warning.primary_loc);
    w["trace"] = nlohmann::json::array();
    for (const WarnLoc &loc : warning.trace)
        w["trace"].push_back(loc_json(loc));
    doc["warning"] = std::move(w);
    doc["dependent_files"] = dependent_files;
    doc["metadata"] = {{"tool", std::string(to_string(metadata.tool))},
                       {"criteria_mode", std::string(to_string(metadata.criteria_mode))},
                       {"slice_direction", std::string(to_string(metadata.slice_direction))}};
    doc["slice"] = nlohmann::json::parse(slice.to_json());
    return doc.dump(2) + "\n";
}

PromptBundle render_prompt(const StructuredReport &report, const TemplateRegistry &registry,
                           DecodeParams decode) {
    const PromptTemplate *t = registry.find(report.cwe_template_id);
    if (!t)
        t = &registry.generic();

    PromptBundle bundle;
    bundle.system = t->system;
    bundle.shots = t->shots;
    bundle.decode = decode;

    std::string user;
    user += report.to_markdown();
    user += "## How to analyze\n\n";
    user += "Work through the following steps explicitly, one by one:\n\n";
    int step = 1;
    for (const std::string &item : t->checklist)
        user += std::to_string(step++) + ". " + item + "\n";
    user += "\nAfter the analysis, answer whether the warning is a false alarm, a real bug, "
            "or unknown. End your reply with exactly one line of the form:\n\n"
            "VERDICT: FALSE ALARM\nor\nVERDICT: REAL BUG\nor\nVERDICT: UNKNOWN\n";
    bundle.user = std::move(user);
    return bundle;
}

} // namespace fpm
