#pragma once

#include "fpm/diagnostics.hpp"
#include "fpm/slicer.hpp"
#include "fpm/warnings.hpp"

#include <map>
#include <string>
#include <vector>

namespace fpm {

/// CWE-specific prompt material: the reviewer persona, an analysis checklist
/// and a couple of worked question/answer examples.
struct PromptTemplate {
    std::string id; // "cwe121" ... "generic"
    std::string title;
    std::string system;
    std::vector<std::string> checklist;
    struct Shot {
        std::string question;
        std::string answer;
    };
    std::vector<Shot> shots;
};

class TemplateRegistry {
public:
    /// Load every *.toml under `dir`. A registry always carries a generic
    /// template: when the directory has none, a minimal built-in one is used
    /// so the fallback path stays available.
    static TemplateRegistry load_dir(const std::string &dir);

    const PromptTemplate *find(const std::string &id) const;
    const PromptTemplate &generic() const;

    /// "cwe<N>" when registered, otherwise "generic" (recording a
    /// TemplateNotFound diagnostic).
    std::string template_id_for(std::optional<int> cwe,
                                std::vector<Diagnostic> *diagnostics = nullptr) const;

    std::vector<std::string> ids() const;

private:
    std::map<std::string, PromptTemplate> templates_;
};

struct ReportMetadata {
    SastTool tool = SastTool::Generic;
    CriteriaMode criteria_mode = CriteriaMode::FullTrace;
    SliceDirection slice_direction = SliceDirection::Backward;
};

/// The composed unit fed to the adjudicator: warning, sliced context and the
/// dependent-file summary. Serialization is deterministic: identical inputs
/// produce identical bytes.
struct StructuredReport {
    std::string warning_id;
    Warning warning;
    Slice slice;
    std::vector<std::string> dependent_files;
    std::string cwe_template_id;
    ReportMetadata metadata;

    std::string to_markdown() const; // what the model reads
    std::string to_json() const;     // what lands on disk
};

StructuredReport assemble_report(std::string warning_id, Warning warning, Slice slice,
                                 std::vector<std::string> dependent_files,
                                 const TemplateRegistry &registry, ReportMetadata metadata,
                                 std::vector<Diagnostic> *diagnostics = nullptr);

struct DecodeParams {
    int n_samples = 5;
    double temperature = 0.7;
};

struct PromptBundle {
    std::string system;
    std::string user;
    std::vector<PromptTemplate::Shot> shots;
    DecodeParams decode;
};

/// Render the report into a chat prompt: report summary, per-file slice
/// listing (every slice line verbatim, prefixed path:line), the CWE checklist
/// and the verdict-marker instruction.
PromptBundle render_prompt(const StructuredReport &report, const TemplateRegistry &registry,
                           DecodeParams decode = {});

} // namespace fpm
