#pragma once

#include "fpm/diagnostics.hpp"
#include "fpm/slicer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fpm {

enum class SastTool { Cppcheck, Infer, Csa, Generic };
std::string_view to_string(SastTool tool);
SastTool sast_tool_from_string(std::string_view name); // unknown names map to Generic

/// One step of a warning's location trace. Columns are optional: several
/// tools omit them, and 0 means "unknown" in Cppcheck output.
struct WarnLoc {
    std::string file;
    int line = 1;
    std::optional<int> column;
    std::string info;
};

/// A normalized SAST finding.
struct Warning {
    SastTool tool = SastTool::Generic;
    std::string rule_id;
    std::optional<int> cwe; // within [1, 1999] when present
    std::string message;
    std::string severity;
    WarnLoc primary_loc;
    std::vector<WarnLoc> trace; // all report locations in document order
};

/// Cppcheck `--xml` (version 2) reports. One Warning per <error> element that
/// carries at least one <location>; the first location is primary. Unknown
/// attributes are ignored. Throws MalformedReport on XML violations.
std::vector<Warning> parse_cppcheck_xml(const std::string &bytes);

/// Warning-JSON: `{"warnings": [...]}` as documented in docs/warning-schema.md
/// (the offline-converted form used for Infer and CSA findings). Throws
/// SchemaError on malformed records.
std::vector<Warning> parse_generic_json(const std::string &bytes);

enum class CriteriaMode { PrimaryOnly, FullTrace };
std::string_view to_string(CriteriaMode mode);
std::optional<CriteriaMode> criteria_mode_from_string(std::string_view name);

/// Slice anchors for a warning: the primary location alone, or the primary
/// location plus every trace step, duplicates removed, order preserved.
std::vector<SlicingCriterion> warning_to_criteria(const Warning &warning, CriteriaMode mode);

} // namespace fpm
