#pragma once

#include "fpm/diagnostics.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fpm::xml {

/// Minimal XML element tree: elements, attributes and nesting. Text content,
/// comments, processing instructions, CDATA and doctypes are skipped; the
/// standard and numeric character entities are decoded in attribute values.
/// Enough for Cppcheck --xml version 2 reports.
struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;

    const std::string *attr(std::string_view key) const;
    const Element *first(std::string_view tag) const;
    std::vector<const Element *> all(std::string_view tag) const;
};

/// Parse a document; returns the root element. Throws MalformedReport (with a
/// 1-based line) on structural violations; never crashes on arbitrary bytes.
Element parse_document(std::string_view bytes);

} // namespace fpm::xml
