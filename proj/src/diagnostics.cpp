#include "fpm/diagnostics.hpp"

namespace fpm {

std::string to_string(const SourceLoc &loc) {
    return loc.file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

std::string to_string(Diagnostic::Kind kind) {
    switch (kind) {
    case Diagnostic::Kind::SyntaxError: return "syntax-error";
    case Diagnostic::Kind::DuplicateDefinition: return "duplicate-definition";
    case Diagnostic::Kind::UnresolvedIdentifier: return "unresolved-identifier";
    case Diagnostic::Kind::UnresolvedCall: return "unresolved-call";
    case Diagnostic::Kind::ArityMismatch: return "arity-mismatch";
    case Diagnostic::Kind::TemplateNotFound: return "template-not-found";
    case Diagnostic::Kind::InvalidAttribute: return "invalid-attribute";
    }
    return "?";
}

SyntaxError::SyntaxError(SourceLoc loc, const std::string &message)
    : std::runtime_error(to_string(loc) + ": " + message), loc_(std::move(loc)) {}

SchemaError::SchemaError(int version, const std::string &path, const std::string &message)
    : std::runtime_error(path + ": " + message + " (schema version " + std::to_string(version) + ")"),
      version_(version), path_(path) {}

MalformedReport::MalformedReport(int line, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

} // namespace fpm
