#pragma once

#include "fpm/source_loc.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fpm {

/// Non-fatal findings collected while parsing, resolving symbols or building
/// graphs. The pipeline keeps going; callers may inspect or log them.
struct Diagnostic {
    enum class Kind {
        SyntaxError,
        DuplicateDefinition,
        UnresolvedIdentifier,
        UnresolvedCall,
        ArityMismatch,
        TemplateNotFound,
        InvalidAttribute,
    };
    Kind kind;
    SourceLoc loc;
    std::string message;
};

std::string to_string(Diagnostic::Kind kind);

/// Fatal parse error for a single translation unit. Parsing of a project
/// recovers at the next top-level construct; the error is then demoted to a
/// Diagnostic.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(SourceLoc loc, const std::string &message);
    const SourceLoc &loc() const { return loc_; }

private:
    SourceLoc loc_;
};

/// Malformed interchange data (eCPG JSON, warning JSON, template files).
class SchemaError : public std::runtime_error {
public:
    SchemaError(int version, const std::string &path, const std::string &message);
    int version() const { return version_; }
    const std::string &path() const { return path_; }

private:
    int version_;
    std::string path_;
};

/// Malformed SAST report input (XML structure violations).
class MalformedReport : public std::runtime_error {
public:
    MalformedReport(int line, const std::string &message);
    int line() const { return line_; }

private:
    int line_;
};

class CriterionOutOfRange : public std::runtime_error {
public:
    explicit CriterionOutOfRange(const std::string &message)
        : std::runtime_error(message) {}
};

class SourceUnavailable : public std::runtime_error {
public:
    explicit SourceUnavailable(const std::string &path)
        : std::runtime_error("source file unavailable: " + path), path_(path) {}
    const std::string &path() const { return path_; }

private:
    std::string path_;
};

class UnknownFile : public std::runtime_error {
public:
    explicit UnknownFile(const std::string &path)
        : std::runtime_error("file not in reference graph: " + path), path_(path) {}
    const std::string &path() const { return path_; }

private:
    std::string path_;
};

class DanglingEdge : public std::logic_error {
public:
    explicit DanglingEdge(const std::string &message) : std::logic_error(message) {}
};

class EmptyBallot : public std::runtime_error {
public:
    EmptyBallot() : std::runtime_error("majority vote over an empty ballot") {}
};

class TransportError : public std::runtime_error {
public:
    explicit TransportError(const std::string &message)
        : std::runtime_error(message) {}
};

} // namespace fpm
