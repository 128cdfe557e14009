#pragma once

#include "fpm/diagnostics.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fpm::toml {

/// Small TOML subset used for template and configuration files:
///   - `key = value` with basic strings, multi-line """strings""", integers,
///     floats, booleans and (possibly multi-line) arrays of strings,
///   - [section] tables and [[name]] arrays of tables,
///   - # comments.
/// Documented in docs/templates.md.
struct Value {
    enum class Type { String, Integer, Float, Boolean, StringArray };
    Type type = Type::String;
    std::string str;
    long long integer = 0;
    double real = 0.0;
    bool boolean = false;
    std::vector<std::string> array;
};

using Table = std::map<std::string, Value>;

struct Document {
    Table root;
    std::map<std::string, Table> sections;
    std::map<std::string, std::vector<Table>> table_arrays;

    const Value *find(const std::string &section, const std::string &key) const;

    std::string get_string(const std::string &section, const std::string &key,
                           const std::string &fallback) const;
    long long get_integer(const std::string &section, const std::string &key,
                          long long fallback) const;
    double get_real(const std::string &section, const std::string &key, double fallback) const;
};

/// Throws SchemaError with `source_name` as the path on malformed input.
Document parse(std::string_view text, const std::string &source_name);

} // namespace fpm::toml
