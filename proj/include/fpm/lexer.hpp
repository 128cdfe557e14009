#pragma once

#include "fpm/diagnostics.hpp"
#include "fpm/source_loc.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fpm {

enum class TokenKind {
    Identifier,
    Keyword,
    Number,
    CharLit,
    StringLit,
    Punct,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string text;
    SourceLoc loc;
    size_t offset = 0; // byte offset of the first character

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
    bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

bool is_minic_keyword(std::string_view word);

/// Tokenize a MiniC translation unit. Comments and whitespace are skipped;
/// any byte sequence either tokenizes or raises SyntaxError (never UB).
std::vector<Token> tokenize(std::string_view source, const std::string &filename);

} // namespace fpm
