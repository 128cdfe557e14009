#include "fpm/lexer.hpp"

#include <array>
#include <cctype>

namespace fpm {

namespace {

// Keywords of the supported C subset. Recognized-but-unsupported C keywords
// are kept separate so the parser can report them precisely.
constexpr std::array<std::string_view, 13> kKeywords = {
    "int", "float", "char", "void", "const", "extern", "if", "else",
    "switch", "case", "default", "while", "for",
};

constexpr std::array<std::string_view, 3> kKeywords2 = {"return", "break", "continue"};

// Multi-character punctuation, longest first for maximal munch.
constexpr std::array<std::string_view, 19> kPuncts3 = {
    "<<=", ">>=", "->", "<<", ">>", "<=", ">=", "==", "!=", "&&",
    "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

} // namespace

bool is_minic_keyword(std::string_view word) {
    for (auto k : kKeywords)
        if (k == word)
            return true;
    for (auto k : kKeywords2)
        if (k == word)
            return true;
    return false;
}

std::vector<Token> tokenize(std::string_view src, const std::string &filename) {
    std::vector<Token> tokens;
    size_t i = 0;
    int line = 1;
    int col = 1;

    auto loc_here = [&]() { return SourceLoc{filename, line, col}; };
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](TokenKind kind, size_t begin, size_t end, SourceLoc loc) {
        tokens.push_back(Token{kind, std::string(src.substr(begin, end - begin)), loc, begin});
    };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            SourceLoc open = loc_here();
            advance(2);
            while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/'))
                advance(1);
            if (i + 1 >= src.size())
                throw SyntaxError(open, "unterminated block comment");
            advance(2);
            continue;
        }

        SourceLoc loc = loc_here();
        size_t begin = i;

        if (ident_start(c)) {
            while (i < src.size() && ident_char(src[i]))
                advance(1);
            std::string_view word = src.substr(begin, i - begin);
            push(is_minic_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin, i, loc);
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            bool hex = c == '0' && i + 1 < src.size() && (src[i + 1] == 'x' || src[i + 1] == 'X');
            if (hex)
                advance(2);
            bool seen_dot = false;
            while (i < src.size()) {
                char d = src[i];
                if (std::isdigit(static_cast<unsigned char>(d)) ||
                    (hex && std::isxdigit(static_cast<unsigned char>(d)))) {
                    advance(1);
                } else if (d == '.' && !seen_dot && !hex) {
                    seen_dot = true;
                    advance(1);
                } else if (!hex && (d == 'e' || d == 'E') && i + 1 < src.size() &&
                           (std::isdigit(static_cast<unsigned char>(src[i + 1])) || src[i + 1] == '+' ||
                            src[i + 1] == '-')) {
                    advance(2);
                } else if (d == 'u' || d == 'U' || d == 'l' || d == 'L' || d == 'f' || d == 'F') {
                    advance(1); // integer / float suffixes
                } else {
                    break;
                }
            }
            push(TokenKind::Number, begin, i, loc);
            continue;
        }

        if (c == '\'' || c == '"') {
            char quote = c;
            advance(1);
            while (i < src.size() && src[i] != quote) {
                if (src[i] == '\\' && i + 1 < src.size())
                    advance(2);
                else if (src[i] == '\n')
                    throw SyntaxError(loc, "unterminated literal");
                else
                    advance(1);
            }
            if (i >= src.size())
                throw SyntaxError(loc, "unterminated literal");
            advance(1);
            push(quote == '\'' ? TokenKind::CharLit : TokenKind::StringLit, begin, i, loc);
            continue;
        }

        bool matched = false;
        for (auto p : kPuncts3) {
            if (src.substr(i, p.size()) == p) {
                advance(p.size());
                push(TokenKind::Punct, begin, i, loc);
                matched = true;
                break;
            }
        }
        if (matched)
            continue;

        static const std::string_view singles = "+-*/%=<>!&|^~()[]{};,.:?";
        if (singles.find(c) != std::string_view::npos) {
            advance(1);
            push(TokenKind::Punct, begin, i, loc);
            continue;
        }

        throw SyntaxError(loc, std::string("unexpected byte '") + c + "'");
    }

    tokens.push_back(Token{TokenKind::EndOfFile, "", loc_here(), src.size()});
    return tokens;
}

} // namespace fpm
