// ckdpi/lexer.hpp - tokenizer for the Java-like source subset
#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ckdpi/errors.hpp"

namespace ckdpi {

enum class TokenKind { identifier, keyword, punctuation, literal, end_of_input };

struct Token {
    TokenKind kind = TokenKind::end_of_input;
    std::string text;
    int line = 1;
    int column = 1;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_keyword(std::string_view t) const { return is(TokenKind::keyword, t); }
    bool is_punct(std::string_view t) const { return is(TokenKind::punctuation, t); }
};

namespace detail {

inline const std::unordered_set<std::string_view>& keyword_set() {
    static const std::unordered_set<std::string_view> kw = {
        "abstract", "assert",     "boolean",  "break",    "byte",     "case",
        "catch",    "char",       "class",    "const",    "continue", "default",
        "do",       "double",     "else",     "enum",     "extends",  "final",
        "finally",  "float",      "for",      "goto",     "if",       "implements",
        "import",   "instanceof", "int",      "interface", "long",    "native",
        "new",      "package",    "private",  "protected", "public",  "return",
        "short",    "static",     "strictfp", "super",    "switch",   "synchronized",
        "this",     "throw",      "throws",   "transient", "try",     "void",
        "volatile", "while",
    };
    return kw;
}

inline bool is_ident_head(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
inline bool is_ident_tail(char c) {
    return is_ident_head(c) || std::isdigit(static_cast<unsigned char>(c));
}

// Two-character operators that must survive as single tokens; everything else
// falls through to single-character punctuation. "&&" and "||" feed the
// decision-point counter.
inline const std::array<std::string_view, 15>& two_char_ops() {
    static const std::array<std::string_view, 15> ops = {
        "&&", "||", "==", "!=", "<=", ">=", "++", "--",
        "+=", "-=", "*=", "/=", "%=", "->", "::",
    };
    return ops;
}

} // namespace detail

/// Splits source text into tokens. Comments and string/char literal bodies
/// are consumed and can never leak identifiers or keywords. The final token
/// is always end_of_input. Throws ParseError on unterminated block comments
/// or literals (positioned at the opening delimiter).
inline std::vector<Token> tokenize(std::string_view source, const std::string& path = "") {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    const std::size_t n = source.size();

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count && i < n; ++k, ++i) {
            if (source[i] == '\n') { ++line; col = 1; } else { ++col; }
        }
    };

    while (i < n) {
        char c = source[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && source[i + 1] == '/') {
            while (i < n && source[i] != '\n') advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && source[i + 1] == '*') {
            int open_line = line, open_col = col;
            advance(2);
            bool closed = false;
            while (i < n) {
                if (source[i] == '*' && i + 1 < n && source[i + 1] == '/') {
                    advance(2);
                    closed = true;
                    break;
                }
                advance(1);
            }
            if (!closed)
                throw ParseError(path, open_line, open_col, "unterminated block comment");
            continue;
        }
        if (c == '"' || c == '\'') {
            int open_line = line, open_col = col;
            char quote = c;
            advance(1);
            bool closed = false;
            while (i < n) {
                if (source[i] == '\\' && i + 1 < n) { advance(2); continue; }
                if (source[i] == quote) { advance(1); closed = true; break; }
                if (source[i] == '\n') break;   // literals do not span lines
                advance(1);
            }
            if (!closed)
                throw ParseError(path, open_line, open_col,
                                 quote == '"' ? "unterminated string literal"
                                              : "unterminated character literal");
            out.push_back({TokenKind::literal, "<string>", open_line, open_col});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int tl = line, tc = col;
            std::size_t start = i;
            while (i < n && (detail::is_ident_tail(source[i]) || source[i] == '.')) advance(1);
            out.push_back({TokenKind::literal, std::string(source.substr(start, i - start)), tl, tc});
            continue;
        }
        if (detail::is_ident_head(c)) {
            int tl = line, tc = col;
            std::size_t start = i;
            while (i < n && detail::is_ident_tail(source[i])) advance(1);
            std::string text(source.substr(start, i - start));
            TokenKind kind = TokenKind::identifier;
            if (detail::keyword_set().count(text))
                kind = TokenKind::keyword;
            else if (text == "true" || text == "false" || text == "null")
                kind = TokenKind::literal;
            out.push_back({kind, std::move(text), tl, tc});
            continue;
        }
        bool matched = false;
        if (i + 1 < n) {
            std::string_view pair = source.substr(i, 2);
            for (std::string_view op : detail::two_char_ops()) {
                if (pair == op) {
                    out.push_back({TokenKind::punctuation, std::string(op), line, col});
                    advance(2);
                    matched = true;
                    break;
                }
            }
        }
        if (matched) continue;
        out.push_back({TokenKind::punctuation, std::string(1, c), line, col});
        advance(1);
    }
    out.push_back({TokenKind::end_of_input, "", line, col});
    return out;
}

} // namespace ckdpi
