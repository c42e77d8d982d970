#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "regpat/automata.hpp"
#include "regpat/regex.hpp"

namespace regpat {

/// Parse tree of the constraint text syntax:
///
///     expr    := inter ('|' inter)*
///     inter   := concat ('&' concat)*
///     concat  := unary+
///     unary   := '!' unary | postfix
///     postfix := atom ('*' | '+')*
///     atom    := symbol | "'" symbol "'" | '.' | '(' expr ')' | '(' ')'
///
/// Whitespace is ignored. `()` is the empty word. Any printable character that
/// is not a metacharacter is a literal; metacharacters must be quoted.
struct SyntaxNode {
    enum class Op { Literal, Any, Epsilon, Concat, Union, Star, Plus, Not, And };

    Op op;
    char symbol = '\0';
    std::vector<SyntaxNode> children;
    std::size_t column = 0;  // 1-based source column of a Literal

    /// True when no Not/And occurs anywhere below.
    bool is_positive() const;
};

/// Throws ParseError; `line` is reported as-is for callers parsing files.
SyntaxNode parse_regex_text(std::string_view text, std::size_t line = 1);

/// Positive fragment only; `.` expands to the union of all symbols.
Regex to_regex(const SyntaxNode& node, const Alphabet& alphabet);

/// Positive subtrees go through compile+determinize, `!`/`&` through the DFA
/// operations. The result is minimized.
Dfa evaluate(const SyntaxNode& node, const Alphabet& alphabet);

/// parse_regex_text + evaluate. A literal outside `alphabet` is a ParseError.
Dfa compile_regex_text(std::string_view text, const Alphabet& alphabet, std::size_t line = 1);

}  // namespace regpat
