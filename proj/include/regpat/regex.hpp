#pragma once

#include <string>
#include <vector>

namespace regpat {

/// Positive regular expression AST.
///
/// Complement and intersection are deliberately absent; they exist only as
/// automaton operations (see regex_syntax.hpp for the text form that mixes
/// both).
class Regex {
public:
    enum class Kind { Empty, Epsilon, Literal, Concat, Union, Star, Plus };

    static Regex empty() { return Regex(Kind::Empty); }
    static Regex epsilon() { return Regex(Kind::Epsilon); }
    static Regex literal(char symbol);
    /// Throws Error on an empty list.
    static Regex concat(std::vector<Regex> parts);
    /// Throws Error on an empty list.
    static Regex alternation(std::vector<Regex> options);
    static Regex star(Regex inner);
    static Regex plus(Regex inner);

    Kind kind() const noexcept { return kind_; }
    char symbol() const noexcept { return symbol_; }
    const std::vector<Regex>& children() const noexcept { return children_; }

    /// Text-syntax rendering; reparses to the same language.
    std::string to_string() const;

private:
    explicit Regex(Kind kind) : kind_(kind) {}

    Kind kind_;
    char symbol_ = '\0';
    std::vector<Regex> children_;
};

}  // namespace regpat
