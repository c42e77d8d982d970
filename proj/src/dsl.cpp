#include "regpat/dsl.hpp"

#include <cctype>

#include "regpat/error.hpp"
#include "regpat/regex_syntax.hpp"

namespace regpat {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

bool is_identifier(std::string_view name) {
    if (name.empty() || !ident_start(name.front())) return false;
    for (char c : name) {
        if (!ident_char(c)) return false;
    }
    return true;
}

Pattern parse_pattern(std::string_view text, const Alphabet& alphabet) {
    std::vector<PatternItem> items;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&] {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };

    while (i < text.size()) {
        if (space(text[i])) {
            advance();
            continue;
        }
        const std::size_t start_col = col;
        if (text[i] == '\'') {
            if (i + 2 >= text.size() || text[i + 2] != '\'') throw ParseError("malformed quoted terminal", line, col);
            const char symbol = text[i + 1];
            if (!alphabet.contains(symbol)) {
                throw ParseError(std::string("terminal '") + symbol + "' is not in alphabet {" +
                                     std::string(alphabet.symbols()) + "}",
                                 line, start_col + 1);
            }
            items.emplace_back(Terminal{symbol});
            advance();
            advance();
            advance();
        } else if (ident_start(text[i])) {
            std::string name;
            while (i < text.size() && ident_char(text[i])) {
                name.push_back(text[i]);
                advance();
            }
            items.emplace_back(Variable{std::move(name)});
        } else {
            throw ParseError(std::string("unexpected '") + text[i] + "' (quote terminals, e.g. '0')", line, col);
        }
        if (i < text.size() && !space(text[i])) {
            throw ParseError("items must be separated by whitespace", line, col);
        }
    }
    if (items.empty()) throw ParseError("empty pattern", line, col);
    return Pattern(std::move(items));
}

std::string format_pattern(const Pattern& p) {
    std::string out;
    for (const auto& item : p.items()) {
        if (!out.empty()) out.push_back(' ');
        if (const auto* t = std::get_if<Terminal>(&item)) {
            out += '\'';
            out += t->symbol;
            out += '\'';
        } else {
            out += std::get<Variable>(item).name;
        }
    }
    return out;
}

ConstraintMap parse_constraints(std::string_view text, const Alphabet& alphabet) {
    ConstraintMap out(alphabet);
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        start = end + 1;

        std::size_t i = 0;
        while (i < line.size() && space(line[i])) ++i;
        if (i == line.size()) continue;

        const std::size_t name_begin = i;
        while (i < line.size() && ident_char(line[i])) ++i;
        const std::string name(line.substr(name_begin, i - name_begin));
        if (!is_identifier(name)) throw ParseError("expected a variable name", line_no, name_begin + 1);
        while (i < line.size() && space(line[i])) ++i;
        if (i == line.size() || line[i] != ':') throw ParseError("expected ':'", line_no, i + 1);
        ++i;
        if (out.contains(name)) throw ParseError("duplicate constraint for '" + name + "'", line_no, name_begin + 1);

        const std::string_view regex = line.substr(i);
        try {
            out.set(name, compile_regex_text(regex, alphabet, line_no), std::string(regex));
        } catch (const ParseError& e) {
            const std::string what = e.what();
            const std::string message = what.substr(what.find(": ") + 2);
            throw ParseError(message, line_no, e.column() + i);
        }
    }
    return out;
}

std::string format_constraints(const ConstrainedPattern& cp) {
    std::string out;
    for (const auto& name : cp.pattern().variables()) {
        if (!cp.constraints().contains(name)) continue;
        const auto source = cp.constraints().source(name);
        if (!source) throw Error("constraint for '" + name + "' has no source text");
        std::string_view text = *source;
        while (!text.empty() && space(text.front())) text.remove_prefix(1);
        out += name;
        out += " : ";
        out += text;
        out += '\n';
    }
    return out;
}

}  // namespace regpat
