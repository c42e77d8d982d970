#include "regpat/regex_syntax.hpp"

#include <cctype>

#include "regpat/error.hpp"

namespace regpat {

bool SyntaxNode::is_positive() const {
    if (op == Op::Not || op == Op::And) return false;
    for (const auto& c : children) {
        if (!c.is_positive()) return false;
    }
    return true;
}

namespace {

bool is_meta(char c) {
    switch (c) {
        case '|': case '&': case '!': case '*': case '+':
        case '(': case ')': case '.': case '\'':
            return true;
        default:
            return false;
    }
}

class Parser {
public:
    Parser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    SyntaxNode parse() {
        skip_space();
        if (at_end()) fail("empty regex (write () for the empty word)");
        SyntaxNode node = expr();
        skip_space();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
        return node;
    }

private:
    SyntaxNode expr() {
        std::vector<SyntaxNode> options{inter()};
        while (consume('|')) options.push_back(inter());
        return fold(SyntaxNode::Op::Union, std::move(options));
    }

    SyntaxNode inter() {
        std::vector<SyntaxNode> parts{concat()};
        while (consume('&')) parts.push_back(concat());
        return fold(SyntaxNode::Op::And, std::move(parts));
    }

    SyntaxNode concat() {
        std::vector<SyntaxNode> parts;
        while (true) {
            skip_space();
            if (at_end() || peek() == '|' || peek() == '&' || peek() == ')') break;
            parts.push_back(unary());
        }
        if (parts.empty()) fail("missing operand (write () for the empty word)");
        return fold(SyntaxNode::Op::Concat, std::move(parts));
    }

    SyntaxNode unary() {
        if (consume('!')) return SyntaxNode{SyntaxNode::Op::Not, '\0', {unary()}};
        return postfix();
    }

    SyntaxNode postfix() {
        SyntaxNode node = atom();
        while (true) {
            if (consume('*')) {
                node = SyntaxNode{SyntaxNode::Op::Star, '\0', {std::move(node)}};
            } else if (consume('+')) {
                node = SyntaxNode{SyntaxNode::Op::Plus, '\0', {std::move(node)}};
            } else {
                return node;
            }
        }
    }

    SyntaxNode atom() {
        skip_space();
        if (at_end()) fail("unexpected end of regex");
        const char c = peek();
        if (c == '(') {
            ++pos_;
            if (consume(')')) return SyntaxNode{SyntaxNode::Op::Epsilon, '\0', {}};
            SyntaxNode inner = expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (c == '.') {
            ++pos_;
            return SyntaxNode{SyntaxNode::Op::Any, '\0', {}};
        }
        if (c == '\'') {
            ++pos_;
            if (at_end()) fail("unterminated quoted symbol");
            const std::size_t column = pos_ + 1;
            const char symbol = text_[pos_++];
            if (at_end() || text_[pos_] != '\'') fail("expected closing quote");
            ++pos_;
            return SyntaxNode{SyntaxNode::Op::Literal, symbol, {}, column};
        }
        if (is_meta(c)) fail(std::string("unexpected '") + c + "'");
        ++pos_;
        return SyntaxNode{SyntaxNode::Op::Literal, c, {}, pos_};
    }

    static SyntaxNode fold(SyntaxNode::Op op, std::vector<SyntaxNode> parts) {
        if (parts.size() == 1) return std::move(parts.front());
        return SyntaxNode{op, '\0', std::move(parts)};
    }

    bool consume(char c) {
        skip_space();
        if (!at_end() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, pos_ + 1); }

    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace

SyntaxNode parse_regex_text(std::string_view text, std::size_t line) { return Parser(text, line).parse(); }

Regex to_regex(const SyntaxNode& node, const Alphabet& alphabet) {
    using Op = SyntaxNode::Op;
    std::vector<Regex> kids;
    for (const auto& c : node.children) kids.push_back(to_regex(c, alphabet));
    switch (node.op) {
        case Op::Literal:
            return Regex::literal(node.symbol);
        case Op::Any: {
            std::vector<Regex> symbols;
            for (char c : alphabet.symbols()) symbols.push_back(Regex::literal(c));
            return Regex::alternation(std::move(symbols));
        }
        case Op::Epsilon:
            return Regex::epsilon();
        case Op::Concat:
            return Regex::concat(std::move(kids));
        case Op::Union:
            return Regex::alternation(std::move(kids));
        case Op::Star:
            return Regex::star(std::move(kids.front()));
        case Op::Plus:
            return Regex::plus(std::move(kids.front()));
        case Op::Not:
        case Op::And:
            break;
    }
    throw Error("to_regex: complement/intersection have no positive regex form");
}

Dfa evaluate(const SyntaxNode& node, const Alphabet& alphabet) {
    using Op = SyntaxNode::Op;
    if (node.is_positive()) return minimize(determinize(compile(to_regex(node, alphabet), alphabet)));
    switch (node.op) {
        case Op::Not:
            return complement(evaluate(node.children.front(), alphabet));
        case Op::And: {
            Dfa acc = evaluate(node.children.front(), alphabet);
            for (std::size_t i = 1; i < node.children.size(); ++i) {
                acc = minimize(intersect(acc, evaluate(node.children[i], alphabet)));
            }
            return acc;
        }
        case Op::Union: {
            Dfa acc = evaluate(node.children.front(), alphabet);
            for (std::size_t i = 1; i < node.children.size(); ++i) {
                acc = minimize(union_of(acc, evaluate(node.children[i], alphabet)));
            }
            return acc;
        }
        case Op::Concat: {
            Nfa acc = to_nfa(evaluate(node.children.front(), alphabet));
            for (std::size_t i = 1; i < node.children.size(); ++i) {
                acc = concat(acc, to_nfa(evaluate(node.children[i], alphabet)));
            }
            return minimize(determinize(acc));
        }
        case Op::Star:
            return minimize(determinize(star(to_nfa(evaluate(node.children.front(), alphabet)))));
        case Op::Plus:
            return minimize(determinize(plus(to_nfa(evaluate(node.children.front(), alphabet)))));
        default:
            break;
    }
    throw Error("evaluate: unreachable syntax node");
}

namespace {

void check_literals(const SyntaxNode& node, const Alphabet& alphabet, std::size_t line) {
    if (node.op == SyntaxNode::Op::Literal && !alphabet.contains(node.symbol)) {
        throw ParseError(std::string("symbol '") + node.symbol + "' is not in alphabet {" +
                             std::string(alphabet.symbols()) + "}",
                         line, node.column);
    }
    for (const auto& c : node.children) check_literals(c, alphabet, line);
}

}  // namespace

Dfa compile_regex_text(std::string_view text, const Alphabet& alphabet, std::size_t line) {
    const SyntaxNode tree = parse_regex_text(text, line);
    check_literals(tree, alphabet, line);
    return evaluate(tree, alphabet);
}

}  // namespace regpat
