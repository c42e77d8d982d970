#include "regpat/regex.hpp"

#include "regpat/error.hpp"

namespace regpat {

Regex Regex::literal(char symbol) {
    Regex r(Kind::Literal);
    r.symbol_ = symbol;
    return r;
}

Regex Regex::concat(std::vector<Regex> parts) {
    if (parts.empty()) throw Error("Regex::concat needs at least one part");
    Regex r(Kind::Concat);
    r.children_ = std::move(parts);
    return r;
}

Regex Regex::alternation(std::vector<Regex> options) {
    if (options.empty()) throw Error("Regex::alternation needs at least one option");
    Regex r(Kind::Union);
    r.children_ = std::move(options);
    return r;
}

Regex Regex::star(Regex inner) {
    Regex r(Kind::Star);
    r.children_.push_back(std::move(inner));
    return r;
}

Regex Regex::plus(Regex inner) {
    Regex r(Kind::Plus);
    r.children_.push_back(std::move(inner));
    return r;
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

}  // namespace

std::string Regex::to_string() const {
    switch (kind_) {
        case Kind::Empty:
            return "!(.*)";
        case Kind::Epsilon:
            return "()";
        case Kind::Literal:
            return is_meta(symbol_) ? std::string{'\'', symbol_, '\''} : std::string(1, symbol_);
        case Kind::Concat: {
            std::string out;
            for (const auto& c : children_) {
                const bool wrap = c.kind_ == Kind::Union;
                out += wrap ? "(" + c.to_string() + ")" : c.to_string();
            }
            return out;
        }
        case Kind::Union: {
            std::string out;
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) out += "|";
                out += children_[i].to_string();
            }
            return out;
        }
        case Kind::Star:
        case Kind::Plus: {
            const auto& c = children_.front();
            const bool atomic = c.kind_ == Kind::Literal || c.kind_ == Kind::Epsilon;
            std::string inner = atomic ? c.to_string() : "(" + c.to_string() + ")";
            return inner + (kind_ == Kind::Star ? "*" : "+");
        }
    }
    return {};
}

}  // namespace regpat
