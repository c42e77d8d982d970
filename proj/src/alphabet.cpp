#include "regpat/alphabet.hpp"

#include <cctype>

#include "regpat/error.hpp"

namespace regpat {

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
    index_.fill(-1);
    if (symbols_.empty()) {
        throw AlphabetError("alphabet must not be empty");
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto c = static_cast<unsigned char>(symbols_[i]);
        if (!std::isgraph(c)) {
            throw AlphabetError("alphabet symbols must be printable, got code " + std::to_string(c));
        }
        if (index_[c] >= 0) {
            throw AlphabetError(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
        }
        index_[c] = static_cast<int>(i);
    }
}

bool Alphabet::contains_word(std::string_view w) const noexcept {
    for (char c : w) {
        if (!contains(c)) return false;
    }
    return true;
}

void Alphabet::check_word(std::string_view w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!contains(w[i])) {
            throw AlphabetError(std::string("symbol '") + w[i] + "' at position " + std::to_string(i) +
                                " is not in alphabet {" + symbols_ + "}");
        }
    }
}

bool Alphabet::shortlex_less(std::string_view a, std::string_view b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return index_of(a[i]) < index_of(b[i]);
    }
    return false;
}

std::vector<Word> Alphabet::words_up_to(std::size_t max_len) const {
    std::vector<Word> out{Word{}};
    std::size_t layer_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t layer_end = out.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (char c : symbols_) {
                out.push_back(out[i] + c);
            }
        }
        layer_begin = layer_end;
    }
    return out;
}

}  // namespace regpat
