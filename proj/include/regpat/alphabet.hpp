#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace regpat {

/// Words are plain strings; every char is one symbol of some Alphabet.
using Word = std::string;

/// Ordered finite set of single-character symbols.
///
/// The order matters: it drives shortlex ordering of enumerated words and the
/// canonical numbering of determinized states.
class Alphabet {
public:
    /// Throws AlphabetError when `symbols` is empty, has duplicates, or
    /// contains a non-printable character.
    explicit Alphabet(std::string_view symbols);

    /// {0, #}, the alphabet the reduction is built over.
    static Alphabet binary() { return Alphabet("0#"); }

    std::size_t size() const noexcept { return symbols_.size(); }
    std::string_view symbols() const noexcept { return symbols_; }
    char symbol(std::size_t index) const { return symbols_.at(index); }

    /// -1 when `c` is not a symbol.
    int index_of(char c) const noexcept { return index_[static_cast<unsigned char>(c)]; }
    bool contains(char c) const noexcept { return index_of(c) >= 0; }
    bool contains_word(std::string_view w) const noexcept;

    /// Throws AlphabetError naming the first foreign symbol.
    void check_word(std::string_view w) const;

    /// Length first, then lexicographic in alphabet order.
    bool shortlex_less(std::string_view a, std::string_view b) const noexcept;

    /// Every word of length <= max_len, in shortlex order.
    std::vector<Word> words_up_to(std::size_t max_len) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept {
        return a.symbols_ == b.symbols_;
    }

private:
    std::string symbols_;
    std::array<int, 256> index_{};
};

}  // namespace regpat
