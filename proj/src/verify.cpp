#include "regpat/verify.hpp"

#include <algorithm>
#include <set>

namespace regpat {

std::string VerifyReport::strata() const {
    return "strata: (a) all words of length <= " + std::to_string(exhaustive_bound) + " (" +
           std::to_string(exhaustive_words) + " words); (b) v0u0v for u in the mutation corpus, |u| <= " +
           std::to_string(corpus_bound) + " (" + std::to_string(corpus_words) + " words)";
}

namespace {

Computation with_state(Computation c, std::size_t i, std::size_t q) {
    c[i].state = q;
    return c;
}

void add_edits(const Computation& c, std::size_t state_bound, std::vector<Word>& out) {
    const Word base = encode_computation(c);
    out.push_back(base);

    for (std::size_t i = 0; i < base.size(); ++i) {
        out.push_back(base.substr(0, i) + base.substr(i + 1));
        for (char s : {'0', '#'}) out.push_back(base.substr(0, i) + s + base.substr(i));
    }
    for (char s : {'0', '#'}) out.push_back(base + s);

    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.size() > 1) {
            Computation shorter = c;
            shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(encode_computation(shorter));
        }
        Computation longer = c;
        longer.insert(longer.begin() + static_cast<std::ptrdiff_t>(i), c[i]);
        out.push_back(encode_computation(longer));

        for (std::size_t q = 0; q <= state_bound; ++q) out.push_back(encode_computation(with_state(c, i, q)));
        for (int d : {-2, -1, 1, 2}) {
            for (int k = 0; k < 2; ++k) {
                Computation changed = c;
                std::size_t& m = k == 0 ? changed[i].m1 : changed[i].m2;
                if (d < 0 && m < static_cast<std::size_t>(-d)) continue;
                m = static_cast<std::size_t>(static_cast<long long>(m) + d);
                out.push_back(encode_computation(changed));
            }
        }
    }
}

}  // namespace

std::vector<Word> mutation_corpus(const TwoCounterAutomaton& a, std::size_t max_u_len) {
    const std::size_t q_bound = a.state_count();  // one past the last state
    std::vector<Computation> bases;
    std::vector<Configuration> configs;
    for (std::size_t q = 0; q <= q_bound; ++q) {
        for (std::size_t m1 = 0; m1 <= 2; ++m1) {
            for (std::size_t m2 = 0; m2 <= 2; ++m2) configs.push_back({q, m1, m2});
        }
    }
    for (const auto& c : configs) bases.push_back({c});
    for (const auto& c : configs) {
        for (const auto& d : configs) bases.push_back({c, d});
    }
    for (auto& c : find_accepting_computations(a, 4, 2)) bases.push_back(std::move(c));

    std::vector<Word> raw{Word(), "##", "####"};
    for (const auto& c : bases) {
        // Edits change the length by at most one configuration; skip bases far beyond the cap.
        if (encode_computation(c).size() > max_u_len + 40) continue;
        add_edits(c, q_bound, raw);
    }

    std::set<Word> kept;
    for (auto& u : raw) {
        if (u.size() <= max_u_len && u.find("###") == Word::npos) kept.insert(std::move(u));
    }
    std::vector<Word> out(kept.begin(), kept.end());
    const Alphabet binary = Alphabet::binary();
    std::sort(out.begin(), out.end(), [&](const Word& x, const Word& y) { return binary.shortlex_less(x, y); });
    return out;
}

std::optional<Word> framed_middle(std::string_view w) {
    const std::string_view head = "0###00";
    const std::string_view tail = "00###0";
    if (w.size() < head.size() + tail.size()) return std::nullopt;
    if (w.substr(0, head.size()) != head || w.substr(w.size() - tail.size()) != tail) return std::nullopt;
    const std::string_view u = w.substr(head.size(), w.size() - head.size() - tail.size());
    if (u.find("###") != std::string_view::npos) return std::nullopt;
    return Word(u);
}

VerifyReport verify_reduction(const TwoCounterAutomaton& a, const ConstrainedPattern& alpha,
                              const ConstrainedPattern& beta, const VerifyOptions& options) {
    VerifyReport report;
    report.options = options;
    report.exhaustive_bound = std::min(options.max_len, options.exhaustive_len);
    report.corpus_bound = options.max_len >= 12 ? std::min(options.corpus_len, options.max_len - 12) : 0;

    const Alphabet& alphabet = alpha.alphabet();
    std::vector<Word> words = alphabet.words_up_to(report.exhaustive_bound);
    report.exhaustive_words = words.size();
    if (options.max_len >= 12) {
        const Word v = delimiter();
        std::size_t added = 0;
        for (const auto& u : mutation_corpus(a, report.corpus_bound)) {
            const Word w = v + "0" + u + "0" + v;
            if (w.size() > report.exhaustive_bound) {
                words.push_back(w);
                ++added;
            }
        }
        report.corpus_words = added;
    }

    Matcher in_alpha(alpha, Mode::E);
    Matcher in_beta(beta, Mode::E);
    for (const auto& w : words) {
        const bool a_member = in_alpha.matches(w);
        const bool b_member = in_beta.matches(w);
        const auto middle = framed_middle(w);
        const bool expected_gap = middle && in_valc(a, *middle);

        if (b_member && !a_member) report.violations.push_back({"L1", w, "in L(beta) but not in L(alpha)"});
        if (a_member && !middle && !b_member) {
            report.violations.push_back({"L2", w, "in L(alpha), not of the form v0u0v, but not in L(beta)"});
        }
        const bool gap = a_member && !b_member;
        if (gap) report.gap.push_back(w);
        if (gap != expected_gap) {
            report.violations.push_back(
                {"GAP", w, gap ? "in the gap but u is not in ValC" : "u is in ValC but the word is in L(beta)"});
        }
    }
    std::sort(report.gap.begin(), report.gap.end(),
              [&](const Word& x, const Word& y) { return alphabet.shortlex_less(x, y); });
    return report;
}

VerifyReport verify_reduction(const TwoCounterAutomaton& a, const VerifyOptions& options) {
    const ReductionOutput out = build_beta(a);
    return verify_reduction(a, out.alpha, out.beta, options);
}

}  // namespace regpat
