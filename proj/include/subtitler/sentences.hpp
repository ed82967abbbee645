// Rule-based sentence segmentation of token sequences and the word->sentence
// bookkeeping needed by the catch-up correspondence. Indices are 1-based.
#pragma once

#include "subtitler/text.hpp"

#include <cstddef>
#include <vector>

namespace subtitler
{
    struct SentenceIndex
    {
        // L(o,k): word count per sentence, all >= 1.
        std::vector<std::size_t> lengths;
        // Cumulative word offsets: starts[k] = words before sentence k+1.
        std::vector<std::size_t> starts;

        std::size_t count() const noexcept { return lengths.size(); }
        std::size_t total_words() const noexcept
        {
            return starts.empty() ? 0 : starts.back() + lengths.back();
        }
    };

    // True when the token ends a sentence: final character is . ! or ?,
    // ignoring trailing closing quotes/brackets. Abbreviations are not
    // special-cased; that noise is accepted.
    bool is_sentence_terminal(std::string_view token);

    // A boundary follows every terminal token; a trailing unterminated
    // fragment forms a final sentence. Empty input has zero sentences.
    SentenceIndex split_sentences(const TokenSeq& tokens);

    struct WordLocation
    {
        std::size_t sentence = 0;  // k = S(o, j)
        std::size_t position = 0;  // x(j), index of the word inside sentence k
    };

    // Locates 1-based word j. Throws std::out_of_range outside [1, total].
    WordLocation sentence_of(const SentenceIndex& index, std::size_t word);
}
