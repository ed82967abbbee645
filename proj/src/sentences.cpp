#include "subtitler/sentences.hpp"

#include <array>
#include <stdexcept>
#include <string_view>

namespace subtitler
{
    bool is_sentence_terminal(std::string_view token)
    {
        static constexpr std::array<std::string_view, 8> closers = {
            "\"", "'", ")", "]", "}", "”", "’", "»"};
        bool stripped = true;
        while (stripped && !token.empty())
        {
            stripped = false;
            for (std::string_view closer : closers)
            {
                if (token.size() >= closer.size() && token.ends_with(closer))
                {
                    token.remove_suffix(closer.size());
                    stripped = true;
                    break;
                }
            }
        }
        if (token.empty())
        {
            return false;
        }
        const char last = token.back();
        return last == '.' || last == '!' || last == '?';
    }

    SentenceIndex split_sentences(const TokenSeq& tokens)
    {
        SentenceIndex index;
        std::size_t start = 0;
        std::size_t length = 0;
        for (const std::string& token : tokens)
        {
            ++length;
            if (is_sentence_terminal(token))
            {
                index.lengths.push_back(length);
                index.starts.push_back(start);
                start += length;
                length = 0;
            }
        }
        if (length > 0)
        {
            // Trailing unterminated fragment.
            index.lengths.push_back(length);
            index.starts.push_back(start);
        }
        return index;
    }

    WordLocation sentence_of(const SentenceIndex& index, std::size_t word)
    {
        if (word < 1 || word > index.total_words())
        {
            throw std::out_of_range("word index " + std::to_string(word) + " outside [1, " +
                                    std::to_string(index.total_words()) + "]");
        }
        // starts is ascending; find the sentence whose range covers the word.
        std::size_t lo = 0;
        std::size_t hi = index.count();
        while (hi - lo > 1)
        {
            std::size_t mid = (lo + hi) / 2;
            if (index.starts[mid] < word)
            {
                lo = mid;
            }
            else
            {
                hi = mid;
            }
        }
        return WordLocation{lo + 1, word - index.starts[lo]};
    }
}
