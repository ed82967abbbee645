#include "subtitler/text.hpp"

#include <algorithm>
#include <cctype>

namespace subtitler
{
    std::size_t u8_length(std::string_view s) noexcept
    {
        std::size_t n = 0;
        for (unsigned char b : s)
        {
            if (!u8_is_continuation(b))
            {
                ++n;
            }
        }
        return n;
    }

    std::size_t u8_prefix_bytes(std::string_view s, std::size_t n_chars) noexcept
    {
        std::size_t i = 0;
        std::size_t seen = 0;
        while (i < s.size())
        {
            if (!u8_is_continuation(static_cast<unsigned char>(s[i])))
            {
                if (seen == n_chars)
                {
                    return i;
                }
                ++seen;
            }
            ++i;
        }
        return s.size();
    }

    CharLcp u8_common_prefix(std::string_view a, std::string_view b) noexcept
    {
        const std::size_t limit = std::min(a.size(), b.size());
        std::size_t i = 0;
        while (i < limit && a[i] == b[i])
        {
            ++i;
        }
        // Never cut a code point in half.
        while (i > 0 && i < std::max(a.size(), b.size()) &&
               u8_is_continuation(static_cast<unsigned char>(i < a.size() ? a[i] : b[i])))
        {
            --i;
        }
        return CharLcp{u8_length(a.substr(0, i)), i};
    }

    TokenSeq tokenize(std::string_view text)
    {
        TokenSeq tokens;
        std::size_t i = 0;
        while (i < text.size())
        {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            {
                ++i;
            }
            std::size_t start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            {
                ++i;
            }
            if (i > start)
            {
                tokens.emplace_back(text.substr(start, i - start));
            }
        }
        return tokens;
    }

    std::string join_tokens(const TokenSeq& tokens)
    {
        std::string out;
        std::size_t total = 0;
        for (const auto& tok : tokens)
        {
            total += tok.size() + 1;
        }
        out.reserve(total);
        for (const auto& tok : tokens)
        {
            if (!out.empty())
            {
                out += ' ';
            }
            out += tok;
        }
        return out;
    }

    std::string normalize_spaces(std::string_view text)
    {
        return join_tokens(tokenize(text));
    }
}
