// UTF-8 aware character counting, token sequences and the token<->text
// transformation used throughout the stream model and the metrics.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subtitler
{
    using Millis = std::int64_t;

    // Token sequence: maximal non-whitespace runs, never empty.
    using TokenSeq = std::vector<std::string>;

    inline bool u8_is_continuation(unsigned char b) noexcept
    {
        return (b & 0xC0u) == 0x80u;
    }

    // Number of code points in a valid UTF-8 string.
    std::size_t u8_length(std::string_view s) noexcept;

    // Byte length of the first `n_chars` code points (whole string if shorter).
    std::size_t u8_prefix_bytes(std::string_view s, std::size_t n_chars) noexcept;

    struct CharLcp
    {
        std::size_t chars = 0;
        std::size_t bytes = 0;
    };

    // Longest common prefix of two strings, measured in code points.
    CharLcp u8_common_prefix(std::string_view a, std::string_view b) noexcept;

    // Whitespace split. Inverse of join_tokens on normalized text.
    TokenSeq tokenize(std::string_view text);

    // c(o): tokens joined by single spaces.
    std::string join_tokens(const TokenSeq& tokens);

    // join_tokens(tokenize(text)): collapses runs of whitespace to one space.
    std::string normalize_spaces(std::string_view text);
}
