// Brute-force reference evaluators used as test oracles and as the serial
// baseline in the benchmark. These replay the metric definitions literally
// and stay independent of the library implementations they check.
#pragma once

#include "subtitler/stream.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace refimpl
{
    // One entry per code point, kept as raw byte strings.
    std::vector<std::string> codepoints(std::string_view text);

    std::int64_t char_erasure(const subtitler::TokenSeq& prev, const subtitler::TokenSeq& next);

    struct ErasureTotals
    {
        std::vector<std::int64_t> per_event;
        std::int64_t sum = 0;
        std::size_t updates = 0;
    };

    ErasureTotals erasure(const subtitler::EventLog& log);

    // Percentage of updates with erasure <= threshold, counted directly.
    double cdf_percent(const subtitler::EventLog& log, std::int64_t threshold);

    std::size_t finalization(const subtitler::EventLog& log, std::size_t word);

    std::vector<std::size_t> sentence_lengths(const subtitler::TokenSeq& tokens);

    // Per-word finalization-time differences, baseline or catch-up mode.
    std::vector<subtitler::Millis> latency_ms(const subtitler::EventLog& src,
                                              const subtitler::EventLog& out, bool catchup);
}
