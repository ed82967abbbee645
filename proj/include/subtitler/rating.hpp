// User-rating capture: five quality buttons pressed during playback and the
// per-level duration accounting of the resulting annotation.
#pragma once

#include "subtitler/text.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace subtitler
{
    // levels: 0 undecided, 1 horrible, 2 usable with problems,
    // 3 minor flaws but usable, 4 perfect.
    struct RatingEvent
    {
        Millis t = 0;  // since playback start, in stream time
        int level = 0;

        bool operator==(const RatingEvent&) const = default;
    };

    inline constexpr int rating_levels = 5;
    extern const std::array<const char*, rating_levels> rating_level_names;

    struct RatingSummary
    {
        std::array<double, rating_levels> level_percent{};
        double unrated_percent = 0.0;  // before the first keypress
        Millis total_ms = 0;
    };

    // A level persists until the next keypress; the span before the first
    // press is unrated. Percentages are of `total_ms` and sum to 100.
    RatingSummary summarize_ratings(std::span<const RatingEvent> events, Millis total_ms);

    // Rating log TSV: `t_ms<TAB>level` per line.
    std::vector<RatingEvent> parse_ratings(std::string_view data);
    std::string serialize_ratings(std::span<const RatingEvent> events);

    std::string format_rating_summary(const RatingSummary& summary);
}
