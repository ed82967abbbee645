#include "subtitler/rating.hpp"

#include "subtitler/stream.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace subtitler
{
    const std::array<const char*, rating_levels> rating_level_names = {
        "undecided", "horrible", "usable with problems", "minor flaws, but usable", "perfect"};

    RatingSummary summarize_ratings(std::span<const RatingEvent> events, Millis total_ms)
    {
        RatingSummary summary;
        summary.total_ms = total_ms;
        if (total_ms <= 0)
        {
            summary.unrated_percent = 100.0;
            return summary;
        }
        Millis prev_t = 0;
        int prev_level = -1;
        std::array<Millis, rating_levels> level_ms{};
        Millis unrated_ms = 0;
        for (const RatingEvent& event : events)
        {
            if (event.level < 0 || event.level >= rating_levels)
            {
                throw std::invalid_argument("rating level outside 0..4");
            }
            if (event.t < prev_t)
            {
                throw std::invalid_argument("rating timestamps must be nondecreasing");
            }
            const Millis t = std::min(event.t, total_ms);
            if (prev_level < 0)
            {
                unrated_ms += t - 0;
            }
            else
            {
                level_ms[static_cast<std::size_t>(prev_level)] += t - prev_t;
            }
            prev_t = t;
            prev_level = event.level;
        }
        if (prev_level < 0)
        {
            unrated_ms = total_ms;
        }
        else if (prev_t < total_ms)
        {
            level_ms[static_cast<std::size_t>(prev_level)] += total_ms - prev_t;
        }
        for (int level = 0; level < rating_levels; ++level)
        {
            summary.level_percent[static_cast<std::size_t>(level)] =
                100.0 * static_cast<double>(level_ms[static_cast<std::size_t>(level)]) /
                static_cast<double>(total_ms);
        }
        summary.unrated_percent =
            100.0 * static_cast<double>(unrated_ms) / static_cast<double>(total_ms);
        return summary;
    }

    std::vector<RatingEvent> parse_ratings(std::string_view data)
    {
        std::vector<RatingEvent> events;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos < data.size())
        {
            std::size_t eol = data.find('\n', pos);
            std::string_view line =
                eol == std::string_view::npos ? data.substr(pos) : data.substr(pos, eol - pos);
            pos = eol == std::string_view::npos ? data.size() : eol + 1;
            ++line_no;
            if (line.empty())
            {
                continue;
            }
            const std::size_t tab = line.find('\t');
            if (tab == std::string_view::npos)
            {
                throw ParseError(line_no, "expected t_ms<TAB>level");
            }
            RatingEvent event;
            auto t_field = line.substr(0, tab);
            auto level_field = line.substr(tab + 1);
            auto [tp, tec] = std::from_chars(t_field.data(), t_field.data() + t_field.size(), event.t);
            auto [lp, lec] =
                std::from_chars(level_field.data(), level_field.data() + level_field.size(), event.level);
            if (tec != std::errc{} || tp != t_field.data() + t_field.size() || lec != std::errc{} ||
                lp != level_field.data() + level_field.size())
            {
                throw ParseError(line_no, "malformed rating event");
            }
            if (event.level < 0 || event.level >= rating_levels)
            {
                throw ParseError(line_no, "rating level outside 0..4");
            }
            if (!events.empty() && event.t < events.back().t)
            {
                throw ParseError(line_no, "rating timestamps must be nondecreasing");
            }
            events.push_back(event);
        }
        return events;
    }

    std::string serialize_ratings(std::span<const RatingEvent> events)
    {
        std::string out;
        for (const RatingEvent& event : events)
        {
            out += std::to_string(event.t);
            out += '\t';
            out += std::to_string(event.level);
            out += '\n';
        }
        return out;
    }

    std::string format_rating_summary(const RatingSummary& summary)
    {
        char buf[128];
        std::string out = "quality level shares of playback time\n";
        for (int level = rating_levels - 1; level >= 1; --level)
        {
            std::snprintf(buf, sizeof buf, "  level %d (%s): %6.2f %%\n", level,
                          rating_level_names[static_cast<std::size_t>(level)],
                          summary.level_percent[static_cast<std::size_t>(level)]);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, "  level 0 (%s): %6.2f %%\n", rating_level_names[0],
                      summary.level_percent[0]);
        out += buf;
        std::snprintf(buf, sizeof buf, "  unrated: %6.2f %%\n", summary.unrated_percent);
        out += buf;
        return out;
    }
}
