#include "subtitler/metrics.hpp"

#include <algorithm>
#include <optional>

namespace subtitler
{
    std::int64_t char_erasure(const TokenSeq& prev, const TokenSeq& next)
    {
        const std::string prev_text = join_tokens(prev);
        const std::string next_text = join_tokens(next);
        const CharLcp lcp = u8_common_prefix(next_text, prev_text);
        return static_cast<std::int64_t>(u8_length(prev_text)) - static_cast<std::int64_t>(lcp.chars);
    }

    namespace
    {
        std::vector<std::string> joined_outputs(const EventLog& log)
        {
            std::vector<std::string> joined(log.events.size());
            const std::int64_t n = static_cast<std::int64_t>(log.events.size());
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < n; ++i)
            {
                joined[static_cast<std::size_t>(i)] =
                    join_tokens(log.events[static_cast<std::size_t>(i)].output);
            }
            return joined;
        }

        // cE per event plus the update mask (o_i != o_{i-1}, o_0 empty).
        void erasure_scan(const std::vector<std::string>& joined,
                          std::vector<std::int64_t>& erasure, std::vector<char>& updated)
        {
            const std::int64_t n = static_cast<std::int64_t>(joined.size());
            erasure.assign(joined.size(), 0);
            updated.assign(joined.size(), 0);
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < n; ++i)
            {
                const std::size_t k = static_cast<std::size_t>(i);
                const std::string_view prev = k == 0 ? std::string_view{} : std::string_view(joined[k - 1]);
                const std::string_view cur = joined[k];
                const CharLcp lcp = u8_common_prefix(cur, prev);
                erasure[k] = static_cast<std::int64_t>(u8_length(prev)) -
                             static_cast<std::int64_t>(lcp.chars);
                updated[k] = cur != prev ? 1 : 0;
            }
        }
    }

    ErasureReport erasure_report(const EventLog& log)
    {
        ErasureReport report;
        report.events = log.events.size();
        if (log.events.empty())
        {
            return report;
        }
        const std::vector<std::string> joined = joined_outputs(log);
        std::vector<char> updated;
        erasure_scan(joined, report.per_event, updated);
        for (std::size_t i = 0; i < joined.size(); ++i)
        {
            report.total_erased += report.per_event[i];
            report.updates += updated[i] != 0 ? 1 : 0;
        }
        report.ace = report.updates > 0
                         ? static_cast<double>(report.total_erased) / static_cast<double>(report.updates)
                         : 0.0;
        const std::size_t final_len = u8_length(joined.back());
        report.ne = final_len > 0
                        ? static_cast<double>(report.total_erased) / static_cast<double>(final_len)
                        : 0.0;
        return report;
    }

    std::vector<CdfPoint> erasure_cdf(std::span<const EventLog> logs,
                                      std::span<const std::int64_t> thresholds)
    {
        if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        {
            throw std::invalid_argument("thresholds must be ascending");
        }
        std::vector<std::int64_t> samples;
        for (const EventLog& log : logs)
        {
            const std::vector<std::string> joined = joined_outputs(log);
            std::vector<std::int64_t> erasure;
            std::vector<char> updated;
            erasure_scan(joined, erasure, updated);
            for (std::size_t i = 0; i < erasure.size(); ++i)
            {
                if (updated[i] != 0)
                {
                    samples.push_back(erasure[i]);
                }
            }
        }
        if (samples.empty())
        {
            throw EmptySampleError("empty sample: no translation updates");
        }
        std::sort(samples.begin(), samples.end());
        std::vector<CdfPoint> points;
        points.reserve(thresholds.size());
        for (std::int64_t x : thresholds)
        {
            const auto within = std::upper_bound(samples.begin(), samples.end(), x) - samples.begin();
            points.push_back(CdfPoint{
                x, 100.0 * static_cast<double>(within) / static_cast<double>(samples.size())});
        }
        return points;
    }

    namespace
    {
        std::size_t word_prefix_match(const TokenSeq& a, const TokenSeq& b, std::size_t cap)
        {
            const std::size_t limit = std::min({a.size(), b.size(), cap});
            std::size_t i = 0;
            while (i < limit && a[i] == b[i])
            {
                ++i;
            }
            return i;
        }
    }

    std::vector<std::size_t> finalization_events(const EventLog& log)
    {
        if (log.events.empty())
        {
            return {};
        }
        const TokenSeq& final_output = log.events.back().output;
        const std::size_t words = final_output.size();
        if (words == 0)
        {
            return {};
        }
        const std::int64_t count = static_cast<std::int64_t>(log.events.size());

        // stable[i]: how much of the final prefix event i already agrees on.
        std::vector<std::size_t> stable(log.events.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i)
        {
            const std::size_t k = static_cast<std::size_t>(i);
            stable[k] = word_prefix_match(log.events[k].output, final_output, words);
        }
        // A word is finalized at i only if it holds in every later event too.
        for (std::size_t i = log.events.size() - 1; i-- > 0;)
        {
            stable[i] = std::min(stable[i], stable[i + 1]);
        }

        std::vector<std::size_t> finalized(words);
        std::size_t event = 0;
        for (std::size_t word = 1; word <= words; ++word)
        {
            while (stable[event] < word)
            {
                ++event;
            }
            finalized[word - 1] = event + 1;
        }
        return finalized;
    }

    std::size_t finalization_event(const EventLog& log, std::size_t word)
    {
        const std::size_t words = log.events.empty() ? 0 : log.events.back().output.size();
        if (word < 1 || word > words)
        {
            throw std::out_of_range("word index " + std::to_string(word) + " outside [1, " +
                                    std::to_string(words) + "]");
        }
        return finalization_events(log)[word - 1];
    }

    std::size_t baseline_correspondence(std::size_t word, std::size_t out_len, std::size_t src_len)
    {
        if (out_len < 1 || src_len < 1)
        {
            throw std::invalid_argument("baseline correspondence requires nonempty texts");
        }
        if (word < 1 || word > out_len)
        {
            throw std::out_of_range("word index outside [1, out_len]");
        }
        const std::size_t raw = word * src_len / out_len;
        return std::clamp<std::size_t>(raw, 1, src_len);
    }

    std::size_t catchup_correspondence(const SentenceIndex& out_index, const SentenceIndex& src_index,
                                       std::size_t word, CatchupRounding rounding)
    {
        const WordLocation loc = sentence_of(out_index, word);
        if (loc.sentence > src_index.count())
        {
            throw AlignmentError("output sentence " + std::to_string(loc.sentence) +
                                 " has no source counterpart (source has " +
                                 std::to_string(src_index.count()) + ")");
        }
        const std::size_t out_len = out_index.lengths[loc.sentence - 1];
        const std::size_t src_len = src_index.lengths[loc.sentence - 1];
        const std::size_t before = src_index.starts[loc.sentence - 1];
        const std::size_t scaled = rounding == CatchupRounding::RatioFloor
                                       ? loc.position * (src_len / out_len)
                                       : loc.position * src_len / out_len;
        return std::clamp(before + scaled, before + 1, before + src_len);
    }

    LatencyReport translation_latency(const EventLog& src, const EventLog& out, LatencyMode mode,
                                      CatchupRounding rounding)
    {
        if (src.events.empty() || out.events.empty())
        {
            throw std::invalid_argument("latency requires nonempty event logs");
        }
        LatencyReport report;
        report.mode = mode;

        const TokenSeq& out_final = out.events.back().output;
        const TokenSeq& src_final = src.events.back().output;
        if (out_final.empty())
        {
            report.warnings.push_back("final output is empty; no words to evaluate");
            return report;
        }

        const std::vector<std::size_t> out_fin = finalization_events(out);
        const std::vector<std::size_t> src_fin = finalization_events(src);

        std::size_t words = out_final.size();
        SentenceIndex out_sentences;
        SentenceIndex src_sentences;
        if (mode == LatencyMode::Catchup)
        {
            out_sentences = split_sentences(out_final);
            src_sentences = split_sentences(src_final);
            if (src_sentences.count() == 0)
            {
                throw AlignmentError("source final output has no sentences");
            }
            if (out_sentences.count() != src_sentences.count())
            {
                const std::size_t shared = std::min(out_sentences.count(), src_sentences.count());
                report.warnings.push_back(
                    "sentence counts differ (output " + std::to_string(out_sentences.count()) +
                    ", source " + std::to_string(src_sentences.count()) + "); truncating to " +
                    std::to_string(shared));
                if (out_sentences.count() > shared)
                {
                    words = out_sentences.starts[shared - 1] + out_sentences.lengths[shared - 1];
                }
            }
        }
        else if (mode == LatencyMode::Baseline)
        {
            if (src_final.empty())
            {
                throw AlignmentError("source final output is empty");
            }
        }
        else if (out_final != src_final)
        {
            throw ConsistencyError("identity correspondence impossible: final texts diverge");
        }

        report.per_word.resize(words);
        std::int64_t total = 0;
        const std::int64_t n = static_cast<std::int64_t>(words);
#pragma omp parallel for schedule(static) reduction(+ : total)
        for (std::int64_t i = 0; i < n; ++i)
        {
            const std::size_t word = static_cast<std::size_t>(i) + 1;
            std::size_t source_word = word;
            if (mode == LatencyMode::Baseline)
            {
                source_word = baseline_correspondence(word, out_final.size(), src_final.size());
            }
            else if (mode == LatencyMode::Catchup)
            {
                source_word = catchup_correspondence(out_sentences, src_sentences, word, rounding);
            }
            const Millis out_t = out.events[out_fin[word - 1] - 1].t;
            const Millis src_t = src.events[src_fin[source_word - 1] - 1].t;
            const Millis latency = out_t - src_t;
            report.per_word[static_cast<std::size_t>(i)] = {word, latency};
            total += latency;
        }
        report.total_ms = total;
        report.mean_seconds =
            words > 0 ? static_cast<double>(total) / static_cast<double>(words) / 1000.0 : 0.0;
        return report;
    }

    double pooled_mean_seconds(std::span<const LatencyReport> reports)
    {
        std::int64_t total = 0;
        std::size_t words = 0;
        for (const LatencyReport& report : reports)
        {
            total += report.total_ms;
            words += report.per_word.size();
        }
        return words > 0 ? static_cast<double>(total) / static_cast<double>(words) / 1000.0 : 0.0;
    }

    namespace
    {
        // Matches the window lines at byte q of the SLT text. A line boundary
        // consumes one space when present; hard-split lines continue without.
        std::optional<std::size_t> match_window_at(std::string_view text, std::size_t q,
                                                   std::span<const std::string> lines)
        {
            std::size_t p = q;
            for (std::size_t i = 0; i < lines.size(); ++i)
            {
                const std::string& line = lines[i];
                if (p + line.size() > text.size() || text.compare(p, line.size(), line) != 0)
                {
                    return std::nullopt;
                }
                p += line.size();
                if (i + 1 < lines.size() && p < text.size() && text[p] == ' ')
                {
                    ++p;
                }
            }
            return p;
        }

        bool token_boundary(std::string_view text, std::size_t q)
        {
            return q == 0 || (q <= text.size() && text[q - 1] == ' ');
        }
    }

    EventLog display_log_from_snapshots(const EventLog& slt,
                                        std::span<const WindowSnapshot> snapshots)
    {
        EventLog out;
        if (snapshots.empty())
        {
            return out;
        }
        std::vector<std::string> texts(slt.events.size());
        for (std::size_t i = 0; i < slt.events.size(); ++i)
        {
            texts[i] = join_tokens(slt.events[i].output);
        }

        std::size_t consumed = 0;      // SLT events at or before the snapshot
        std::string previous_text;     // SLT text at the previous snapshot
        std::size_t anchor = 0;        // window start byte within the SLT text
        std::size_t shown_end = 0;     // display end byte within the SLT text
        std::vector<std::string> previous_lines;
        bool have_content = false;

        for (const WindowSnapshot& snap : snapshots)
        {
            while (consumed < slt.events.size() && slt.events[consumed].t <= snap.t)
            {
                ++consumed;
            }
            if (consumed == 0)
            {
                throw ConsistencyError("snapshot at t=" + std::to_string(snap.t) +
                                       " precedes the first SLT event");
            }
            const std::string_view text = texts[consumed - 1];

            if (snap.blanked)
            {
                if (out.events.empty())
                {
                    throw ConsistencyError("blank snapshot before any content");
                }
                // The window restarts at the first never-displayed content.
                anchor = shown_end < text.size() && text[shown_end] == ' ' ? shown_end + 1 : shown_end;
                previous_lines.clear();
                have_content = false;
                out.events.push_back(LogEvent{snap.t, out.events.back().output});
                previous_text = std::string(text);
                continue;
            }

            std::vector<std::string> lines;
            for (const std::string& line : snap.lines)
            {
                if (!line.empty())
                {
                    lines.push_back(line);
                }
            }

            std::optional<std::size_t> end;
            if (snap.reset)
            {
                // The window moved back to the start of a revised segment:
                // that start cannot lie beyond the first changed byte.
                const auto diff = std::mismatch(previous_text.begin(), previous_text.end(),
                                                text.begin(), text.end());
                const std::size_t changed = static_cast<std::size_t>(diff.first - previous_text.begin());
                std::size_t limit = std::min(changed, anchor > 0 ? anchor - 1 : 0);
                limit = std::min(limit, text.size());
                for (std::size_t q = limit + 1; q-- > 0;)
                {
                    if (!token_boundary(text, q))
                    {
                        continue;
                    }
                    if (auto matched = match_window_at(text, q, lines))
                    {
                        anchor = q;
                        end = matched;
                        break;
                    }
                }
                if (!end)
                {
                    throw ConsistencyError("reset snapshot at t=" + std::to_string(snap.t) +
                                           " does not match the SLT text");
                }
            }
            else if (!have_content)
            {
                end = match_window_at(text, anchor, lines);
                if (!end)
                {
                    throw ConsistencyError("snapshot at t=" + std::to_string(snap.t) +
                                           " does not match the SLT text at the window start");
                }
            }
            else
            {
                // Scroll drops the top line; an in-place rewrite keeps the
                // anchor. Prefer scroll when both readings are possible.
                std::optional<std::size_t> scroll_end;
                std::size_t scroll_anchor = 0;
                if (!previous_lines.empty())
                {
                    const std::string& top = previous_lines[0];
                    if (anchor + top.size() <= text.size() &&
                        text.compare(anchor, top.size(), top) == 0)
                    {
                        std::size_t q = anchor + top.size();
                        if (q < text.size() && text[q] == ' ')
                        {
                            ++q;
                        }
                        if (auto matched = match_window_at(text, q, lines))
                        {
                            scroll_anchor = q;
                            scroll_end = matched;
                        }
                    }
                }
                if (scroll_end)
                {
                    anchor = scroll_anchor;
                    end = scroll_end;
                }
                else
                {
                    end = match_window_at(text, anchor, lines);
                    if (!end)
                    {
                        throw ConsistencyError("snapshot at t=" + std::to_string(snap.t) +
                                               " matches neither a scroll nor an in-place update");
                    }
                }
            }

            shown_end = *end;
            have_content = true;
            previous_lines = std::move(lines);
            out.events.push_back(LogEvent{snap.t, tokenize(text.substr(0, shown_end))});
            previous_text = std::string(text);
        }
        return out;
    }

    LatencyReport subtitling_latency(const EventLog& slt, std::span<const WindowSnapshot> snapshots)
    {
        if (slt.events.empty())
        {
            throw std::invalid_argument("subtitling latency requires a nonempty SLT log");
        }
        const EventLog displayed = display_log_from_snapshots(slt, snapshots);
        if (displayed.events.empty())
        {
            if (slt.events.back().output.empty())
            {
                LatencyReport report;
                report.mode = LatencyMode::Identity;
                report.warnings.push_back("empty stream; nothing displayed");
                return report;
            }
            throw ConsistencyError("no snapshots for a nonempty SLT output");
        }
        return translation_latency(slt, displayed, LatencyMode::Identity);
    }
}
