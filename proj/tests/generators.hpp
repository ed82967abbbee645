// Randomized inputs shared by the unit and acceptance suites. Everything is
// driven by a caller-seeded engine so failures reproduce.
#pragma once

#include "subtitler/stream.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testgen
{
    inline std::string random_token(std::mt19937& rng)
    {
        static const std::vector<std::string> vocab = {
            "es", "war", "einmal", "eine", "kleine", "hezky", "den", "svete", "ahoj",
            "slunce", "a", "b", "c", "w1", "w2", "w3", "ěsště", "über",
            ".", "konec.", "tak!", "ano?", "x)", "\"q.\""};
        std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
        return vocab[pick(rng)];
    }

    inline subtitler::TokenSeq random_tokens(std::mt19937& rng, std::size_t max_tokens)
    {
        std::uniform_int_distribution<std::size_t> count(0, max_tokens);
        subtitler::TokenSeq tokens;
        const std::size_t n = count(rng);
        tokens.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            tokens.push_back(random_token(rng));
        }
        return tokens;
    }

    // Random walk over outputs: keep a random prefix, regenerate the tail.
    inline subtitler::EventLog random_event_log(std::mt19937& rng, std::size_t max_events = 20,
                                                std::size_t max_tokens = 30)
    {
        subtitler::EventLog log;
        std::uniform_int_distribution<std::size_t> event_count(1, max_events);
        std::uniform_int_distribution<subtitler::Millis> gap(0, 500);
        const std::size_t events = event_count(rng);
        subtitler::TokenSeq current;
        subtitler::Millis t = gap(rng);
        for (std::size_t i = 0; i < events; ++i)
        {
            std::uniform_int_distribution<std::size_t> keep(0, current.size());
            current.resize(keep(rng));
            for (const std::string& token : random_tokens(rng, max_tokens))
            {
                if (current.size() >= max_tokens)
                {
                    break;
                }
                current.push_back(token);
            }
            log.events.push_back(subtitler::LogEvent{t, current});
            t += gap(rng);
        }
        return log;
    }

    // Sentence-parallel source/output logs: equal sentence counts, independent
    // lengths, progressive reveals with revisable tails.
    inline std::pair<subtitler::EventLog, subtitler::EventLog> random_aligned_logs(std::mt19937& rng)
    {
        std::uniform_int_distribution<std::size_t> sentence_count(1, 4);
        std::uniform_int_distribution<std::size_t> sentence_len(1, 5);
        const std::size_t sentences = sentence_count(rng);

        auto build_final = [&](const char* prefix) {
            subtitler::TokenSeq tokens;
            for (std::size_t s = 0; s < sentences; ++s)
            {
                const std::size_t len = sentence_len(rng);
                for (std::size_t w = 0; w + 1 < len; ++w)
                {
                    tokens.push_back(prefix + std::to_string(s) + "_" + std::to_string(w));
                }
                tokens.push_back(prefix + std::to_string(s) + "_end.");
            }
            return tokens;
        };

        auto build_log = [&](const subtitler::TokenSeq& final_tokens) {
            subtitler::EventLog log;
            std::uniform_int_distribution<std::size_t> event_count(2, 8);
            std::uniform_int_distribution<subtitler::Millis> gap(1, 700);
            std::uniform_int_distribution<std::size_t> junk_count(0, 2);
            const std::size_t events = event_count(rng);
            subtitler::Millis t = gap(rng);
            for (std::size_t i = 0; i + 1 < events; ++i)
            {
                std::uniform_int_distribution<std::size_t> reveal(0, final_tokens.size());
                subtitler::TokenSeq output(final_tokens.begin(),
                                           final_tokens.begin() + static_cast<std::ptrdiff_t>(reveal(rng)));
                const std::size_t junk = junk_count(rng);
                for (std::size_t k = 0; k < junk; ++k)
                {
                    output.push_back("zz" + std::to_string(k));
                }
                log.events.push_back(subtitler::LogEvent{t, std::move(output)});
                t += gap(rng);
            }
            log.events.push_back(subtitler::LogEvent{t, final_tokens});
            return log;
        };

        const subtitler::TokenSeq src_final = build_final("s");
        const subtitler::TokenSeq out_final = build_final("o");
        return {build_log(src_final), build_log(out_final)};
    }

    struct StreamOptions
    {
        std::size_t steps = 30;
        subtitler::Millis max_gap = 1500;
        // Probability weights out of 100.
        int append_weight = 55;
        int revise_weight = 25;
        int stabilize_weight = 20;
        bool long_gaps = false;
        bool oversize_words = false;
    };

    // Random stable/unstable segment stream obeying the buffer contract:
    // replacements only touch unstable content and stabilization moves
    // front-to-back.
    inline std::vector<subtitler::Segment> random_segment_stream(std::mt19937& rng,
                                                                 const StreamOptions& options = {})
    {
        using subtitler::Segment;
        using subtitler::Stability;
        std::vector<Segment> emitted;
        std::vector<Segment> live;
        std::size_t stable_count = 0;
        subtitler::Millis arrival = 0;
        subtitler::Millis cursor = 0;
        std::size_t word = 0;

        auto fresh_text = [&](std::size_t max_words) {
            std::uniform_int_distribution<std::size_t> count(1, max_words);
            std::uniform_int_distribution<int> oversize(0, 19);
            std::string text;
            const std::size_t n = count(rng);
            for (std::size_t i = 0; i < n; ++i)
            {
                if (!text.empty())
                {
                    text += ' ';
                }
                if (options.oversize_words && oversize(rng) == 0)
                {
                    text += "longword" + std::string(20, 'x') + std::to_string(word++);
                }
                else
                {
                    text += "s" + std::to_string(word++);
                }
            }
            return text;
        };

        std::uniform_int_distribution<int> percent(0, 99);
        std::uniform_int_distribution<subtitler::Millis> gap(50, options.max_gap);
        for (std::size_t step = 0; step < options.steps; ++step)
        {
            arrival += gap(rng);
            if (options.long_gaps && percent(rng) < 8)
            {
                arrival += 25'000;
            }
            const int roll = percent(rng);
            Segment seg;
            seg.arrival = arrival;
            if (roll < options.append_weight || live.empty())
            {
                std::uniform_int_distribution<subtitler::Millis> span(200, 2000);
                seg.beg = cursor;
                seg.end = cursor + span(rng);
                cursor = seg.end;
                seg.stability = Stability::Unstable;
                seg.text = fresh_text(6);
            }
            else if (roll < options.append_weight + options.revise_weight &&
                     stable_count < live.size())
            {
                // Replace a contiguous run of unstable segments.
                std::uniform_int_distribution<std::size_t> pick(stable_count, live.size() - 1);
                const std::size_t first = pick(rng);
                std::uniform_int_distribution<std::size_t> span(first, live.size() - 1);
                const std::size_t last = span(rng);
                seg.beg = live[first].beg;
                seg.end = live[last].end;
                seg.stability = Stability::Unstable;
                seg.text = fresh_text(8);
            }
            else if (stable_count < live.size())
            {
                // Stabilize the earliest unstable run, usually verbatim.
                std::uniform_int_distribution<std::size_t> span(stable_count, live.size() - 1);
                const std::size_t last = span(rng);
                seg.beg = live[stable_count].beg;
                seg.end = live[last].end;
                seg.stability = Stability::Stable;
                if (percent(rng) < 70)
                {
                    std::string text;
                    for (std::size_t i = stable_count; i <= last; ++i)
                    {
                        if (!text.empty())
                        {
                            text += ' ';
                        }
                        text += live[i].text;
                    }
                    seg.text = text;
                }
                else
                {
                    seg.text = fresh_text(8);
                }
            }
            else
            {
                continue;
            }

            // Mirror the replacement semantics to keep the state consistent.
            std::vector<Segment> next;
            bool inserted = false;
            std::size_t new_stable = 0;
            for (const Segment& old : live)
            {
                const bool intersects = old.beg < seg.end && seg.beg < old.end;
                if (intersects)
                {
                    if (!inserted)
                    {
                        next.push_back(seg);
                        inserted = true;
                    }
                    continue;
                }
                if (!inserted && old.beg > seg.beg)
                {
                    next.push_back(seg);
                    inserted = true;
                }
                next.push_back(old);
            }
            if (!inserted)
            {
                next.push_back(seg);
            }
            live = std::move(next);
            new_stable = 0;
            for (const Segment& s : live)
            {
                if (s.stability != Stability::Stable)
                {
                    break;
                }
                ++new_stable;
            }
            stable_count = new_stable;
            emitted.push_back(seg);
        }
        return emitted;
    }
}
