// Stream model: timed stable/unstable segments, event logs of full output
// snapshots, and their on-disk formats (segment TSV, event-log JSONL).
#pragma once

#include "subtitler/text.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace subtitler
{
    enum class Stability
    {
        Stable,
        Unstable,
    };

    // One timed, flagged piece of SLT output. `beg`/`end` delimit the source
    // audio interval the text translates; `arrival` is the receipt time.
    struct Segment
    {
        Millis arrival = 0;
        Millis beg = 0;
        Millis end = 0;
        Stability stability = Stability::Unstable;
        std::string text;

        bool operator==(const Segment&) const = default;
    };

    struct LogEvent
    {
        Millis t = 0;
        TokenSeq output;

        bool operator==(const LogEvent&) const = default;
    };

    // Ordered list of (t, o) full-output snapshots; o_0 is implicitly empty,
    // so the first event counts as a translation update.
    struct EventLog
    {
        std::vector<LogEvent> events;

        bool operator==(const EventLog&) const = default;
    };

    class ParseError : public std::runtime_error
    {
    public:
        ParseError(std::size_t line, const std::string& what);
        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    // Stream contract breaches: rewriting stable content, broken ordering.
    class ContractError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Segment TSV: `arrival_ms<TAB>beg_ms<TAB>end_ms<TAB>S|U<TAB>text`, one
    // segment per line, UTF-8, LF endings. Blank lines are ignored.
    std::vector<Segment> parse_segment_stream(std::string_view data);
    std::string serialize_segment_stream(std::span<const Segment> segments);

    // Replays the segment stream through the buffer replacement semantics and
    // records one event per arrival: o_i = tokens of all live segments.
    EventLog event_log_from_stream(std::span<const Segment> segments);

    // Event-log JSONL: {"t": int_ms, "o": "<c(o)>"} per line; c(o) is stored
    // and re-tokenized on load.
    EventLog parse_event_log(std::string_view data);
    std::string serialize_event_log(const EventLog& log);
}
