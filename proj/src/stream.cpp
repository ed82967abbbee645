#include "subtitler/stream.hpp"

#include "subtitler/window.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <sstream>

namespace subtitler
{
    namespace
    {
        Millis parse_millis(std::string_view field, std::size_t line, const char* name)
        {
            Millis value = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc{} || ptr != field.data() + field.size())
            {
                throw ParseError(line, std::string("invalid ") + name + " '" + std::string(field) + "'");
            }
            return value;
        }
    }

    ParseError::ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::vector<Segment> parse_segment_stream(std::string_view data)
    {
        std::vector<Segment> segments;
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

            std::array<std::string_view, 4> head;
            std::string_view rest = line;
            for (std::size_t f = 0; f < head.size(); ++f)
            {
                std::size_t tab = rest.find('\t');
                if (tab == std::string_view::npos)
                {
                    throw ParseError(line_no, "expected 5 tab-separated fields");
                }
                head[f] = rest.substr(0, tab);
                rest = rest.substr(tab + 1);
            }

            Segment seg;
            seg.arrival = parse_millis(head[0], line_no, "arrival time");
            seg.beg = parse_millis(head[1], line_no, "segment beginning time");
            seg.end = parse_millis(head[2], line_no, "segment end time");
            if (head[3] == "S")
            {
                seg.stability = Stability::Stable;
            }
            else if (head[3] == "U")
            {
                seg.stability = Stability::Unstable;
            }
            else
            {
                throw ParseError(line_no, "stability flag must be S or U, got '" + std::string(head[3]) + "'");
            }
            seg.text = std::string(rest);

            if (seg.arrival < 0)
            {
                throw ParseError(line_no, "arrival time must be nonnegative");
            }
            if (seg.beg > seg.end)
            {
                throw ParseError(line_no, "segment beginning time exceeds its end time");
            }
            if (seg.text.find('\n') != std::string::npos || seg.text.find('\r') != std::string::npos)
            {
                throw ParseError(line_no, "segment text contains a line break");
            }
            if (!segments.empty() && seg.arrival < segments.back().arrival)
            {
                throw ParseError(line_no, "arrival times must be nondecreasing");
            }
            segments.push_back(std::move(seg));
        }
        return segments;
    }

    std::string serialize_segment_stream(std::span<const Segment> segments)
    {
        std::ostringstream out;
        for (const Segment& seg : segments)
        {
            out << seg.arrival << '\t' << seg.beg << '\t' << seg.end << '\t'
                << (seg.stability == Stability::Stable ? 'S' : 'U') << '\t' << seg.text << '\n';
        }
        return out.str();
    }

    EventLog event_log_from_stream(std::span<const Segment> segments)
    {
        EventLog log;
        log.events.reserve(segments.size());
        SegmentBuffer buffer;
        Millis prev_arrival = 0;
        for (const Segment& seg : segments)
        {
            if (seg.arrival < prev_arrival)
            {
                throw ContractError("segments are not ordered by arrival");
            }
            prev_arrival = seg.arrival;
            buffer.apply_update(seg);
            log.events.push_back(LogEvent{seg.arrival, tokenize(buffer.text())});
        }
        return log;
    }

    EventLog parse_event_log(std::string_view data)
    {
        EventLog log;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos < data.size())
        {
            std::size_t eol = data.find('\n', pos);
            std::string_view line = data.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
            pos = eol == std::string_view::npos ? data.size() : eol + 1;
            ++line_no;
            if (line.empty())
            {
                continue;
            }
            nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
            if (record.is_discarded() || !record.is_object() || !record.contains("t") ||
                !record.contains("o") || !record["t"].is_number_integer() || !record["o"].is_string())
            {
                throw ParseError(line_no, "expected {\"t\": int_ms, \"o\": string}");
            }
            LogEvent event;
            event.t = record["t"].get<Millis>();
            event.output = tokenize(record["o"].get<std::string>());
            if (!log.events.empty() && event.t < log.events.back().t)
            {
                throw ParseError(line_no, "event times must be nondecreasing");
            }
            log.events.push_back(std::move(event));
        }
        return log;
    }

    std::string serialize_event_log(const EventLog& log)
    {
        std::string out;
        for (const LogEvent& event : log.events)
        {
            nlohmann::ordered_json record;
            record["t"] = event.t;
            record["o"] = join_tokens(event.output);
            out += record.dump();
            out += '\n';
        }
        return out;
    }
}
