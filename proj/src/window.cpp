#include "subtitler/window.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subtitler
{
    void SubtitleConfig::validate() const
    {
        if (width < 1 || height < 1)
        {
            throw std::invalid_argument("subtitle window must be at least 1x1");
        }
        if (!(chars_per_second > 0.0))
        {
            throw std::invalid_argument("reading rate must be positive");
        }
        if (blank_ms <= 0)
        {
            throw std::invalid_argument("blank time must be positive");
        }
    }

    Millis SubtitleConfig::reading_time_ms(std::size_t chars) const
    {
        return static_cast<Millis>(std::ceil(1000.0 * static_cast<double>(chars) / chars_per_second));
    }

    std::vector<WindowSnapshot> parse_snapshots(std::string_view data)
    {
        std::vector<WindowSnapshot> snapshots;
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
            nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
            if (record.is_discarded() || !record.is_object() || !record.contains("t") ||
                !record.contains("reset") || !record.contains("blanked") || !record.contains("lines") ||
                !record["lines"].is_array())
            {
                throw ParseError(line_no, "expected {\"t\",\"reset\",\"blanked\",\"lines\"}");
            }
            WindowSnapshot snap;
            snap.t = record["t"].get<Millis>();
            snap.reset = record["reset"].get<bool>();
            snap.blanked = record["blanked"].get<bool>();
            for (const auto& l : record["lines"])
            {
                if (!l.is_string())
                {
                    throw ParseError(line_no, "lines must be strings");
                }
                snap.lines.push_back(l.get<std::string>());
            }
            if (!snapshots.empty() && snap.t < snapshots.back().t)
            {
                throw ParseError(line_no, "snapshot times must be nondecreasing");
            }
            snapshots.push_back(std::move(snap));
        }
        return snapshots;
    }

    std::string serialize_snapshots(std::span<const WindowSnapshot> snapshots)
    {
        std::string out;
        for (const WindowSnapshot& snap : snapshots)
        {
            nlohmann::ordered_json record;
            record["t"] = snap.t;
            record["reset"] = snap.reset;
            record["blanked"] = snap.blanked;
            record["lines"] = snap.lines;
            out += record.dump();
            out += '\n';
        }
        return out;
    }

    std::vector<WrappedLine> wrap_text(std::string_view text, std::size_t base,
                                       int width, std::size_t max_lines)
    {
        const std::size_t w = static_cast<std::size_t>(width);
        std::vector<WrappedLine> lines;
        std::string cur;
        std::size_t cur_start = 0;
        std::size_t cur_end = 0;
        std::size_t cur_chars = 0;

        auto flush = [&] {
            if (!cur.empty())
            {
                lines.push_back(WrappedLine{cur, base + cur_start, base + cur_end});
                cur.clear();
                cur_chars = 0;
            }
        };

        std::size_t pos = 0;
        while (pos < text.size() && lines.size() < max_lines)
        {
            if (text[pos] == ' ')
            {
                ++pos;
                continue;
            }
            std::size_t tok_end = text.find(' ', pos);
            if (tok_end == std::string_view::npos)
            {
                tok_end = text.size();
            }
            std::string_view tok = text.substr(pos, tok_end - pos);
            std::size_t tok_chars = u8_length(tok);

            if (tok_chars > w)
            {
                // Over-width word: hard-split into full-width chunks.
                flush();
                std::size_t off = 0;
                std::size_t remaining = tok_chars;
                while (remaining > w && lines.size() < max_lines)
                {
                    std::size_t nb = u8_prefix_bytes(tok.substr(off), w);
                    lines.push_back(WrappedLine{std::string(tok.substr(off, nb)),
                                                base + pos + off, base + pos + off + nb});
                    off += nb;
                    remaining -= w;
                }
                if (remaining > 0 && lines.size() < max_lines)
                {
                    cur = std::string(tok.substr(off));
                    cur_start = pos + off;
                    cur_end = tok_end;
                    cur_chars = remaining;
                }
                pos = tok_end;
                continue;
            }

            if (cur.empty())
            {
                cur = std::string(tok);
                cur_start = pos;
                cur_chars = tok_chars;
            }
            else if (cur_chars + 1 + tok_chars <= w)
            {
                cur += ' ';
                cur += tok;
                cur_chars += 1 + tok_chars;
            }
            else
            {
                flush();
                if (lines.size() == max_lines)
                {
                    break;
                }
                cur = std::string(tok);
                cur_start = pos;
                cur_chars = tok_chars;
            }
            cur_end = tok_end;
            pos = tok_end;
        }
        if (lines.size() < max_lines)
        {
            flush();
        }
        return lines;
    }

    SegmentBuffer::Update SegmentBuffer::apply_update(const Segment& seg)
    {
        if (seg.beg > seg.end)
        {
            throw std::invalid_argument("segment beginning time exceeds its end time");
        }

        auto intersects = [](const Segment& a, const Segment& b) {
            // Half-open intervals; zero-length intervals intersect nothing.
            return a.beg < b.end && b.beg < a.end;
        };

        std::size_t first = segments_.size();
        std::size_t last = segments_.size();  // one past the removal range
        for (std::size_t i = 0; i < segments_.size(); ++i)
        {
            if (intersects(segments_[i], seg))
            {
                if (first == segments_.size())
                {
                    first = i;
                }
                last = i + 1;
            }
        }
        const bool removed_any = first != segments_.size();

        std::size_t insert_at;
        if (removed_any)
        {
            insert_at = first;
            for (std::size_t i = first; i < last; ++i)
            {
                if (segments_[i].stability == Stability::Stable)
                {
                    throw ContractError("stable segment overwrite: [" + std::to_string(seg.beg) +
                                        "," + std::to_string(seg.end) + ") intersects stable [" +
                                        std::to_string(segments_[i].beg) + "," +
                                        std::to_string(segments_[i].end) + ")");
                }
            }
        }
        else
        {
            insert_at = 0;
            while (insert_at < segments_.size() && segments_[insert_at].beg <= seg.beg)
            {
                ++insert_at;
            }
        }

        // The buffer keeps a stable prefix: Stable segments never follow
        // Unstable ones.
        if (seg.stability == Stability::Stable)
        {
            for (std::size_t i = 0; i < first && i < insert_at; ++i)
            {
                if (segments_[i].stability == Stability::Unstable)
                {
                    throw ContractError("stability ordering violation: stable segment arrives after "
                                        "a live unstable one");
                }
            }
        }
        else
        {
            for (std::size_t i = removed_any ? last : insert_at; i < segments_.size(); ++i)
            {
                if (segments_[i].stability == Stability::Stable)
                {
                    throw ContractError("stability ordering violation: unstable segment arrives before "
                                        "a stable one");
                }
            }
        }

        const std::string old_text = text_;

        if (removed_any)
        {
            segments_.erase(segments_.begin() + static_cast<std::ptrdiff_t>(first),
                            segments_.begin() + static_cast<std::ptrdiff_t>(last));
            normalized_.erase(normalized_.begin() + static_cast<std::ptrdiff_t>(first),
                              normalized_.begin() + static_cast<std::ptrdiff_t>(last));
        }
        segments_.insert(segments_.begin() + static_cast<std::ptrdiff_t>(insert_at), seg);
        normalized_.insert(normalized_.begin() + static_cast<std::ptrdiff_t>(insert_at),
                           normalize_spaces(seg.text));
        rebuild();

        Update result;
        result.inserted_index = insert_at;
        result.removed_any = removed_any;
        auto [old_it, new_it] = std::mismatch(old_text.begin(), old_text.end(), text_.begin(), text_.end());
        result.text_changed = old_it != old_text.end() || new_it != text_.end();
        result.first_changed_byte =
            result.text_changed ? static_cast<std::size_t>(new_it - text_.begin()) : npos;
        result.forced = display_end_ == npos || segment_start(insert_at) <= display_end_;
        return result;
    }

    void SegmentBuffer::rebuild()
    {
        starts_.assign(segments_.size(), 0);
        text_.clear();
        for (std::size_t i = 0; i < segments_.size(); ++i)
        {
            const std::string& piece = normalized_[i];
            if (piece.empty())
            {
                starts_[i] = text_.empty() ? 0 : text_.size() + 1;
                continue;
            }
            if (!text_.empty())
            {
                text_ += ' ';
            }
            starts_[i] = text_.size();
            text_ += piece;
        }
        // Empty segments at the tail would otherwise point past the end.
        for (auto& start : starts_)
        {
            start = std::min(start, text_.size());
        }
    }

    std::size_t SegmentBuffer::segment_start(std::size_t index) const
    {
        if (index >= segments_.size())
        {
            return text_.size();
        }
        return starts_[index];
    }

    std::size_t SegmentBuffer::byte_at(const BufferPos& pos) const
    {
        if (pos.segment >= segments_.size())
        {
            return text_.size();
        }
        return std::min(starts_[pos.segment] + pos.offset, text_.size());
    }

    BufferPos SegmentBuffer::position_at(std::size_t byte) const
    {
        byte = std::min(byte, text_.size());
        for (std::size_t i = segments_.size(); i-- > 0;)
        {
            if (!normalized_[i].empty() && starts_[i] <= byte)
            {
                return BufferPos{i, std::min(byte - starts_[i], normalized_[i].size())};
            }
        }
        return BufferPos{segments_.size(), 0};
    }

    std::vector<std::string> render_window(const SegmentBuffer& buffer, const SubtitleConfig& config)
    {
        config.validate();
        std::string_view tail(buffer.text());
        tail.remove_prefix(std::min(buffer.window_start(), tail.size()));
        auto wrapped = wrap_text(tail, buffer.window_start(), config.width,
                                 static_cast<std::size_t>(config.height) + 1);
        std::vector<std::string> lines;
        lines.reserve(wrapped.size());
        for (auto& line : wrapped)
        {
            lines.push_back(std::move(line.text));
        }
        return lines;
    }
}
