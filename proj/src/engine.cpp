#include "subtitler/engine.hpp"

#include <algorithm>
#include <thread>

namespace subtitler
{
    Clock::Clock(Mode mode, double speed)
        : mode_(mode), speed_(speed), start_(std::chrono::steady_clock::now())
    {
        if (!(speed > 0.0))
        {
            throw std::invalid_argument("clock speed must be positive");
        }
    }

    void Clock::wait_until(Millis t)
    {
        if (t < now_)
        {
            throw ClockError("time moved backwards: " + std::to_string(t) + " < " +
                             std::to_string(now_));
        }
        if (mode_ == Mode::Wall)
        {
            const auto offset = std::chrono::duration<double, std::milli>(static_cast<double>(t) / speed_);
            std::this_thread::sleep_until(
                start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(offset));
        }
        now_ = t;
    }

    Subtitler::Subtitler(SubtitleConfig config, bool keep_display_log)
        : config_(config), keep_display_log_(keep_display_log)
    {
        config_.validate();
        current_ = render();
    }

    Subtitler::Render Subtitler::render() const
    {
        Render r;
        const std::string& text = buffer_.text();
        const std::size_t ws = std::min(buffer_.window_start(), text.size());
        const std::size_t h = static_cast<std::size_t>(config_.height);
        r.lines = wrap_text(std::string_view(text).substr(ws), ws, config_.width, h + 1);
        r.extra = r.lines.size() > h;
        const std::size_t shown = std::min(r.lines.size(), h);
        r.shown_end = shown == 0 ? ws : r.lines[shown - 1].end_byte;
        r.display_end = r.extra ? r.shown_end : npos;
        r.next_start = r.extra ? r.lines[h].start_byte : text.size();
        return r;
    }

    std::vector<std::string> Subtitler::displayed(const Render& r) const
    {
        const std::size_t shown = std::min(r.lines.size(), static_cast<std::size_t>(config_.height));
        std::vector<std::string> lines;
        lines.reserve(shown);
        for (std::size_t i = 0; i < shown; ++i)
        {
            lines.push_back(r.lines[i].text);
        }
        return lines;
    }

    void Subtitler::emit(Millis t, const Render& r, bool reset, bool blanked)
    {
        WindowSnapshot snap;
        snap.t = t;
        snap.reset = reset;
        snap.blanked = blanked;
        if (blanked)
        {
            snap.lines.assign(static_cast<std::size_t>(config_.height), std::string{});
        }
        else
        {
            snap.lines = displayed(r);
        }
        snapshots_.push_back(std::move(snap));
        if (keep_display_log_)
        {
            // Everything displayed so far: the consumed prefix plus the window.
            display_log_.events.push_back(
                LogEvent{t, tokenize(std::string_view(buffer_.text()).substr(0, r.shown_end))});
        }
    }

    void Subtitler::push(const Segment& seg, Millis now)
    {
        if (now < last_now_)
        {
            throw ClockError("segment pushed at a past instant");
        }
        last_now_ = now;

        auto update = buffer_.apply_update(seg);
        if (!update.text_changed)
        {
            return;
        }

        auto adopt_lines = [&](std::vector<std::string>&& lines) {
            if (lines.empty())
            {
                top_line_.clear();
            }
            else if (lines[0] != top_line_)
            {
                top_line_ = lines[0];
                top_since_ = now;
            }
            shown_ = std::move(lines);
            last_change_ = now;
            blanked_ = false;
        };

        if (update.first_changed_byte < buffer_.window_start())
        {
            // Content the user already scrolled past was revised: move the
            // window back to the start of the earliest changed segment.
            buffer_.set_window_start(buffer_.segment_start(update.inserted_index));
            current_ = render();
            emit(now, current_, true, false);
            auto lines = displayed(current_);
            top_line_ = lines.empty() ? std::string{} : lines[0];
            top_since_ = now;
            shown_ = std::move(lines);
            last_change_ = now;
            blanked_ = false;
        }
        else
        {
            current_ = render();
            auto lines = displayed(current_);
            if (lines != shown_)
            {
                emit(now, current_, false, false);
                adopt_lines(std::move(lines));
            }
        }
        buffer_.set_display_end(current_.display_end);
    }

    std::optional<Millis> Subtitler::next_deadline() const
    {
        if (blanked_ || shown_.empty())
        {
            return std::nullopt;
        }
        Millis deadline = last_change_ + config_.blank_ms;
        if (current_.extra)
        {
            deadline = std::min(deadline, top_since_ + config_.reading_time_ms(u8_length(top_line_)));
        }
        return deadline;
    }

    bool Subtitler::fire(Millis now)
    {
        if (now < last_now_)
        {
            throw ClockError("timer fired at a past instant");
        }

        if (!blanked_ && !shown_.empty() && current_.extra &&
            now >= top_since_ + config_.reading_time_ms(u8_length(top_line_)))
        {
            last_now_ = now;
            buffer_.set_window_start(current_.lines[1].start_byte);
            current_ = render();
            emit(now, current_, false, false);
            auto lines = displayed(current_);
            if (lines.empty())
            {
                top_line_.clear();
            }
            else if (lines[0] != top_line_)
            {
                top_line_ = lines[0];
                top_since_ = now;
            }
            shown_ = std::move(lines);
            last_change_ = now;
            buffer_.set_display_end(current_.display_end);
            return true;
        }

        if (!blanked_ && !shown_.empty() && now >= last_change_ + config_.blank_ms)
        {
            last_now_ = now;
            emit(now, current_, false, true);
            blanked_ = true;
            // The old content was consumed; restart at never-displayed input.
            buffer_.set_window_start(current_.next_start);
            buffer_.set_display_end(npos);
            shown_.clear();
            top_line_.clear();
            current_ = render();
            return true;
        }
        return false;
    }

    namespace
    {
        void drive(Subtitler& subtitler, std::span<const Segment> segments, Clock& clock)
        {
            std::size_t next = 0;
            while (true)
            {
                auto deadline = subtitler.next_deadline();
                const bool have_arrival = next < segments.size();
                const Millis due = deadline ? std::max(*deadline, clock.now()) : 0;
                if (have_arrival && (!deadline || segments[next].arrival <= due))
                {
                    clock.wait_until(segments[next].arrival);
                    subtitler.push(segments[next], clock.now());
                    ++next;
                }
                else if (deadline)
                {
                    clock.wait_until(due);
                    subtitler.fire(clock.now());
                }
                else
                {
                    break;
                }
            }
        }
    }

    std::vector<WindowSnapshot> run(std::span<const Segment> segments,
                                    const SubtitleConfig& config, Clock& clock)
    {
        Subtitler subtitler(config);
        drive(subtitler, segments, clock);
        return subtitler.snapshots();
    }

    std::vector<WindowSnapshot> run(std::span<const Segment> segments, const SubtitleConfig& config)
    {
        Clock clock(Clock::Mode::Virtual);
        return run(segments, config, clock);
    }

    RunResult run_with_display_log(std::span<const Segment> segments, const SubtitleConfig& config)
    {
        Subtitler subtitler(config, true);
        Clock clock(Clock::Mode::Virtual);
        drive(subtitler, segments, clock);
        return RunResult{subtitler.snapshots(), subtitler.display_log()};
    }
}
