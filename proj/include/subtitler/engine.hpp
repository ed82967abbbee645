// The subtitler itself: an event-driven cache on the segment stream that
// owns the buffer and the presentation window and emits timestamped window
// snapshots under the reset / in-place update / scroll / blank rules.
#pragma once

#include "subtitler/window.hpp"

#include <chrono>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace subtitler
{
    class ClockError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Virtual mode advances only to explicitly requested instants (event
    // arrivals and timer deadlines), which makes replay deterministic; wall
    // mode sleeps, optionally scaled by `speed`.
    class Clock
    {
    public:
        enum class Mode
        {
            Virtual,
            Wall,
        };

        explicit Clock(Mode mode, double speed = 1.0);

        Mode mode() const noexcept { return mode_; }
        Millis now() const noexcept { return now_; }

        // Advances to `t`; in wall mode blocks until it is reached.
        void wait_until(Millis t);

    private:
        Mode mode_;
        double speed_;
        Millis now_ = 0;
        std::chrono::steady_clock::time_point start_;
    };

    class Subtitler
    {
    public:
        explicit Subtitler(SubtitleConfig config, bool keep_display_log = false);

        // Ingests one segment arriving at `now`. May emit a snapshot (reset
        // or in-place update). Throws ClockError on non-monotonic time and
        // propagates buffer contract errors.
        void push(const Segment& seg, Millis now);

        // Next instant at which a timer rule (scroll or blank) can fire.
        std::optional<Millis> next_deadline() const;

        // Fires at most one due timer rule at `now`; returns whether one fired.
        bool fire(Millis now);

        const std::vector<WindowSnapshot>& snapshots() const noexcept { return snapshots_; }
        const SegmentBuffer& buffer() const noexcept { return buffer_; }

        // Ground-truth event log of the displayed text (scrolled-away content
        // plus the current window at each snapshot). Only recorded when
        // requested at construction.
        const EventLog& display_log() const noexcept { return display_log_; }

    private:
        struct Render
        {
            std::vector<WrappedLine> lines;   // up to height+1
            bool extra = false;               // staging line is nonempty
            std::size_t shown_end = 0;        // byte end of displayed content
            std::size_t display_end = npos;   // for forced-update detection
            std::size_t next_start = 0;       // first never-displayed byte
        };

        Render render() const;
        std::vector<std::string> displayed(const Render& r) const;
        void emit(Millis t, const Render& r, bool reset, bool blanked);

        SubtitleConfig config_;
        SegmentBuffer buffer_;
        Render current_;
        std::vector<std::string> shown_;
        std::string top_line_;
        Millis top_since_ = 0;
        Millis last_change_ = 0;
        Millis last_now_ = 0;
        bool blanked_ = false;
        bool keep_display_log_;
        std::vector<WindowSnapshot> snapshots_;
        EventLog display_log_;
    };

    // Replays a stream ordered by arrival. Under a virtual clock the result
    // is a pure function of (segments, config): snapshots appear at arrival
    // instants and timer deadlines only.
    std::vector<WindowSnapshot> run(std::span<const Segment> segments,
                                    const SubtitleConfig& config, Clock& clock);
    std::vector<WindowSnapshot> run(std::span<const Segment> segments,
                                    const SubtitleConfig& config);

    struct RunResult
    {
        std::vector<WindowSnapshot> snapshots;
        EventLog display_log;
    };

    RunResult run_with_display_log(std::span<const Segment> segments,
                                   const SubtitleConfig& config);
}
