// Presentation window machinery: subtitle geometry/timing configuration, the
// segment buffer with its window position, greedy word wrapping and the
// emitted window snapshots.
#pragma once

#include "subtitler/stream.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace subtitler
{
    struct SubtitleConfig
    {
        int width = 70;                  // characters per line
        int height = 2;                  // displayed lines
        double chars_per_second = 15.0;  // minimum reading rate
        Millis blank_ms = 20'000;        // quiet time before blanking

        void validate() const;

        // Minimum display time of a line of `chars` characters, rounded up to
        // whole milliseconds so the guarantee is never undercut.
        Millis reading_time_ms(std::size_t chars) const;
    };

    // One timestamped emission of the subtitle window.
    struct WindowSnapshot
    {
        Millis t = 0;
        bool reset = false;
        bool blanked = false;
        std::vector<std::string> lines;

        bool operator==(const WindowSnapshot&) const = default;
    };

    // Snapshot JSONL: {"t":..,"reset":..,"blanked":..,"lines":[..]} per line.
    std::vector<WindowSnapshot> parse_snapshots(std::string_view data);
    std::string serialize_snapshots(std::span<const WindowSnapshot> snapshots);

    // Position inside the buffer: segment index plus character (byte) offset
    // into that segment's normalized text. segment == size() is the end.
    struct BufferPos
    {
        std::size_t segment = 0;
        std::size_t offset = 0;

        bool operator==(const BufferPos&) const = default;
    };

    inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    // A wrapped line with the byte span it covers in the buffer text.
    struct WrappedLine
    {
        std::string text;
        std::size_t start_byte = 0;
        std::size_t end_byte = 0;
    };

    // Greedy word wrap of `text` (single-space separated tokens) into lines of
    // at most `width` code points; tokens longer than `width` are hard-split
    // every `width` code points. Produces at most `max_lines` lines. Byte
    // spans are reported relative to `base`.
    std::vector<WrappedLine> wrap_text(std::string_view text, std::size_t base,
                                       int width, std::size_t max_lines);

    // Ordered list of non-overlapping segments (stable prefix, unstable tail)
    // plus the presentation-window position. Text positions are byte offsets
    // into the normalized concatenation of the segment texts.
    class SegmentBuffer
    {
    public:
        struct Update
        {
            std::size_t inserted_index = 0;
            bool removed_any = false;
            // Update touches content at or before the current window end.
            bool forced = false;
            bool text_changed = false;
            std::size_t first_changed_byte = npos;
        };

        // Replaces every buffered segment whose interval intersects `seg`'s
        // and inserts `seg` in beg order. Throws ContractError (buffer
        // unchanged) on stable overwrites or stability-order breaches.
        Update apply_update(const Segment& seg);

        const std::vector<Segment>& segments() const noexcept { return segments_; }
        const std::string& text() const noexcept { return text_; }

        std::size_t segment_start(std::size_t index) const;
        std::size_t byte_at(const BufferPos& pos) const;
        BufferPos position_at(std::size_t byte) const;

        std::size_t window_start() const noexcept { return window_start_; }
        void set_window_start(std::size_t byte) { window_start_ = byte; }
        BufferPos window_start_pos() const { return position_at(window_start_); }

        // Byte end of the displayed content; npos while the window has spare
        // capacity (then every update is within the window).
        std::size_t display_end() const noexcept { return display_end_; }
        void set_display_end(std::size_t byte) { display_end_ = byte; }

    private:
        void rebuild();

        std::vector<Segment> segments_;
        std::vector<std::string> normalized_;
        std::vector<std::size_t> starts_;
        std::string text_;
        std::size_t window_start_ = 0;
        std::size_t display_end_ = npos;
    };

    // The regenerated line view: wrap of the buffer text from the window
    // start, at most height+1 lines; the first `height` are displayable and
    // the last one is the staging extra line.
    std::vector<std::string> render_window(const SegmentBuffer& buffer,
                                           const SubtitleConfig& config);
}
