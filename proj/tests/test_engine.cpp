#include "subtitler/engine.hpp"

#include "subtitler/metrics.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <random>
#include <string>

using namespace subtitler;

namespace
{
    SubtitleConfig make_config(int width, int height, double cps = 15.0, Millis blank = 20'000)
    {
        SubtitleConfig config;
        config.width = width;
        config.height = height;
        config.chars_per_second = cps;
        config.blank_ms = blank;
        return config;
    }
}

TEST_CASE("a revision of scrolled-away content causes exactly one reset")
{
    const std::vector<Segment> segments = {{0, 0, 1500, Stability::Unstable, "Es war einmal"},
                                           {6000, 0, 1500, Stability::Unstable, "Er war einmal"}};
    const auto snapshots = run(segments, make_config(10, 1));
    REQUIRE(snapshots.size() == 5);
    CHECK(snapshots[0] == WindowSnapshot{0, false, false, {"Es war"}});
    CHECK(snapshots[1] == WindowSnapshot{400, false, false, {"einmal"}});
    // The revised sentence scrolled away already: the window moves back.
    CHECK(snapshots[2] == WindowSnapshot{6000, true, false, {"Er war"}});
    CHECK(snapshots[3] == WindowSnapshot{6400, false, false, {"einmal"}});
    CHECK(snapshots[4] == WindowSnapshot{26400, false, true, {""}});
}

TEST_CASE("the same revision on screen is an in-place update, not a reset")
{
    const std::vector<Segment> segments = {{0, 0, 1500, Stability::Unstable, "Es war einmal"},
                                           {200, 0, 1500, Stability::Unstable, "Er war einmal"}};
    const auto snapshots = run(segments, make_config(10, 1));
    REQUIRE(snapshots.size() == 4);
    CHECK(snapshots[0].lines == std::vector<std::string>{"Es war"});
    CHECK(snapshots[1] == WindowSnapshot{200, false, false, {"Er war"}});
    CHECK(snapshots[2].lines == std::vector<std::string>{"einmal"});
    for (const auto& snap : snapshots)
    {
        CHECK_FALSE(snap.reset);
    }
}

TEST_CASE("a short stable segment yields content plus one blank snapshot")
{
    const std::vector<Segment> segments = {{1000, 0, 2000, Stability::Stable, "Hallo"}};
    const auto snapshots = run(segments, make_config(70, 2));
    REQUIRE(snapshots.size() == 2);
    CHECK(snapshots[0] == WindowSnapshot{1000, false, false, {"Hallo"}});
    CHECK(snapshots[1] == WindowSnapshot{21000, false, true, {"", ""}});
}

TEST_CASE("a full line stays readable for its minimum reading time")
{
    const std::string full_line(70, 'a');
    const std::vector<Segment> segments = {{0, 0, 1000, Stability::Unstable, full_line + " next"}};
    const auto snapshots = run(segments, make_config(70, 1));
    REQUIRE(snapshots.size() == 3);
    CHECK(snapshots[0].lines == std::vector<std::string>{full_line});
    CHECK(snapshots[1].lines == std::vector<std::string>{"next"});
    // ceil(70 / 15 cps) = 4667 ms: not a millisecond earlier.
    CHECK(snapshots[1].t == 4667);
    CHECK(snapshots[2].blanked);
    CHECK(snapshots[2].t == 24667);
}

TEST_CASE("unchanged lines keep their row on in-place updates")
{
    const std::vector<Segment> segments = {{0, 0, 1000, Stability::Unstable, "alpha beta"},
                                           {100, 1000, 2000, Stability::Unstable, "gamma"},
                                           {200, 1000, 2000, Stability::Unstable, "delta"}};
    const auto snapshots = run(segments, make_config(10, 2));
    REQUIRE(snapshots.size() >= 3);
    CHECK(snapshots[0].lines == std::vector<std::string>{"alpha beta"});
    CHECK(snapshots[1].lines == std::vector<std::string>{"alpha beta", "gamma"});
    CHECK(snapshots[2].lines == std::vector<std::string>{"alpha beta", "delta"});
    CHECK_FALSE(snapshots[2].reset);
}

TEST_CASE("after blanking the window restarts at never-displayed content")
{
    const std::vector<Segment> segments = {{0, 0, 1000, Stability::Unstable, "hello world"},
                                           {30'000, 1000, 2000, Stability::Unstable, "more text"},
                                           {40'000, 0, 1000, Stability::Unstable, "hallo welt"}};
    const auto snapshots = run(segments, make_config(20, 2));
    REQUIRE(snapshots.size() == 5);
    CHECK(snapshots[0].lines == std::vector<std::string>{"hello world"});
    CHECK(snapshots[1] == WindowSnapshot{20'000, false, true, {"", ""}});
    // Fresh window: the consumed content is not re-shown.
    CHECK(snapshots[2] == WindowSnapshot{30'000, false, false, {"more text"}});
    // But a revision of consumed content still resets back to it.
    CHECK(snapshots[3] == WindowSnapshot{40'000, true, false, {"hallo welt more text"}});
    CHECK(snapshots[4] == WindowSnapshot{60'000, false, true, {"", ""}});
}

TEST_CASE("append-only single-line streams never reset")
{
    std::vector<Segment> segments;
    for (int i = 0; i < 5; ++i)
    {
        segments.push_back(
            {i * 300, i * 100, (i + 1) * 100, Stability::Stable, "w" + std::to_string(i)});
    }
    for (const auto& snap : run(segments, make_config(70, 2)))
    {
        CHECK_FALSE(snap.reset);
    }
}

TEST_CASE("the engine rejects time running backwards")
{
    Subtitler subtitler(make_config(20, 2));
    subtitler.push({100, 0, 1, Stability::Unstable, "a"}, 100);
    CHECK_THROWS_AS(subtitler.push({50, 1, 2, Stability::Unstable, "b"}, 50), ClockError);
}

TEST_CASE("virtual replay is deterministic")
{
    std::mt19937 rng(47);
    testgen::StreamOptions options;
    options.long_gaps = true;
    for (int round = 0; round < 10; ++round)
    {
        const auto segments = testgen::random_segment_stream(rng, options);
        const auto first = run(segments, make_config(20, 2));
        const auto second = run(segments, make_config(20, 2));
        CHECK(first == second);
    }
}

TEST_CASE("wall-clock replay matches the virtual replay")
{
    const std::vector<Segment> segments = {{0, 0, 500, Stability::Unstable, "ähm a b"},
                                           {40, 500, 900, Stability::Unstable, "c"}};
    const auto config = make_config(12, 1, 200.0, 300);
    Clock wall(Clock::Mode::Wall, 50.0);
    const auto paced = run(segments, config, wall);
    CHECK(paced == run(segments, config));
}

TEST_CASE("every snapshot respects the window geometry")
{
    std::mt19937 rng(53);
    testgen::StreamOptions options;
    options.oversize_words = true;
    options.long_gaps = true;
    for (int round = 0; round < 15; ++round)
    {
        const auto segments = testgen::random_segment_stream(rng, options);
        const auto config = make_config(10 + round % 16, 1 + round % 3);
        for (const auto& snap : run(segments, config))
        {
            CHECK(snap.lines.size() <= static_cast<std::size_t>(config.height));
            for (const auto& line : snap.lines)
            {
                CHECK(u8_length(line) <= static_cast<std::size_t>(config.width));
            }
        }
    }
}

TEST_CASE("scrolled lines were readable for their minimum reading time")
{
    std::mt19937 rng(59);
    for (int round = 0; round < 15; ++round)
    {
        const auto segments = testgen::random_segment_stream(rng);
        // Two and more lines make scrolls recognizable from snapshots alone.
        const auto config = make_config(14 + round % 10, 2 + round % 2);
        const auto snapshots = run(segments, config);

        std::vector<std::string> prev;
        std::string top;
        Millis top_since = 0;
        for (const auto& snap : snapshots)
        {
            if (snap.blanked)
            {
                prev.clear();
                top.clear();
                continue;
            }
            if (!snap.reset && prev.size() >= 2 && snap.lines.size() + 1 >= prev.size() &&
                std::equal(prev.begin() + 1, prev.end(), snap.lines.begin()))
            {
                // The previous top line scrolled away.
                CHECK(static_cast<double>(snap.t - top_since) >=
                      1000.0 * static_cast<double>(u8_length(prev.front())) / config.chars_per_second);
            }
            if (snap.lines.empty())
            {
                top.clear();
            }
            else if (snap.reset || snap.lines.front() != top)
            {
                top = snap.lines.front();
                top_since = snap.t;
            }
            prev = snap.lines;
        }
    }
}

TEST_CASE("the snapshot converter reconstructs the engine display log")
{
    std::mt19937 rng(61);
    for (int round = 0; round < 25; ++round)
    {
        testgen::StreamOptions options;
        options.long_gaps = round % 2 == 0;
        options.oversize_words = round % 3 == 0;
        const auto segments = testgen::random_segment_stream(rng, options);
        const auto config = make_config(10 + round % 14, 1 + round % 3, 15.0,
                                        round % 2 == 0 ? 20'000 : 5'000);
        const RunResult result = run_with_display_log(segments, config);
        const EventLog slt = event_log_from_stream(segments);
        const EventLog reconstructed = display_log_from_snapshots(slt, result.snapshots);
        REQUIRE(reconstructed == result.display_log);
    }
}
