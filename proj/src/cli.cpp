#include "subtitler/cli.hpp"

#include "subtitler/engine.hpp"
#include "subtitler/rating.hpp"

#include <sys/select.h>
#include <termios.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace subtitler
{
    namespace
    {
        std::string read_input(const std::string& path)
        {
            if (path == "-")
            {
                std::ostringstream buffer;
                buffer << std::cin.rdbuf();
                return buffer.str();
            }
            std::ifstream in(path, std::ios::binary);
            if (!in)
            {
                throw std::runtime_error("cannot open '" + path + "'");
            }
            std::ostringstream buffer;
            buffer << in.rdbuf();
            return buffer.str();
        }

        void write_output(const std::string& path, const std::string& data)
        {
            if (path == "-")
            {
                std::cout << data;
                std::cout.flush();
                return;
            }
            std::ofstream out(path, std::ios::binary);
            if (!out)
            {
                throw std::runtime_error("cannot write '" + path + "'");
            }
            out << data;
        }

        int fail(const std::exception& e)
        {
            std::cerr << "subtitler: " << e.what() << '\n';
            return 1;
        }

        std::string basename_of(const std::string& path)
        {
            const std::size_t slash = path.find_last_of('/');
            return slash == std::string::npos ? path : path.substr(slash + 1);
        }
    }

    int cmd_simulate(const SimulateArgs& args)
    {
        try
        {
            args.config.validate();
            const std::string data = read_input(args.input);
            const std::vector<Segment> segments = parse_segment_stream(data);
            const std::vector<WindowSnapshot> snapshots = run(segments, args.config);
            write_output(args.output, serialize_snapshots(snapshots));
            if (!args.event_log_out.empty())
            {
                write_output(args.event_log_out, serialize_event_log(event_log_from_stream(segments)));
            }
            return 0;
        }
        catch (const std::exception& e)
        {
            return fail(e);
        }
    }

    int cmd_eval(const EvalArgs& args)
    {
        try
        {
            const EventLog src = parse_event_log(read_input(args.source_log));
            const EventLog out = parse_event_log(read_input(args.output_log));
            std::vector<WindowSnapshot> snapshots;
            const bool with_snapshots = !args.snapshots.empty();
            if (with_snapshots)
            {
                snapshots = parse_snapshots(read_input(args.snapshots));
            }
            const EvalReport report =
                evaluate(src, out, with_snapshots ? &snapshots : nullptr, args.options);
            write_output(args.output,
                         args.json ? format_report_json(report) : format_report_text(report));
            return 0;
        }
        catch (const std::exception& e)
        {
            return fail(e);
        }
    }

    int cmd_cdf(const CdfArgs& args)
    {
        try
        {
            std::vector<EventLog> logs;
            logs.reserve(args.logs.size());
            for (const std::string& path : args.logs)
            {
                logs.push_back(parse_event_log(read_input(path)));
            }
            std::vector<std::string> names;
            std::vector<std::vector<CdfPoint>> rows;
            if (args.pool)
            {
                names.push_back("pooled");
                rows.push_back(erasure_cdf(logs, args.thresholds));
            }
            else
            {
                for (std::size_t i = 0; i < logs.size(); ++i)
                {
                    names.push_back(basename_of(args.logs[i]));
                    rows.push_back(erasure_cdf(std::span(&logs[i], 1), args.thresholds));
                }
            }
            write_output(args.output,
                         args.json ? format_cdf_json(names, rows) : format_cdf_table(names, rows));
            return 0;
        }
        catch (const std::exception& e)
        {
            return fail(e);
        }
    }

    namespace
    {
        class RawTerminal
        {
        public:
            RawTerminal()
            {
                if (tcgetattr(STDIN_FILENO, &saved_) == 0)
                {
                    termios raw = saved_;
                    raw.c_lflag &= ~static_cast<tcflag_t>(ICANON | ECHO);
                    raw.c_cc[VMIN] = 0;
                    raw.c_cc[VTIME] = 0;
                    active_ = tcsetattr(STDIN_FILENO, TCSANOW, &raw) == 0;
                }
            }
            ~RawTerminal()
            {
                if (active_)
                {
                    tcsetattr(STDIN_FILENO, TCSANOW, &saved_);
                }
            }
            RawTerminal(const RawTerminal&) = delete;

        private:
            termios saved_{};
            bool active_ = false;
        };

        // Waits up to `ms` for a key on stdin; returns it or -1.
        int poll_key(long ms)
        {
            fd_set fds;
            FD_ZERO(&fds);
            FD_SET(STDIN_FILENO, &fds);
            timeval tv{ms / 1000, static_cast<suseconds_t>((ms % 1000) * 1000)};
            if (select(STDIN_FILENO + 1, &fds, nullptr, nullptr, &tv) > 0)
            {
                unsigned char c = 0;
                if (read(STDIN_FILENO, &c, 1) == 1)
                {
                    return c;
                }
            }
            return -1;
        }

        void draw_snapshot(const WindowSnapshot& snap, std::size_t width)
        {
            std::string frame = "\x1b[2J\x1b[H";
            frame += '+';
            frame.append(width + 2, '-');
            frame += "+\n";
            for (const std::string& line : snap.lines)
            {
                frame += "| ";
                frame += line;
                frame.append(width - std::min(width, u8_length(line)), ' ');
                frame += " |\n";
            }
            frame += '+';
            frame.append(width + 2, '-');
            frame += "+\n";
            char status[96];
            std::snprintf(status, sizeof status, "t=%8.3f s%s%s  (0-4 rate, q quit)\n",
                          static_cast<double>(snap.t) / 1000.0, snap.reset ? "  [reset]" : "",
                          snap.blanked ? "  [blank]" : "");
            frame += status;
            std::fwrite(frame.data(), 1, frame.size(), stdout);
            std::fflush(stdout);
        }
    }

    int cmd_play(const PlayArgs& args)
    {
        try
        {
            if (!(args.speed > 0.0))
            {
                throw std::invalid_argument("--speed must be positive");
            }
            const std::vector<WindowSnapshot> snapshots = parse_snapshots(read_input(args.snapshots));
            if (snapshots.empty())
            {
                return 0;
            }
            const bool tty = isatty(STDIN_FILENO) == 1 && isatty(STDOUT_FILENO) == 1;
            if (args.rate && !tty)
            {
                throw std::runtime_error("--rate requires an interactive terminal");
            }

            std::size_t width = 1;
            for (const WindowSnapshot& snap : snapshots)
            {
                for (const std::string& line : snap.lines)
                {
                    width = std::max(width, u8_length(line));
                }
            }

            std::optional<RawTerminal> raw;
            if (tty)
            {
                raw.emplace();
            }

            using clock = std::chrono::steady_clock;
            const auto start = clock::now();
            const Millis t0 = snapshots.front().t;
            const Millis total = snapshots.back().t - t0;
            std::vector<RatingEvent> ratings;
            bool stopped = false;

            auto stream_now = [&] {
                const auto elapsed = std::chrono::duration<double, std::milli>(clock::now() - start);
                return std::clamp<Millis>(static_cast<Millis>(elapsed.count() * args.speed), 0, total);
            };

            for (const WindowSnapshot& snap : snapshots)
            {
                const auto target =
                    start + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double, std::milli>(
                                static_cast<double>(snap.t - t0) / args.speed));
                while (!stopped && clock::now() < target)
                {
                    if (!tty)
                    {
                        std::this_thread::sleep_until(target);
                        break;
                    }
                    const auto remaining =
                        std::chrono::duration_cast<std::chrono::milliseconds>(target - clock::now());
                    const int key = poll_key(std::clamp<long>(remaining.count(), 0, 50));
                    if (key == 'q' || key == 27)
                    {
                        stopped = true;
                    }
                    else if (args.rate && key >= '0' && key <= '4')
                    {
                        ratings.push_back(RatingEvent{stream_now(), key - '0'});
                    }
                }
                if (stopped)
                {
                    break;
                }
                draw_snapshot(snap, width);
            }

            raw.reset();
            if (!args.rating_log.empty())
            {
                write_output(args.rating_log, serialize_ratings(ratings));
            }
            if (args.rate)
            {
                const Millis rated_span = stopped ? stream_now() : total;
                std::fputs("\n", stdout);
                std::fputs(format_rating_summary(summarize_ratings(ratings, rated_span)).c_str(), stdout);
            }
            return 0;
        }
        catch (const std::exception& e)
        {
            return fail(e);
        }
    }
}
