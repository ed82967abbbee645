// Command implementations behind the CLI front end. Each returns a process
// exit code and reports failures on stderr.
#pragma once

#include "subtitler/report.hpp"
#include "subtitler/window.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace subtitler
{
    struct SimulateArgs
    {
        std::string input;          // segment TSV ("-" = stdin)
        std::string output = "-";   // snapshot JSONL ("-" = stdout)
        std::string event_log_out;  // optional: SLT event log JSONL
        SubtitleConfig config;
    };

    struct EvalArgs
    {
        std::string source_log;
        std::string output_log;
        std::string snapshots;  // optional
        EvalOptions options;
        bool json = false;
        std::string output = "-";
    };

    struct CdfArgs
    {
        std::vector<std::string> logs;  // each log becomes one pooled row
        std::vector<std::int64_t> thresholds = {0, 70, 140, 210};
        bool pool = false;              // pool all logs into a single row
        bool json = false;
        std::string output = "-";
    };

    struct PlayArgs
    {
        std::string snapshots;
        bool rate = false;
        double speed = 1.0;
        std::string rating_log;  // TSV output, only written when set
    };

    int cmd_simulate(const SimulateArgs& args);
    int cmd_eval(const EvalArgs& args);
    int cmd_cdf(const CdfArgs& args);
    int cmd_play(const PlayArgs& args);
}
