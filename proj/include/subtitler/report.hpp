// Flat evaluation report: erasure statistics, erasure CDF, translation
// latency and (when snapshots are supplied) subtitling latency.
#pragma once

#include "subtitler/metrics.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace subtitler
{
    struct EvalOptions
    {
        LatencyMode mode = LatencyMode::Catchup;
        CatchupRounding rounding = CatchupRounding::RatioFloor;
        std::vector<std::int64_t> thresholds = {0, 70, 140, 210};
    };

    struct EvalReport
    {
        ErasureReport erasure;
        std::vector<CdfPoint> cdf;
        std::optional<LatencyReport> translation;
        std::optional<LatencyReport> subtitling;
        std::vector<std::string> warnings;
    };

    // Alignment/consistency failures downgrade to warnings and leave the
    // corresponding section empty; everything else is reported.
    EvalReport evaluate(const EventLog& src, const EventLog& out,
                        const std::vector<WindowSnapshot>* snapshots,
                        const EvalOptions& options);

    std::string format_report_text(const EvalReport& report);
    std::string format_report_json(const EvalReport& report);

    std::string format_cdf_table(std::span<const std::string> names,
                                 std::span<const std::vector<CdfPoint>> rows);
    std::string format_cdf_json(std::span<const std::string> names,
                                std::span<const std::vector<CdfPoint>> rows);
}
