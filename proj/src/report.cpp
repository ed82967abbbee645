#include "subtitler/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace subtitler
{
    namespace
    {
        const char* mode_name(LatencyMode mode)
        {
            switch (mode)
            {
            case LatencyMode::Baseline: return "baseline";
            case LatencyMode::Catchup: return "catchup";
            case LatencyMode::Identity: return "identity";
            }
            return "?";
        }

        nlohmann::ordered_json latency_json(const LatencyReport& report)
        {
            nlohmann::ordered_json j;
            j["mode"] = mode_name(report.mode);
            j["mean_seconds"] = report.mean_seconds;
            j["words"] = report.per_word.size();
            return j;
        }
    }

    EvalReport evaluate(const EventLog& src, const EventLog& out,
                        const std::vector<WindowSnapshot>* snapshots, const EvalOptions& options)
    {
        EvalReport report;
        report.erasure = erasure_report(out);
        try
        {
            report.cdf = erasure_cdf(std::span(&out, 1), options.thresholds);
        }
        catch (const EmptySampleError& e)
        {
            report.warnings.push_back(std::string("cdf: ") + e.what());
        }
        try
        {
            report.translation = translation_latency(src, out, options.mode, options.rounding);
            for (const auto& warning : report.translation->warnings)
            {
                report.warnings.push_back("translation latency: " + warning);
            }
        }
        catch (const std::exception& e)
        {
            report.warnings.push_back(std::string("translation latency: ") + e.what());
        }
        if (snapshots != nullptr)
        {
            try
            {
                report.subtitling = subtitling_latency(out, *snapshots);
                for (const auto& warning : report.subtitling->warnings)
                {
                    report.warnings.push_back("subtitling latency: " + warning);
                }
            }
            catch (const std::exception& e)
            {
                report.warnings.push_back(std::string("subtitling latency: ") + e.what());
            }
        }
        return report;
    }

    std::string format_report_text(const EvalReport& report)
    {
        std::ostringstream out;
        char buf[160];

        out << "measure                     value\n";
        std::snprintf(buf, sizeof buf, "AcE                      %8.2f\n", report.erasure.ace);
        out << buf;
        std::snprintf(buf, sizeof buf, "NE                       %8.2f\n", report.erasure.ne);
        out << buf;
        std::snprintf(buf, sizeof buf, "updates (T) / events (I) %5zu / %zu\n",
                      report.erasure.updates, report.erasure.events);
        out << buf;
        if (report.translation)
        {
            std::snprintf(buf, sizeof buf, "TL* (%s)%*s %8.3f s\n", mode_name(report.translation->mode),
                          static_cast<int>(15 - std::string(mode_name(report.translation->mode)).size()),
                          "", report.translation->mean_seconds);
            out << buf;
        }
        if (report.subtitling)
        {
            std::snprintf(buf, sizeof buf, "subtitling latency       %8.3f s\n",
                          report.subtitling->mean_seconds);
            out << buf;
        }

        if (!report.cdf.empty())
        {
            out << "\nerasure CDF (% of updates with cE <= x)\n";
            for (const CdfPoint& point : report.cdf)
            {
                std::snprintf(buf, sizeof buf, "x = %-6lld", static_cast<long long>(point.threshold));
                out << buf;
            }
            out << '\n';
            for (const CdfPoint& point : report.cdf)
            {
                std::snprintf(buf, sizeof buf, "%-10.2f", point.percent);
                out << buf;
            }
            out << '\n';
        }

        for (const std::string& warning : report.warnings)
        {
            out << "warning: " << warning << '\n';
        }
        return out.str();
    }

    std::string format_report_json(const EvalReport& report)
    {
        nlohmann::ordered_json j;
        j["ace"] = report.erasure.ace;
        j["ne"] = report.erasure.ne;
        j["updates"] = report.erasure.updates;
        j["events"] = report.erasure.events;
        j["cdf"] = nlohmann::ordered_json::array();
        for (const CdfPoint& point : report.cdf)
        {
            j["cdf"].push_back({{"x", point.threshold}, {"percent", point.percent}});
        }
        if (report.translation)
        {
            j["translation_latency"] = latency_json(*report.translation);
        }
        if (report.subtitling)
        {
            j["subtitling_latency"] = latency_json(*report.subtitling);
        }
        j["warnings"] = report.warnings;
        return j.dump(2) + "\n";
    }

    std::string format_cdf_table(std::span<const std::string> names,
                                 std::span<const std::vector<CdfPoint>> rows)
    {
        std::ostringstream out;
        char buf[64];
        std::size_t name_width = 3;
        for (const std::string& name : names)
        {
            name_width = std::max(name_width, name.size());
        }
        out << std::string(name_width, ' ');
        if (!rows.empty())
        {
            for (const CdfPoint& point : rows.front())
            {
                std::snprintf(buf, sizeof buf, "  x=%-8lld", static_cast<long long>(point.threshold));
                out << buf;
            }
        }
        out << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            out << names[i] << std::string(name_width - names[i].size(), ' ');
            for (const CdfPoint& point : rows[i])
            {
                std::snprintf(buf, sizeof buf, "  %-10.2f", point.percent);
                out << buf;
            }
            out << '\n';
        }
        return out.str();
    }

    std::string format_cdf_json(std::span<const std::string> names,
                                std::span<const std::vector<CdfPoint>> rows)
    {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            nlohmann::ordered_json row;
            row["log"] = names[i];
            row["points"] = nlohmann::ordered_json::array();
            for (const CdfPoint& point : rows[i])
            {
                row["points"].push_back({{"x", point.threshold}, {"percent", point.percent}});
            }
            j.push_back(std::move(row));
        }
        return j.dump(2) + "\n";
    }
}
