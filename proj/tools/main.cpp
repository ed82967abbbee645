// Command-line front end: simulate segment streams into subtitle windows,
// evaluate event logs, export erasure CDF tables, and play back snapshots.
#include "subtitler/cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <string>

int main(int argc, char** argv)
{
    CLI::App app{"subtitle presentation and latency evaluation for re-translating speech translation"};
    app.require_subcommand(1);

    subtitler::SimulateArgs simulate;
    double simulate_blank_s = 20.0;
    auto* sim = app.add_subcommand("simulate",
                                   "replay a segment TSV stream into a snapshot JSONL stream");
    sim->add_option("input", simulate.input, "segment TSV file ('-' for stdin)")->required();
    sim->add_option("-o,--out", simulate.output, "snapshot JSONL output ('-' for stdout)");
    sim->add_option("--log", simulate.event_log_out, "also write the SLT event log JSONL here");
    sim->add_option("--width", simulate.config.width, "window width in characters")
        ->capture_default_str();
    sim->add_option("--height", simulate.config.height, "window height in lines")
        ->capture_default_str();
    sim->add_option("--cps", simulate.config.chars_per_second, "reading rate, characters per second")
        ->capture_default_str();
    sim->add_option("--blank", simulate_blank_s, "blank the window after this many quiet seconds")
        ->capture_default_str();

    subtitler::EvalArgs eval;
    auto* ev = app.add_subcommand("eval", "evaluate erasure, latency and CDF over event logs");
    ev->add_option("--source", eval.source_log, "source (ASR) event log JSONL")->required();
    ev->add_option("--output", eval.output_log, "output (SLT) event log JSONL")->required();
    ev->add_option("--snapshots", eval.snapshots, "subtitle snapshot JSONL for subtitling latency");
    std::map<std::string, subtitler::LatencyMode> modes{
        {"baseline", subtitler::LatencyMode::Baseline},
        {"catchup", subtitler::LatencyMode::Catchup}};
    ev->add_option("--mode", eval.options.mode, "word correspondence for TL*")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->default_str("catchup");
    std::map<std::string, subtitler::CatchupRounding> roundings{
        {"ratio", subtitler::CatchupRounding::RatioFloor},
        {"product", subtitler::CatchupRounding::ProductFloor}};
    ev->add_option("--catchup-floor", eval.options.rounding,
                   "where the catch-up formula floors: the length ratio or the product")
        ->transform(CLI::CheckedTransformer(roundings, CLI::ignore_case))
        ->default_str("ratio");
    ev->add_option("--thresholds", eval.options.thresholds, "CDF thresholds")
        ->delimiter(',')
        ->capture_default_str();
    ev->add_flag("--json", eval.json, "machine-readable output");
    ev->add_option("-o,--out", eval.output, "report output ('-' for stdout)");

    subtitler::CdfArgs cdf;
    auto* cd = app.add_subcommand("cdf", "erasure CDF table over one or more event logs");
    cd->add_option("logs", cdf.logs, "event log JSONL files")->required()->expected(-1);
    cd->add_option("--thresholds", cdf.thresholds, "CDF thresholds")
        ->delimiter(',')
        ->capture_default_str();
    cd->add_flag("--pool", cdf.pool, "pool all logs into a single row");
    cd->add_flag("--json", cdf.json, "machine-readable output");
    cd->add_option("-o,--out", cdf.output, "output ('-' for stdout)");

    subtitler::PlayArgs play;
    auto* pl = app.add_subcommand("play", "play back a snapshot stream in the terminal");
    pl->add_option("snapshots", play.snapshots, "snapshot JSONL file")->required();
    pl->add_flag("--rate", play.rate, "capture 0-4 quality ratings while playing");
    pl->add_option("--speed", play.speed, "playback speed factor")->capture_default_str();
    pl->add_option("--rating-log", play.rating_log, "write captured ratings as TSV here");

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed())
    {
        simulate.config.blank_ms = static_cast<subtitler::Millis>(simulate_blank_s * 1000.0);
        return subtitler::cmd_simulate(simulate);
    }
    if (ev->parsed())
    {
        return subtitler::cmd_eval(eval);
    }
    if (cd->parsed())
    {
        return subtitler::cmd_cdf(cdf);
    }
    if (pl->parsed())
    {
        return subtitler::cmd_play(play);
    }
    return 1;
}
