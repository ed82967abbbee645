// Evaluation measures over event logs: character erasure statistics and their
// CDF, word finalization, the baseline and sentence-alignment catch-up word
// correspondences, translation latency, and subtitling latency.
//
// The heavy per-event/per-word loops are data-parallel and run under OpenMP
// when available; all accumulation is integral, so results are identical with
// any thread count.
#pragma once

#include "subtitler/sentences.hpp"
#include "subtitler/stream.hpp"
#include "subtitler/window.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace subtitler
{
    class AlignmentError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class ConsistencyError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class EmptySampleError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // cE: characters to delete from the tail of `prev` to reach `next`,
    // i.e. |c(prev)| - |LCP(c(next), c(prev))| in code points.
    std::int64_t char_erasure(const TokenSeq& prev, const TokenSeq& next);

    struct ErasureReport
    {
        std::vector<std::int64_t> per_event;  // cE(i) for i = 1..I
        std::int64_t total_erased = 0;
        std::size_t events = 0;               // I
        std::size_t updates = 0;              // T: events with o_i != o_{i-1}
        double ace = 0.0;                     // sum cE / T (0 when T == 0)
        double ne = 0.0;                      // sum cE / |c(o_I)|
    };

    ErasureReport erasure_report(const EventLog& log);

    struct CdfPoint
    {
        std::int64_t threshold = 0;
        double percent = 0.0;
    };

    // Percentage of translation updates across all logs whose erasure is
    // <= threshold, for each (ascending) threshold. Throws EmptySampleError
    // when there are no updates at all.
    std::vector<CdfPoint> erasure_cdf(std::span<const EventLog> logs,
                                      std::span<const std::int64_t> thresholds);

    // f(o, j): first event from which word j and its whole prefix stay equal
    // to the final output. 1-based in both arguments and result.
    std::size_t finalization_event(const EventLog& log, std::size_t word);

    // f(o, j) for every word of the final output.
    std::vector<std::size_t> finalization_events(const EventLog& log);

    // j* = floor((j / out_len) * src_len), clamped into [1, src_len].
    std::size_t baseline_correspondence(std::size_t word, std::size_t out_len,
                                        std::size_t src_len);

    enum class CatchupRounding
    {
        RatioFloor,    // x(j) * floor(L(s,k) / L(o,k)), as typeset
        ProductFloor,  // floor(x(j) * L(s,k) / L(o,k))
    };

    // j**: source words of the preceding sentences plus the scaled in-sentence
    // position, clamped into the word range of source sentence S(o, j).
    std::size_t catchup_correspondence(const SentenceIndex& out_index,
                                       const SentenceIndex& src_index,
                                       std::size_t word,
                                       CatchupRounding rounding = CatchupRounding::RatioFloor);

    enum class LatencyMode
    {
        Baseline,
        Catchup,
        Identity,  // subtitling latency: same-language word correspondence
    };

    struct LatencyReport
    {
        LatencyMode mode = LatencyMode::Catchup;
        // (word index in the final output, finalization-time difference).
        std::vector<std::pair<std::size_t, Millis>> per_word;
        std::int64_t total_ms = 0;
        double mean_seconds = 0.0;
        std::vector<std::string> warnings;
    };

    // TL*: per final-output word, the finalization time in `out` minus the
    // finalization time of the corresponding source word in `src`.
    LatencyReport translation_latency(const EventLog& src, const EventLog& out,
                                      LatencyMode mode,
                                      CatchupRounding rounding = CatchupRounding::RatioFloor);

    // Document-set mean: pooled per-word sums over pooled word counts.
    double pooled_mean_seconds(std::span<const LatencyReport> reports);

    // Reconstructs the displayed-text event log (scrolled-away content plus
    // the current window per snapshot, revised on resets) by anchoring each
    // window against the SLT output text. Throws ConsistencyError when the
    // snapshots cannot have come from `slt`.
    EventLog display_log_from_snapshots(const EventLog& slt,
                                        std::span<const WindowSnapshot> snapshots);

    // Finalization-time difference between the subtitled display and the SLT
    // stream under the identity word correspondence.
    LatencyReport subtitling_latency(const EventLog& slt,
                                     std::span<const WindowSnapshot> snapshots);
}
