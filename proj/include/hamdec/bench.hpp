#pragma once

// Benchmark suites: seeded instance corpora, per-run records, aggregated
// table rows and the paired McNemar comparison.
//
// Config grammar, one "key = value" per line, '#' starts a comment, lists are
// comma separated:
//
//   families   = random, pyramidal, planted
//   directed   = false, true
//   sizes      = 64, 128
//   algorithms = gvns, sa, vnd12, vnd21
//   runs       = 100
//   seed_base  = 1
//   time_limit = 500          # seconds per run
//   gvns_iters = 1000
//   sa_iters   = 5000
//   init_temp  = 1000
//   depth      = 10
//   k_walks    = 10
//   alpha      = 0.99
//   fix_queue  = auto         # or a number

#include "hamdec/gvns.hpp"
#include "hamdec/instance.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hamdec {

struct BenchConfig {
    std::vector<Family> families{Family::Random};
    std::vector<bool> directed{false};
    std::vector<int> sizes{64};
    std::vector<Algorithm> algorithms{Algorithm::GVNS};
    int runs = 100;
    std::uint64_t seed_base = 1;
    double time_limit = 500.0;
    int gvns_iters = 1000;
    int sa_iters = 5000;
    double init_temp = 1000.0;
    int depth = 10;
    int k_walks = 10;
    double alpha = 0.99;
    int fix_queue = 0;

    auto params_for(Algorithm a, std::uint64_t seed) const -> SolverParams;
};

/// Throws ConfigError naming the offending line.
auto parse_bench_config(std::string_view text) -> BenchConfig;
auto load_bench_config(const std::filesystem::path & path) -> BenchConfig;

struct RunRecord {
    Family family = Family::Random;
    bool directed = false;
    int n = 0;
    int index = 0;
    Algorithm algo = Algorithm::GVNS;
    std::uint64_t seed = 0;
    bool solved = false;
    StopReason reason = StopReason::None;
    double seconds = 0.0;
    int objective = 0;
    std::string error;
};

struct BenchRow {
    Family family = Family::Random;
    bool directed = false;
    /// Empty for the aggregate row over all sizes.
    std::optional<int> n;
    Algorithm algo = Algorithm::GVNS;
    int runs = 0;
    double solved_pct = 0.0;
    std::optional<double> mean_time_solved;
    std::optional<double> mean_time_unsolved;
};

struct SuiteResult {
    std::vector<RunRecord> records;
    std::vector<BenchRow> rows;
    bool interrupted = false;
};

/// Runs every algorithm on every instance of the corpus, `jobs` runs at a
/// time. Runs not started when `stop` becomes true are skipped.
auto run_suite(const BenchConfig & config, int jobs = 1, const std::atomic<bool> * stop = nullptr) -> SuiteResult;

/// Per-size rows followed by one aggregate row per family, mode and algorithm.
auto aggregate(const std::vector<RunRecord> & records) -> std::vector<BenchRow>;

auto format_rows_csv(const std::vector<BenchRow> & rows) -> std::string;
auto format_records_csv(const std::vector<RunRecord> & records) -> std::string;

struct PairedResults {
    std::vector<bool> a_solved;
    std::vector<bool> b_solved;
    /// a solved, b not.
    int b = 0;
    /// b solved, a not.
    int c = 0;
};

/// Pairs the runs of two algorithms on the same instances.
auto pair_results(const std::vector<RunRecord> & records, Algorithm a, Algorithm b) -> PairedResults;

/// (|b - c| - 1)^2 / (b + c). Throws NoDiscordantPairs when b + c = 0.
auto mcnemar_yates(int b, int c) -> double;

} // namespace hamdec
