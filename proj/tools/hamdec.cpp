// hamdec: decide non-adjacency of two tours on the TSP polytope by searching
// for a second Hamiltonian decomposition of their union.
//
//   hamdec solve --input inst.txt [--algo gvns] [--seed 7] ...
//   hamdec gen --family planted --n 64 --seed 1 --out inst.txt
//   hamdec oracle --input inst.txt
//   hamdec bench --config suite.cfg --out-csv table.csv --jobs 4
//
// solve exits 0 when a certificate was found (not adjacent), 1 when none was
// found (probably adjacent) and 2 on errors.

#include "hamdec/bench.hpp"
#include "hamdec/error.hpp"
#include "hamdec/gvns.hpp"
#include "hamdec/instance.hpp"
#include "hamdec/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

std::atomic<bool> interrupted{false};

extern "C" void on_sigint(int) { interrupted.store(true); }

auto tour_text(const hamdec::HamiltonianCycle & t) -> std::string
{
    std::string s;
    for (auto v : t.one_based())
        s += (s.empty() ? "" : " ") + std::to_string(v);
    return s;
}

struct SolveArgs {
    std::string input;
    std::string algo = "gvns";
    std::optional<double> time_limit;
    std::optional<int> iters;
    std::optional<double> init_temp;
    std::optional<int> depth;
    std::string fix_queue = "auto";
    std::optional<int> k_walks;
    std::optional<double> alpha;
    std::uint64_t seed = 0;
};

auto run_solve(const SolveArgs & a) -> int
{
    auto inst = hamdec::read_instance(a.input);
    auto algo = hamdec::parse_algorithm(a.algo);
    auto params = hamdec::SolverParams::defaults_for(algo);
    if (a.time_limit)
        params.time_limit = *a.time_limit;
    if (a.iters)
        params.iter_limit = *a.iters;
    if (a.init_temp)
        params.init_temp = *a.init_temp;
    if (a.depth)
        params.depth_limit = *a.depth;
    if (a.k_walks)
        params.k_walks = *a.k_walks;
    if (a.alpha)
        params.alpha = *a.alpha;
    if (a.fix_queue != "auto") {
        std::size_t used = 0;
        int q = 0;
        try {
            q = std::stoi(a.fix_queue, &used);
        }
        catch (const std::exception &) {
            used = 0;
        }
        if (used != a.fix_queue.size() || q < 1)
            throw hamdec::Error(hamdec::ErrorCode::InvalidParams, "--fix-queue takes a positive number or 'auto'");
        params.fix_edges = q;
    }
    params.seed = a.seed;

    auto out = hamdec::solve(inst.x, inst.y, algo, params);
    if (out.decomposed()) {
        std::cout << "status: not-adjacent\n";
        std::cout << "z: " << tour_text(*out.z) << '\n';
        std::cout << "w: " << tour_text(*out.w) << '\n';
    }
    else {
        std::cout << "status: probably-adjacent (" << hamdec::to_string(out.reason) << ")\n";
    }
    std::cout << "objective: " << out.stats.final_objective << '\n';
    std::cout << "iterations: " << out.stats.iterations << '\n';
    std::printf("elapsed_s: %.3f\n", out.stats.elapsed_seconds);
    return out.decomposed() ? 0 : 1;
}

auto run_gen(const std::string & family, int n, bool directed, std::uint64_t seed, const std::string & out) -> int
{
    auto inst = hamdec::generate({hamdec::parse_family(family), n, directed, seed});
    if (out.empty() || out == "-")
        std::cout << hamdec::format_instance(inst);
    else
        hamdec::write_instance(out, inst);
    return 0;
}

auto run_oracle(const std::string & input) -> int
{
    auto inst = hamdec::read_instance(input);
    auto g = hamdec::build_union(inst.x, inst.y);
    auto set = hamdec::enumerate_decompositions(g);
    bool distinct = hamdec::has_distinct_decomposition(g, inst.x, inst.y);
    std::cout << "decompositions: " << set.count() << '\n';
    std::cout << "ordered: " << set.ordered_count() << '\n';
    std::cout << "distinct: " << (distinct ? "true" : "false") << '\n';
    return 0;
}

auto run_bench(const std::string & config_path, const std::string & csv_path, const std::string & records_path,
               int jobs) -> int
{
    auto config = hamdec::load_bench_config(config_path);
    std::signal(SIGINT, on_sigint);
    auto result = hamdec::run_suite(config, jobs, &interrupted);
    auto csv = hamdec::format_rows_csv(result.rows);
    if (csv_path.empty() || csv_path == "-")
        std::cout << csv;
    else
        std::ofstream(csv_path) << csv;
    if (! records_path.empty())
        std::ofstream(records_path) << hamdec::format_records_csv(result.records);

    auto has = [&](hamdec::Algorithm a) {
        return std::find(config.algorithms.begin(), config.algorithms.end(), a) != config.algorithms.end();
    };
    if (has(hamdec::Algorithm::GVNS) && has(hamdec::Algorithm::SA)) {
        auto paired = hamdec::pair_results(result.records, hamdec::Algorithm::GVNS, hamdec::Algorithm::SA);
        std::cerr << "mcnemar gvns vs sa: b=" << paired.b << " c=" << paired.c;
        if (paired.b + paired.c > 0)
            std::cerr << " chi2=" << hamdec::mcnemar_yates(paired.b, paired.c);
        std::cerr << '\n';
    }
    if (result.interrupted) {
        std::cerr << "interrupted: partial results written\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Hamiltonian decomposition search for TSP polytope non-adjacency"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto * solve_cmd = app.add_subcommand("solve", "search for a certificate of non-adjacency");
    solve_cmd->add_option("--input", solve.input, "instance file")->required();
    solve_cmd->add_option("--algo", solve.algo, "gvns, sa, vnd12 or vnd21")->capture_default_str();
    solve_cmd->add_option("--time-limit", solve.time_limit, "seconds");
    solve_cmd->add_option("--iters", solve.iters, "shake iteration limit");
    solve_cmd->add_option("--init-temp", solve.init_temp, "initial temperature");
    solve_cmd->add_option("--depth", solve.depth, "N2 depth limit");
    solve_cmd->add_option("--fix-queue", solve.fix_queue, "fixed-edge queue size or 'auto'")->capture_default_str();
    solve_cmd->add_option("--k-walks", solve.k_walks, "random walks per start edge in undirected N1");
    solve_cmd->add_option("--alpha", solve.alpha, "cooling factor");
    solve_cmd->add_option("--seed", solve.seed, "random seed")->capture_default_str();

    std::string family = "random", gen_out;
    int gen_n = 0;
    bool gen_directed = false;
    std::uint64_t gen_seed = 0;
    auto * gen_cmd = app.add_subcommand("gen", "generate an instance");
    gen_cmd->add_option("--family", family, "random, pyramidal or planted")->capture_default_str();
    gen_cmd->add_option("--n", gen_n, "number of vertices")->required();
    gen_cmd->add_flag("--directed", gen_directed, "directed tours");
    gen_cmd->add_option("--seed", gen_seed, "random seed")->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "output file, stdout when omitted");

    std::string config_path, csv_path, records_path;
    int jobs = 1;
    auto * bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
    bench_cmd->add_option("--config", config_path, "suite configuration")->required();
    bench_cmd->add_option("--out-csv", csv_path, "table output, stdout when omitted");
    bench_cmd->add_option("--records", records_path, "per-run records output");
    bench_cmd->add_option("--jobs", jobs, "concurrent runs")->capture_default_str()->check(CLI::PositiveNumber);

    std::string oracle_input;
    auto * oracle_cmd = app.add_subcommand("oracle", "count decompositions exhaustively (n <= 16)");
    oracle_cmd->add_option("--input", oracle_input, "instance file")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*solve_cmd)
            return run_solve(solve);
        if (*gen_cmd)
            return run_gen(family, gen_n, gen_directed, gen_seed, gen_out);
        if (*bench_cmd)
            return run_bench(config_path, csv_path, records_path, jobs);
        if (*oracle_cmd)
            return run_oracle(oracle_input);
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
