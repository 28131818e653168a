#include "hamdec/bench.hpp"

#include "hamdec/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace hamdec {

auto BenchConfig::params_for(Algorithm a, std::uint64_t seed) const -> SolverParams
{
    auto p = SolverParams::defaults_for(a);
    p.iter_limit = a == Algorithm::SA ? sa_iters : gvns_iters;
    p.time_limit = time_limit;
    p.init_temp = init_temp;
    p.depth_limit = depth;
    p.k_walks = k_walks;
    p.alpha = alpha;
    p.fix_edges = fix_queue;
    p.seed = seed;
    return p;
}

namespace {

    auto trim(std::string_view s) -> std::string_view
    {
        auto first = s.find_first_not_of(" \t\r");
        if (first == std::string_view::npos)
            return {};
        auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    }

    auto split_list(std::string_view s) -> std::vector<std::string_view>
    {
        std::vector<std::string_view> items;
        while (! s.empty()) {
            auto comma = s.find(',');
            auto item = trim(s.substr(0, comma));
            if (! item.empty())
                items.push_back(item);
            if (comma == std::string_view::npos)
                break;
            s.remove_prefix(comma + 1);
        }
        return items;
    }

    template <typename T>
    auto parse_number(std::string_view s) -> std::optional<T>
    {
        T value{};
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || end != s.data() + s.size())
            return std::nullopt;
        return value;
    }

    auto parse_bool(std::string_view s) -> std::optional<bool>
    {
        if (s == "true" || s == "1" || s == "yes" || s == "directed")
            return true;
        if (s == "false" || s == "0" || s == "no" || s == "undirected")
            return false;
        return std::nullopt;
    }

} // namespace

auto parse_bench_config(std::string_view text) -> BenchConfig
{
    BenchConfig cfg;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        auto fail = [&](const std::string & what) {
            throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": " + what);
        };
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail("expected key = value");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        auto items = split_list(value);
        if (items.empty())
            fail("empty value for '" + std::string(key) + "'");

        auto number = [&]<typename T>(T & out) {
            auto v = parse_number<T>(value);
            if (! v)
                fail("bad number '" + std::string(value) + "' for '" + std::string(key) + "'");
            out = *v;
        };
        try {
            if (key == "families") {
                cfg.families.clear();
                for (auto item : items)
                    cfg.families.push_back(parse_family(item));
            }
            else if (key == "directed") {
                cfg.directed.clear();
                for (auto item : items) {
                    auto b = parse_bool(item);
                    if (! b)
                        fail("bad boolean '" + std::string(item) + "'");
                    cfg.directed.push_back(*b);
                }
            }
            else if (key == "sizes") {
                cfg.sizes.clear();
                for (auto item : items) {
                    auto n = parse_number<int>(item);
                    if (! n || *n < 3)
                        fail("bad size '" + std::string(item) + "'");
                    cfg.sizes.push_back(*n);
                }
            }
            else if (key == "algorithms") {
                cfg.algorithms.clear();
                for (auto item : items)
                    cfg.algorithms.push_back(parse_algorithm(item));
            }
            else if (key == "runs")
                number(cfg.runs);
            else if (key == "seed_base")
                number(cfg.seed_base);
            else if (key == "time_limit")
                number(cfg.time_limit);
            else if (key == "gvns_iters")
                number(cfg.gvns_iters);
            else if (key == "sa_iters")
                number(cfg.sa_iters);
            else if (key == "init_temp")
                number(cfg.init_temp);
            else if (key == "depth")
                number(cfg.depth);
            else if (key == "k_walks")
                number(cfg.k_walks);
            else if (key == "alpha")
                number(cfg.alpha);
            else if (key == "fix_queue") {
                if (value == "auto")
                    cfg.fix_queue = 0;
                else
                    number(cfg.fix_queue);
            }
            else
                fail("unknown key '" + std::string(key) + "'");
        }
        catch (const Error & e) {
            if (e.code() == ErrorCode::ConfigError)
                throw;
            fail(e.what());
        }
    }
    if (cfg.runs < 1)
        throw Error(ErrorCode::ConfigError, "runs must be at least 1");
    try {
        for (auto a : cfg.algorithms)
            cfg.params_for(a, 0).validate();
    }
    catch (const Error & e) {
        throw Error(ErrorCode::ConfigError, e.what());
    }
    return cfg;
}

auto load_bench_config(const std::filesystem::path & path) -> BenchConfig
{
    std::ifstream in(path);
    if (! in)
        throw Error(ErrorCode::ConfigError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_bench_config(buffer.str());
}

auto run_suite(const BenchConfig & config, int jobs, const std::atomic<bool> * stop) -> SuiteResult
{
    struct Task {
        Family family;
        bool directed;
        int n;
        int index;
    };
    std::vector<Task> tasks;
    for (auto family : config.families)
        for (bool directed : config.directed)
            for (int n : config.sizes)
                for (int i = 0; i < config.runs; ++i)
                    tasks.push_back({family, directed, n, i});

    const auto algos = config.algorithms.size();
    std::vector<RunRecord> slots(tasks.size() * algos);
    std::vector<char> done(tasks.size(), 0);
    const auto count = static_cast<long long>(tasks.size());

#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
    for (long long t = 0; t < count; ++t) {
        if (stop && stop->load())
            continue;
        const auto & task = tasks[static_cast<std::size_t>(t)];
        auto seed = derive_seed(config.seed_base, task.family, task.directed, task.n, task.index);
        std::optional<Instance> inst;
        std::string gen_error;
        try {
            inst = generate({task.family, task.n, task.directed, seed});
        }
        catch (const std::exception & e) {
            gen_error = e.what();
        }
        for (std::size_t a = 0; a < algos; ++a) {
            auto & r = slots[static_cast<std::size_t>(t) * algos + a];
            r.family = task.family;
            r.directed = task.directed;
            r.n = task.n;
            r.index = task.index;
            r.algo = config.algorithms[a];
            r.seed = seed;
            r.error = gen_error;
            if (! inst)
                continue;
            try {
                auto out = solve(inst->x, inst->y, r.algo, config.params_for(r.algo, splitmix64(seed)));
                r.solved = out.decomposed();
                r.reason = out.reason;
                r.seconds = out.stats.elapsed_seconds;
                r.objective = out.stats.final_objective;
            }
            catch (const std::exception & e) {
                r.error = e.what();
            }
        }
        done[static_cast<std::size_t>(t)] = 1;
    }

    SuiteResult result;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (! done[t]) {
            result.interrupted = true;
            continue;
        }
        for (std::size_t a = 0; a < algos; ++a)
            result.records.push_back(slots[t * algos + a]);
    }
    result.rows = aggregate(result.records);
    return result;
}

auto aggregate(const std::vector<RunRecord> & records) -> std::vector<BenchRow>
{
    struct Acc {
        int runs = 0;
        int solved = 0;
        double solved_time = 0;
        double unsolved_time = 0;
    };
    using Key = std::tuple<Family, bool, Algorithm, int>;
    std::map<Key, Acc> per_size;
    std::map<Key, Acc> overall;
    auto add = [](Acc & acc, const RunRecord & r) {
        ++acc.runs;
        if (r.solved) {
            ++acc.solved;
            acc.solved_time += r.seconds;
        }
        else {
            acc.unsolved_time += r.seconds;
        }
    };
    for (const auto & r : records) {
        add(per_size[{r.family, r.directed, r.algo, r.n}], r);
        add(overall[{r.family, r.directed, r.algo, -1}], r);
    }
    auto make_row = [](const Key & k, const Acc & acc) {
        BenchRow row;
        row.family = std::get<0>(k);
        row.directed = std::get<1>(k);
        row.algo = std::get<2>(k);
        if (std::get<3>(k) >= 0)
            row.n = std::get<3>(k);
        row.runs = acc.runs;
        row.solved_pct = 100.0 * acc.solved / acc.runs;
        if (acc.solved > 0)
            row.mean_time_solved = acc.solved_time / acc.solved;
        if (acc.runs > acc.solved)
            row.mean_time_unsolved = acc.unsolved_time / (acc.runs - acc.solved);
        return row;
    };
    std::vector<BenchRow> rows;
    for (const auto & [k, acc] : per_size)
        rows.push_back(make_row(k, acc));
    for (const auto & [k, acc] : overall)
        rows.push_back(make_row(k, acc));
    return rows;
}

namespace {

    auto fixed3(double v) -> std::string
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return buf;
    }

    auto fixed_opt(const std::optional<double> & v) -> std::string { return v ? fixed3(*v) : std::string(); }

    auto lower(std::string s) -> std::string
    {
        for (auto & c : s)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    }

    auto csv_quote(const std::string & s) -> std::string
    {
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"')
                q += '"';
            q += c == '\n' ? ' ' : c;
        }
        return q + '"';
    }

} // namespace

auto format_rows_csv(const std::vector<BenchRow> & rows) -> std::string
{
    std::string s = "family,directed,n,algo,runs,solved_pct,mean_time_solved_s,mean_time_unsolved_s\n";
    for (const auto & r : rows) {
        char pct[32];
        std::snprintf(pct, sizeof pct, "%.1f", r.solved_pct);
        s += to_string(r.family) + ',' + (r.directed ? "true" : "false") + ','
             + (r.n ? std::to_string(*r.n) : std::string("all")) + ',' + lower(to_string(r.algo)) + ','
             + std::to_string(r.runs) + ',' + pct + ',' + fixed_opt(r.mean_time_solved) + ','
             + fixed_opt(r.mean_time_unsolved) + '\n';
    }
    return s;
}

auto format_records_csv(const std::vector<RunRecord> & records) -> std::string
{
    std::string s = "family,directed,n,index,algo,seed,status,reason,time_s,objective,error\n";
    for (const auto & r : records)
        s += to_string(r.family) + ',' + (r.directed ? "true" : "false") + ',' + std::to_string(r.n) + ','
             + std::to_string(r.index) + ',' + lower(to_string(r.algo)) + ',' + std::to_string(r.seed) + ','
             + (r.solved ? "solved" : "unsolved") + ',' + to_string(r.reason) + ',' + fixed3(r.seconds) + ','
             + std::to_string(r.objective) + ',' + csv_quote(r.error) + '\n';
    return s;
}

auto pair_results(const std::vector<RunRecord> & records, Algorithm a, Algorithm b) -> PairedResults
{
    using Key = std::tuple<Family, bool, int, int>;
    std::map<Key, std::pair<std::optional<bool>, std::optional<bool>>> runs;
    for (const auto & r : records) {
        Key k{r.family, r.directed, r.n, r.index};
        if (r.algo == a)
            runs[k].first = r.solved;
        if (r.algo == b)
            runs[k].second = r.solved;
    }
    PairedResults p;
    for (const auto & [k, v] : runs) {
        if (! v.first || ! v.second)
            continue;
        p.a_solved.push_back(*v.first);
        p.b_solved.push_back(*v.second);
        if (*v.first && ! *v.second)
            ++p.b;
        if (*v.second && ! *v.first)
            ++p.c;
    }
    return p;
}

auto mcnemar_yates(int b, int c) -> double
{
    if (b < 0 || c < 0)
        throw Error(ErrorCode::InvalidParams, "discordant counts must be non-negative");
    if (b + c == 0)
        throw Error(ErrorCode::NoDiscordantPairs, "McNemar statistic needs at least one discordant pair");
    double d = std::abs(b - c) - 1.0;
    return d * d / (b + c);
}

} // namespace hamdec
