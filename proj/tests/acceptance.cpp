// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Criteria can be selected by number: `acceptance 2 5`.

#include "hamdec/batch.hpp"
#include "hamdec/bench.hpp"
#include "hamdec/error.hpp"
#include "hamdec/gvns.hpp"
#include "hamdec/instance.hpp"
#include "hamdec/matching.hpp"
#include "hamdec/oracle.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace hamdec;
using namespace hamdec::testing;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

auto fmt(const char * f, auto... args) -> std::string
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Re-checks a reported certificate against the union multigraph without
// going through the solver.
auto certificate_holds(const HamiltonianCycle & x, const HamiltonianCycle & y, const SolveOutcome & out) -> bool
{
    if (! out.z || ! out.w)
        return false;
    try {
        auto g = build_union(x, y);
        auto p = pair_from_z(g, out.z->edges());
        return verify_decomposition(g, p, x, y) && p.w().as_cycle(g)->same_edges(*out.w)
               && verify_certificate(x, y, *out.z, *out.w);
    }
    catch (const Error &) {
        return false;
    }
}

auto params_for(Algorithm algo, std::uint64_t seed, double time_limit) -> SolverParams
{
    auto p = SolverParams::defaults_for(algo);
    p.seed = seed;
    p.time_limit = time_limit;
    return p;
}

auto median(std::vector<double> v) -> double
{
    std::sort(v.begin(), v.end());
    auto m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

// 1. Every Decomposed outcome over >= 10,000 runs verifies.
auto certificate_soundness() -> Verdict
{
    const std::array families{Family::Random, Family::Pyramidal, Family::Planted};
    const std::array algos{Algorithm::GVNS, Algorithm::SA, Algorithm::VND12, Algorithm::VND21};
    std::vector<SolveJob> jobs;
    int instances = 0, skipped = 0;
    for (int i = 0; jobs.size() < 10000; ++i) {
        auto family = families[static_cast<std::size_t>(i) % families.size()];
        bool directed = (i / 3) % 2;
        int n = 6 + (i * 7) % 35;
        auto seed = derive_seed(11, family, directed, n, i);
        std::optional<Instance> inst;
        try {
            inst = generate({family, n, directed, seed});
        }
        catch (const Error & e) {
            // Planting may run out of attempts; the next index re-seeds.
            if (e.code() != ErrorCode::RetryBudgetExhausted)
                throw;
            ++skipped;
            continue;
        }
        ++instances;
        for (auto algo : algos) {
            auto p = params_for(algo, splitmix64(seed), 30);
            p.iter_limit = algo == Algorithm::SA ? 400 : 100;
            jobs.push_back({inst->x, inst->y, algo, p});
        }
    }
    auto results = solve_batch(jobs);
    int decomposed = 0, bad = 0, errors = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (! results[i].outcome) {
            ++errors;
            continue;
        }
        if (results[i].outcome->decomposed()) {
            ++decomposed;
            bad += ! certificate_holds(jobs[i].x, jobs[i].y, *results[i].outcome);
        }
    }
    return {bad == 0 && errors == 0,
            fmt("%zu runs on %d instances (%d re-seeded), %d decomposed, %d failed checks, %d errors", jobs.size(),
                instances, skipped, decomposed, bad, errors)};
}

// 2. gvns never reports a decomposition the oracle rules out.
auto oracle_soundness() -> Verdict
{
    std::vector<std::pair<HamiltonianCycle, HamiltonianCycle>> pairs;
    // Every second tour against the identity: undirected n <= 7, directed n <= 6.
    for (bool directed : {false, true})
        for (int n = directed ? 3 : 4; n <= (directed ? 6 : 7); ++n) {
            std::vector<VertexId> id(static_cast<std::size_t>(n));
            std::iota(id.begin(), id.end(), 0);
            HamiltonianCycle x(id, directed);
            for (auto & y : all_hamiltonian_cycles(n, directed))
                if (! y.same_edges(x))
                    pairs.push_back({x, y});
        }
    const auto exhaustive = pairs.size();
    for (int i = 0; i < 1000; ++i) {
        bool directed = i % 2;
        int n = 5 + i % 8;
        pairs.push_back(gen_random_pair(n, directed, derive_seed(22, Family::Random, directed, n, i)));
    }
    std::vector<SolveJob> jobs;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        jobs.push_back({pairs[i].first, pairs[i].second, Algorithm::GVNS, params_for(Algorithm::GVNS, i, 60)});
    auto results = solve_batch(jobs);
    int unsound = 0, truly = 0, found = 0, errors = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto & [x, y] = pairs[i];
        bool exists = has_distinct_decomposition(build_union(x, y), x, y);
        truly += exists;
        if (! results[i].outcome) {
            ++errors;
            continue;
        }
        bool dec = results[i].outcome->decomposed();
        found += dec;
        unsound += dec && (! exists || ! certificate_holds(x, y, *results[i].outcome));
    }
    return {unsound == 0 && errors == 0,
            fmt("%zu instances (%zu exhaustive), %d with a distinct decomposition, %d found, %d unsound", pairs.size(),
                exhaustive, truly, found, unsound)};
}

// 3. Decomposition counts are even.
auto parity() -> Verdict
{
    int checked = 0, odd_ordered = 0, odd_unordered = 0, simple_undirected = 0;
    for (int i = 0; i < 1200; ++i) {
        bool directed = i % 3 == 0;
        int n = 5 + i % 8;
        auto [x, y] = gen_random_pair(n, directed, derive_seed(33, Family::Random, directed, n, i));
        auto g = build_union(x, y);
        auto set = enumerate_decompositions(g);
        ++checked;
        odd_ordered += set.ordered_count() % 2 != 0;
        // On a 4-regular graph without parallel edges the unordered count is
        // even as well.
        if (! directed && g.fixed_edges().empty()) {
            ++simple_undirected;
            odd_unordered += set.count() % 2 != 0;
        }
    }
    // Extra simple undirected unions, drawn by rejection.
    for (int i = 0; simple_undirected < 1000; ++i) {
        int n = 6 + i % 7;
        auto [x, y] = gen_random_pair(n, false, derive_seed(34, Family::Random, false, n, i));
        auto g = build_union(x, y);
        if (! g.fixed_edges().empty())
            continue;
        auto set = enumerate_decompositions(g);
        ++checked;
        ++simple_undirected;
        odd_ordered += set.ordered_count() % 2 != 0;
        odd_unordered += set.count() % 2 != 0;
    }
    return {checked >= 1000 && odd_ordered == 0 && odd_unordered == 0,
            fmt("%d multigraphs, %d odd ordered counts; %d simple undirected, %d odd unordered counts", checked,
                odd_ordered, simple_undirected, odd_unordered)};
}

// 4. Perfect matchings of the reduction graph and cycle covers correspond.
auto matching_bijection() -> Verdict
{
    int graphs = 0, mismatches = 0;
    long long matchings = 0, covers_total = 0;
    for (int i = 0; i < 120; ++i) {
        bool directed = i % 2;
        int n = 4 + i % 5;
        auto [x, y] = gen_random_pair(n, directed, derive_seed(44, Family::Random, directed, n, i));
        auto g = build_union(x, y);
        auto covers = all_cycle_covers(g);
        std::set<std::vector<EdgeId>> expected(covers.begin(), covers.end());
        std::map<std::vector<EdgeId>, long long> hits;
        std::vector<std::vector<int>> pms;
        std::function<CycleCover(const Matching &)> to_cover;
        Matching m;
        if (directed) {
            auto split = build_bipartite_split(g);
            pms = all_perfect_matchings(split);
            m.mate_edge.assign(static_cast<std::size_t>(2 * n), -1);
            to_cover = [&, split](const Matching & mm) { return cover_from_matching(g, split, mm); };
            for (auto & pm : pms) {
                std::fill(m.mate_edge.begin(), m.mate_edge.end(), -1);
                for (int e : pm) {
                    m.mate_edge[static_cast<std::size_t>(split.edges[static_cast<std::size_t>(e)].first)] = e;
                    m.mate_edge[static_cast<std::size_t>(n + split.edges[static_cast<std::size_t>(e)].second)] = e;
                }
                m.size = n;
                auto c = to_cover(m);
                ++hits[{c.edges().begin(), c.edges().end()}];
            }
        }
        else {
            auto gadget = build_gadget_graph(g);
            pms = all_perfect_matchings(gadget.graph);
            m.mate_edge.assign(static_cast<std::size_t>(gadget.graph.vertex_count()), -1);
            for (auto & pm : pms) {
                std::fill(m.mate_edge.begin(), m.mate_edge.end(), -1);
                for (int e : pm) {
                    auto [a, b] = gadget.graph.endpoints(e);
                    m.mate_edge[static_cast<std::size_t>(a)] = e;
                    m.mate_edge[static_cast<std::size_t>(b)] = e;
                }
                m.size = 3 * n;
                auto c = cover_from_matching(g, gadget, m);
                ++hits[{c.edges().begin(), c.edges().end()}];
            }
        }
        ++graphs;
        matchings += static_cast<long long>(pms.size());
        covers_total += static_cast<long long>(expected.size());
        // Each cover is reached, nothing else is, and every cover has the
        // same number of matchings: one per cover for the split, 2^n for the
        // gadgets (the inner pair of each gadget takes the two unused slots
        // in either order).
        const long long per_cover = directed ? 1 : (1LL << n);
        bool ok = hits.size() == expected.size();
        for (auto & [c, k] : hits)
            ok = ok && expected.count(c) && k == per_cover;
        ok = ok && static_cast<long long>(pms.size()) == per_cover * static_cast<long long>(expected.size());
        mismatches += ! ok;
    }
    return {mismatches == 0, fmt("%d multigraphs (n <= 8), %lld matchings, %lld covers, %d mismatches", graphs,
                                 matchings, covers_total, mismatches)};
}

struct SuiteStats {
    int runs = 0;
    int solved = 0;
    int verified_bad = 0;
    int errors = 0;
    double max_solved_s = 0;
    double mean_s = 0;
    std::vector<bool> solved_flags;
    std::vector<double> seconds;
};

auto run_all(std::vector<SolveJob> & jobs) -> SuiteStats
{
    auto results = solve_batch(jobs);
    SuiteStats s;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        ++s.runs;
        if (! results[i].outcome) {
            ++s.errors;
            s.solved_flags.push_back(false);
            s.seconds.push_back(0);
            continue;
        }
        const auto & out = *results[i].outcome;
        s.solved_flags.push_back(out.decomposed());
        s.seconds.push_back(out.stats.elapsed_seconds);
        s.mean_s += out.stats.elapsed_seconds;
        if (out.decomposed()) {
            ++s.solved;
            s.max_solved_s = std::max(s.max_solved_s, out.stats.elapsed_seconds);
            s.verified_bad += ! certificate_holds(jobs[i].x, jobs[i].y, out);
        }
    }
    s.mean_s /= std::max(1, s.runs);
    return s;
}

auto family_jobs(Family family, bool directed, int n, int count, Algorithm algo, double time_limit)
    -> std::vector<SolveJob>
{
    std::vector<SolveJob> jobs;
    for (int i = 0; i < count; ++i) {
        auto seed = derive_seed(55, family, directed, n, i);
        auto inst = generate({family, n, directed, seed});
        jobs.push_back({inst.x, inst.y, algo, params_for(algo, splitmix64(seed), time_limit)});
    }
    return jobs;
}

// 5. Random undirected instances are all solved, quickly.
auto random_undirected() -> Verdict
{
    auto small = family_jobs(Family::Random, false, 256, 100, Algorithm::GVNS, 5.0);
    auto a = run_all(small);
    auto large = family_jobs(Family::Random, false, 1024, 100, Algorithm::GVNS, 60.0);
    auto b = run_all(large);
    bool pass = a.solved == 100 && b.solved >= 99 && a.verified_bad + b.verified_bad == 0 && a.errors + b.errors == 0;
    return {pass, fmt("n=256: %d/100 solved, mean %.3f s, max %.3f s; n=1024: %d/100 solved, mean %.3f s, max %.3f s",
                      a.solved, a.mean_s, a.max_solved_s, b.solved, b.mean_s, b.max_solved_s)};
}

// 6. Planted instances are solved.
auto planted() -> Verdict
{
    std::string detail;
    bool pass = true;
    for (auto [n, directed, floor] : {std::tuple{256, false, 95}, std::tuple{512, false, 95}, std::tuple{256, true, 90}}) {
        auto jobs = family_jobs(Family::Planted, directed, n, 100, Algorithm::GVNS, 60.0);
        auto s = run_all(jobs);
        pass = pass && s.solved >= floor && s.verified_bad == 0 && s.errors == 0;
        detail += fmt("%s%s n=%d: %d/100 (floor %d), mean %.3f s", detail.empty() ? "" : "; ",
                      directed ? "directed" : "undirected", n, s.solved, floor, s.mean_s);
    }
    return {pass, detail};
}

// 7. Random directed instances are solved only sometimes.
auto random_directed() -> Verdict
{
    auto jobs = family_jobs(Family::Random, true, 256, 100, Algorithm::GVNS, 60.0);
    auto s = run_all(jobs);
    bool pass = s.solved >= 5 && s.solved <= 50 && s.verified_bad == 0 && s.errors == 0;
    return {pass, fmt("%d/100 solved (band 5..50), %d certificates failed", s.solved, s.verified_bad)};
}

// 8. GVNS dominates SA on a shared corpus.
auto dominance() -> Verdict
{
    const int corpus = 200;
    auto gv = family_jobs(Family::Random, true, 128, corpus, Algorithm::GVNS, 60.0);
    auto sa = family_jobs(Family::Random, true, 128, corpus, Algorithm::SA, 60.0);
    auto a = run_all(gv);
    auto b = run_all(sa);
    int only_gvns = 0, only_sa = 0;
    for (int i = 0; i < corpus; ++i) {
        only_gvns += a.solved_flags[static_cast<std::size_t>(i)] && ! b.solved_flags[static_cast<std::size_t>(i)];
        only_sa += b.solved_flags[static_cast<std::size_t>(i)] && ! a.solved_flags[static_cast<std::size_t>(i)];
    }
    // Bootstrap over instances: in each resample GVNS must solve at least as
    // many instances as SA.
    Rng rng(8);
    std::uniform_int_distribution<int> pick(0, corpus - 1);
    const int resamples = 1000;
    int dominated = 0;
    for (int r = 0; r < resamples; ++r) {
        int ga = 0, sb = 0;
        for (int k = 0; k < corpus; ++k) {
            auto i = static_cast<std::size_t>(pick(rng));
            ga += a.solved_flags[i];
            sb += b.solved_flags[i];
        }
        dominated += ga >= sb;
    }
    double frac = static_cast<double>(dominated) / resamples;
    double chi = mcnemar_yates(46, 0);
    bool pass = frac >= 0.95 && std::abs(chi - 44.022) <= 0.001 && a.verified_bad + b.verified_bad == 0
                && a.errors + b.errors == 0;
    std::string stat = only_gvns + only_sa > 0 ? fmt("%.3f", mcnemar_yates(only_gvns, only_sa)) : "n/a";
    return {pass, fmt("gvns %d, sa %d of %d; discordant %d/%d, chi2 %s; gvns >= sa in %.1f%% of resamples; "
                      "mcnemar(46,0) = %.4f",
                      a.solved, b.solved, corpus, only_gvns, only_sa, stat.c_str(), 100 * frac, chi)};
}

// 9. VND-12 is faster than VND-21.
auto vnd_order() -> Verdict
{
    auto n12 = family_jobs(Family::Random, false, 512, 20, Algorithm::VND12, 120.0);
    auto n21 = family_jobs(Family::Random, false, 512, 20, Algorithm::VND21, 120.0);
    auto a = run_all(n12);
    auto b = run_all(n21);
    double m12 = median(a.seconds), m21 = median(b.seconds);
    bool pass = m12 < m21 && a.verified_bad + b.verified_bad == 0 && a.errors + b.errors == 0;
    return {pass, fmt("median vnd12 %.3f s (%d solved), vnd21 %.3f s (%d solved), ratio %.1f", m12, a.solved, m21,
                      b.solved, m21 / std::max(m12, 1e-9))};
}

auto run_command(const std::string & cmd, int & status) -> std::string
{
    std::string out;
    FILE * pipe = ::popen(cmd.c_str(), "r");
    if (! pipe) {
        status = -1;
        return out;
    }
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe))
        out += buf;
    status = ::pclose(pipe);
    return out;
}

// Output without the timing line.
auto without_timing(const std::string & text) -> std::string
{
    std::istringstream in(text);
    std::string line, kept;
    while (std::getline(in, line))
        if (! line.starts_with("elapsed_s:"))
            kept += line + '\n';
    return kept;
}

// 10. Two processes, same inputs, same outcome.
auto determinism() -> Verdict
{
    auto dir = std::filesystem::temp_directory_path() / ("hamdec_accept_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string cli = HAMDEC_CLI_PATH;
    int cases = 0, diffs = 0, failures = 0, decomposed = 0;
    struct Case {
        Family family;
        int n;
        bool directed;
        const char * algo;
    };
    for (auto c : {Case{Family::Random, 128, false, "gvns"}, Case{Family::Random, 64, true, "gvns"},
                   Case{Family::Planted, 64, true, "gvns"}, Case{Family::Pyramidal, 64, false, "gvns"},
                   Case{Family::Random, 64, false, "sa"}, Case{Family::Random, 64, false, "vnd21"}}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto path = dir / fmt("%s_%d_%d_%llu.txt", to_string(c.family).c_str(), c.n, c.directed,
                                  static_cast<unsigned long long>(seed));
            write_instance(path, generate({c.family, c.n, c.directed, seed}));
            auto cmd = cli + " solve --input " + path.string() + " --algo " + c.algo + " --seed "
                       + std::to_string(seed * 17) + " --iters 300 2>&1";
            int s1 = 0, s2 = 0;
            auto o1 = without_timing(run_command(cmd, s1));
            auto o2 = without_timing(run_command(cmd, s2));
            ++cases;
            diffs += o1 != o2 || s1 != s2;
            failures += WEXITSTATUS(s1) > 1;
            decomposed += WEXITSTATUS(s1) == 0;
        }
    }
    std::filesystem::remove_all(dir);
    return {diffs == 0 && failures == 0,
            fmt("%d cases run twice, %d decomposed, %d diffs, %d errors", cases, decomposed, diffs, failures)};
}

} // namespace

int main(int argc, char ** argv)
{
    const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria{
        {"certificate soundness", certificate_soundness},
        {"oracle soundness", oracle_soundness},
        {"decomposition parity", parity},
        {"matching and cover correspondence", matching_bijection},
        {"random undirected scaling", random_undirected},
        {"planted completeness", planted},
        {"random directed behaviour", random_directed},
        {"gvns dominates sa", dominance},
        {"vnd ordering", vnd_order},
        {"determinism across processes", determinism},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::atoi(argv[i]));

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int number = static_cast<int>(i) + 1;
        if (! selected.empty() && ! selected.count(number))
            continue;
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        }
        catch (const std::exception & e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += ! v.pass;
        std::printf("criterion %2d %s: %s - %s [%.1f s]\n", number, criteria[i].first, v.pass ? "PASS" : "FAIL",
                    v.detail.c_str(), s);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
