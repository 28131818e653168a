// Times a batch of independent solver runs, serial against OpenMP.
//
//   bench_batch [jobs] [n] [threads]

#include "hamdec/batch.hpp"
#include "hamdec/instance.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

int main(int argc, char ** argv)
{
    const int count = argc > 1 ? std::atoi(argv[1]) : 16;
    const int n = argc > 2 ? std::atoi(argv[2]) : 128;
    const int threads = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();

    std::vector<hamdec::SolveJob> jobs;
    for (int i = 0; i < count; ++i) {
        auto [x, y] = hamdec::gen_random_pair(n, false, static_cast<std::uint64_t>(i));
        hamdec::SolverParams params;
        params.seed = static_cast<std::uint64_t>(i);
        jobs.push_back({x, y, hamdec::Algorithm::GVNS, params});
    }

    auto time = [&](auto && run) {
        auto start = std::chrono::steady_clock::now();
        auto results = run();
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        int solved = 0;
        for (const auto & r : results)
            solved += r.outcome && r.outcome->decomposed();
        return std::pair{s, solved};
    };

    auto [serial_s, serial_solved] = time([&] { return hamdec::solve_batch_serial(jobs); });
    auto [parallel_s, parallel_solved] = time([&] { return hamdec::solve_batch(jobs, threads); });

    std::printf("jobs=%d n=%d threads=%d\n", count, n, threads);
    std::printf("serial   %8.3f s  solved %d\n", serial_s, serial_solved);
    std::printf("parallel %8.3f s  solved %d  speedup %.2f\n", parallel_s, parallel_solved, serial_s / parallel_s);
    return serial_solved == parallel_solved ? 0 : 1;
}
