#include "hamdec/batch.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hamdec {

namespace {

    auto run_one(const SolveJob & job) -> JobResult
    {
        JobResult r;
        try {
            r.outcome = solve(job.x, job.y, job.algo, job.params);
        }
        catch (const std::exception & e) {
            r.error = e.what();
        }
        return r;
    }

} // namespace

auto solve_batch(std::span<const SolveJob> jobs, int threads) -> std::vector<JobResult>
{
    std::vector<JobResult> results(jobs.size());
    const auto count = static_cast<long long>(jobs.size());
#ifdef _OPENMP
    if (threads <= 0)
        threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (long long i = 0; i < count; ++i)
        results[static_cast<std::size_t>(i)] = run_one(jobs[static_cast<std::size_t>(i)]);
    (void)threads;
    return results;
}

auto solve_batch_serial(std::span<const SolveJob> jobs) -> std::vector<JobResult>
{
    std::vector<JobResult> results;
    results.reserve(jobs.size());
    for (const auto & job : jobs)
        results.push_back(run_one(job));
    return results;
}

} // namespace hamdec
