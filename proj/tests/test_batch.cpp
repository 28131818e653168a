#include "hamdec/batch.hpp"
#include "hamdec/instance.hpp"

#include <doctest.h>

using namespace hamdec;

TEST_SUITE("batch")
{
    TEST_CASE("parallel batch matches the serial reference")
    {
        std::vector<SolveJob> jobs;
        for (int i = 0; i < 12; ++i) {
            bool directed = i % 2;
            auto [x, y] = gen_random_pair(32, directed, static_cast<std::uint64_t>(i));
            auto algo = i % 3 == 0 ? Algorithm::SA : Algorithm::GVNS;
            auto params = SolverParams::defaults_for(algo);
            params.seed = static_cast<std::uint64_t>(i) * 7;
            params.iter_limit = 100;
            jobs.push_back({x, y, algo, params});
        }
        auto serial = solve_batch_serial(jobs);
        for (int threads : {1, 2, 4}) {
            auto parallel = solve_batch(jobs, threads);
            REQUIRE(parallel.size() == serial.size());
            for (std::size_t i = 0; i < jobs.size(); ++i) {
                REQUIRE(parallel[i].outcome);
                CHECK(parallel[i].outcome->status == serial[i].outcome->status);
                CHECK(parallel[i].outcome->z == serial[i].outcome->z);
                CHECK(parallel[i].outcome->stats.iterations == serial[i].outcome->stats.iterations);
            }
        }
    }

    TEST_CASE("a failing job reports its error")
    {
        auto [x, y] = gen_random_pair(10, false, 1);
        SolverParams bad;
        bad.alpha = 2.0;
        std::vector<SolveJob> jobs{{x, y, Algorithm::GVNS, bad}, {x, y, Algorithm::GVNS, {}}};
        auto results = solve_batch(jobs, 2);
        CHECK_FALSE(results[0].outcome);
        CHECK_FALSE(results[0].error.empty());
        CHECK(results[1].outcome);
        CHECK(results[1].error.empty());
    }
}
