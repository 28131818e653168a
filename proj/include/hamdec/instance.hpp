#pragma once

// Instance generators and the plain-text instance format.
//
//   undirected 6
//   x: 1 2 3 4 5 6
//   y: 1 4 6 2 3 5
//
// Vertices are 1-based. Lines starting with '#' are comments; a planted
// certificate is stored as "# z: ..." and "# w: ..." comment lines.

#include "hamdec/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hamdec {

enum class Family { Random, Pyramidal, Planted };

auto to_string(Family f) -> std::string;
/// Throws InvalidParams.
auto parse_family(std::string_view name) -> Family;

struct InstanceSpec {
    Family family = Family::Random;
    int n = 0;
    bool directed = false;
    std::uint64_t seed = 0;
};

struct Instance {
    HamiltonianCycle x;
    HamiltonianCycle y;
    /// Known distinct decomposition of x and y, if any.
    std::optional<std::pair<HamiltonianCycle, HamiltonianCycle>> certificate;

    auto directed() const noexcept -> bool { return x.directed(); }
    auto size() const noexcept -> int { return x.size(); }
};

auto splitmix64(std::uint64_t x) -> std::uint64_t;
/// Per-instance seed, independent of run order.
auto derive_seed(std::uint64_t base, Family family, bool directed, int n, int index) -> std::uint64_t;

/// Vertex 0 first, the rest uniformly shuffled; undirected tours are
/// returned in canonical orientation.
auto random_cycle(int n, bool directed, Rng & rng) -> HamiltonianCycle;

/// Throws TooSmallForDistinct for undirected n = 3.
auto gen_random_pair(int n, bool directed, std::uint64_t seed) -> std::pair<HamiltonianCycle, HamiltonianCycle>;

/// The tour 1, ascending cities, n, descending cities. ascending[i] tells
/// whether city i + 2 (1-based) is on the ascending leg; size n - 2.
auto pyramidal_tour(int n, bool directed, const std::vector<bool> & ascending) -> HamiltonianCycle;
auto is_pyramidal(const HamiltonianCycle & t) -> bool;
auto gen_pyramidal_pair(int n, bool directed, std::uint64_t seed) -> std::pair<HamiltonianCycle, HamiltonianCycle>;

struct PlantedOptions {
    int attempts = 256;
    int solver_iterations = 300;
    double solver_time_limit = 60.0;
};

/// Draws a random pair (z, w), searches the union of z and w for a different
/// decomposition (x, y) and returns x, y with certificate (z, w). Throws
/// TooSmallForDistinct for undirected n = 4 and directed n <= 5, where no
/// such pair exists, and RetryBudgetExhausted when no attempt succeeds.
auto gen_planted_pair(int n, bool directed, std::uint64_t seed, const PlantedOptions & options = {}) -> Instance;

auto generate(const InstanceSpec & spec) -> Instance;

/// Throws ParseError (with line and column) or, when the header mode
/// differs from `expect_directed`, ModeMismatch.
auto parse_instance(std::string_view text, std::optional<bool> expect_directed = std::nullopt) -> Instance;
auto format_instance(const Instance & inst) -> std::string;

auto read_instance(const std::filesystem::path & path, std::optional<bool> expect_directed = std::nullopt)
    -> Instance;
void write_instance(const std::filesystem::path & path, const Instance & inst);

} // namespace hamdec
