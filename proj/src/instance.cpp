#include "hamdec/instance.hpp"

#include "hamdec/error.hpp"
#include "hamdec/gvns.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hamdec {

auto to_string(Family f) -> std::string
{
    switch (f) {
    case Family::Random: return "random";
    case Family::Pyramidal: return "pyramidal";
    case Family::Planted: return "planted";
    }
    return "?";
}

auto parse_family(std::string_view name) -> Family
{
    std::string lower;
    for (char c : name)
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "random")
        return Family::Random;
    if (lower == "pyramidal")
        return Family::Pyramidal;
    if (lower == "planted")
        return Family::Planted;
    throw Error(ErrorCode::InvalidParams, "unknown family '" + std::string(name) + "'");
}

auto splitmix64(std::uint64_t x) -> std::uint64_t
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

auto derive_seed(std::uint64_t base, Family family, bool directed, int n, int index) -> std::uint64_t
{
    auto h = splitmix64(base);
    h = splitmix64(h ^ static_cast<std::uint64_t>(family));
    h = splitmix64(h ^ static_cast<std::uint64_t>(directed));
    h = splitmix64(h ^ static_cast<std::uint64_t>(n));
    return splitmix64(h ^ static_cast<std::uint64_t>(index));
}

auto random_cycle(int n, bool directed, Rng & rng) -> HamiltonianCycle
{
    std::vector<VertexId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin() + 1, order.end(), rng);
    HamiltonianCycle c(std::move(order), directed);
    return directed ? c : c.canonical();
}

namespace {

    void check_size(int n, int minimum)
    {
        if (n < minimum)
            throw Error(ErrorCode::InvalidParams, "n must be at least " + std::to_string(minimum));
    }

} // namespace

auto gen_random_pair(int n, bool directed, std::uint64_t seed) -> std::pair<HamiltonianCycle, HamiltonianCycle>
{
    check_size(n, 3);
    if (n == 3 && ! directed)
        throw Error(ErrorCode::TooSmallForDistinct, "there is only one undirected tour on 3 vertices");
    Rng rng(seed);
    auto x = random_cycle(n, directed, rng);
    for (;;) {
        auto y = random_cycle(n, directed, rng);
        if (! y.same_edges(x))
            return {std::move(x), std::move(y)};
    }
}

auto pyramidal_tour(int n, bool directed, const std::vector<bool> & ascending) -> HamiltonianCycle
{
    check_size(n, 3);
    if (static_cast<int>(ascending.size()) != n - 2)
        throw Error(ErrorCode::InvalidParams, "leg assignment needs n - 2 entries");
    std::vector<VertexId> order{0};
    for (int c = 1; c < n - 1; ++c)
        if (ascending[static_cast<std::size_t>(c - 1)])
            order.push_back(c);
    order.push_back(n - 1);
    for (int c = n - 2; c >= 1; --c)
        if (! ascending[static_cast<std::size_t>(c - 1)])
            order.push_back(c);
    return HamiltonianCycle(std::move(order), directed);
}

auto is_pyramidal(const HamiltonianCycle & t) -> bool
{
    auto c = t.canonical();
    auto order = c.order();
    std::size_t i = 1;
    while (i < order.size() && order[i] > order[i - 1])
        ++i;
    if (order[i - 1] != t.size() - 1)
        return false;
    for (; i < order.size(); ++i)
        if (order[i] > order[i - 1])
            return false;
    return true;
}

auto gen_pyramidal_pair(int n, bool directed, std::uint64_t seed) -> std::pair<HamiltonianCycle, HamiltonianCycle>
{
    check_size(n, 4);
    Rng rng(seed);
    std::bernoulli_distribution coin(0.5);
    auto draw = [&] {
        std::vector<bool> legs(static_cast<std::size_t>(n - 2));
        for (std::size_t i = 0; i < legs.size(); ++i)
            legs[i] = coin(rng);
        return pyramidal_tour(n, directed, legs);
    };
    auto x = draw();
    for (;;) {
        auto y = draw();
        if (! y.same_edges(x))
            return {std::move(x), std::move(y)};
    }
}

auto gen_planted_pair(int n, bool directed, std::uint64_t seed, const PlantedOptions & options) -> Instance
{
    check_size(n, 4);
    if (n < (directed ? 6 : 5))
        throw Error(ErrorCode::TooSmallForDistinct, "no union of two tours on " + std::to_string(n)
                                                        + " vertices has a second decomposition");
    SolverParams params;
    params.iter_limit = options.solver_iterations;
    params.time_limit = options.solver_time_limit;
    for (int attempt = 0; attempt < options.attempts; ++attempt) {
        auto attempt_seed = splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(attempt));
        auto [z, w] = gen_random_pair(n, directed, attempt_seed);
        auto g = build_union(z, w);
        params.seed = splitmix64(attempt_seed);
        auto out = solve(g, ExcludedPair(z, w), Algorithm::GVNS, params);
        if (out.decomposed())
            return {std::move(*out.z), std::move(*out.w), std::pair{std::move(z), std::move(w)}};
    }
    throw Error(ErrorCode::RetryBudgetExhausted, "no planted instance for n = " + std::to_string(n) + " after "
                                                     + std::to_string(options.attempts)
                                                     + " attempts; try another seed");
}

auto generate(const InstanceSpec & spec) -> Instance
{
    switch (spec.family) {
    case Family::Random: {
        auto [x, y] = gen_random_pair(spec.n, spec.directed, spec.seed);
        return {std::move(x), std::move(y), std::nullopt};
    }
    case Family::Pyramidal: {
        auto [x, y] = gen_pyramidal_pair(spec.n, spec.directed, spec.seed);
        return {std::move(x), std::move(y), std::nullopt};
    }
    case Family::Planted: return gen_planted_pair(spec.n, spec.directed, spec.seed);
    }
    throw Error(ErrorCode::InvalidParams, "unknown family");
}

namespace {

    class LineParser {
      public:
        LineParser(std::string_view line, int line_no) :
            line_(line),
            line_no_(line_no)
        {}

        [[noreturn]] void fail(std::size_t col, const std::string & what) const
        {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_no_) + ", column " + std::to_string(col + 1) + ": " + what);
        }

        auto at_end() -> bool
        {
            skip_space();
            return pos_ >= line_.size();
        }

        auto column() const noexcept -> std::size_t { return pos_; }

        auto word() -> std::string_view
        {
            skip_space();
            auto start = pos_;
            while (pos_ < line_.size() && ! std::isspace(static_cast<unsigned char>(line_[pos_])))
                ++pos_;
            return line_.substr(start, pos_ - start);
        }

        auto number() -> int
        {
            skip_space();
            auto start = pos_;
            auto token = word();
            int value = 0;
            auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (token.empty() || ec != std::errc() || end != token.data() + token.size())
                fail(start, "expected an integer, got '" + std::string(token) + "'");
            return value;
        }

      private:
        void skip_space()
        {
            while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
                ++pos_;
        }

        std::string_view line_;
        int line_no_;
        std::size_t pos_ = 0;
    };

    auto parse_tour(LineParser & lp, int n, bool directed) -> HamiltonianCycle
    {
        std::vector<VertexId> order;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        while (! lp.at_end()) {
            auto col = lp.column();
            int v = lp.number();
            if (v < 1 || v > n)
                lp.fail(col, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
            if (seen[v - 1])
                lp.fail(col, "vertex " + std::to_string(v) + " repeated");
            seen[v - 1] = 1;
            order.push_back(v - 1);
        }
        if (static_cast<int>(order.size()) != n)
            lp.fail(lp.column(), "tour has " + std::to_string(order.size()) + " vertices, expected "
                                     + std::to_string(n));
        return HamiltonianCycle(std::move(order), directed);
    }

    auto tour_line(std::string_view label, const HamiltonianCycle & t) -> std::string
    {
        std::string s(label);
        s += ':';
        for (auto v : t.one_based())
            s += ' ' + std::to_string(v);
        s += '\n';
        return s;
    }

} // namespace

auto parse_instance(std::string_view text, std::optional<bool> expect_directed) -> Instance
{
    std::optional<bool> directed;
    int n = 0;
    std::optional<HamiltonianCycle> x, y, z, w;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(pos, end - pos);
        if (! line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        pos = end + 1;
        ++line_no;

        LineParser lp(line, line_no);
        if (lp.at_end())
            continue;
        auto col = lp.column();
        auto head = lp.word();
        if (head.starts_with('#')) {
            if (! directed)
                continue;
            auto label = head == "#" ? lp.word() : head.substr(1);
            if (label == "z:" || label == "w:") {
                auto & slot = label == "z:" ? z : w;
                slot = parse_tour(lp, n, *directed);
            }
            continue;
        }
        if (! directed) {
            if (head != "directed" && head != "undirected")
                lp.fail(col, "expected 'directed' or 'undirected'");
            directed = head == "directed";
            auto ncol = lp.column();
            n = lp.number();
            if (n < 3)
                lp.fail(ncol, "n must be at least 3");
            if (! lp.at_end())
                lp.fail(lp.column(), "unexpected text after header");
            if (expect_directed && *expect_directed != *directed)
                throw Error(ErrorCode::ModeMismatch, std::string("instance is ")
                                                         + (*directed ? "directed" : "undirected")
                                                         + " but the caller expected otherwise");
            continue;
        }
        if (head == "x:" && ! x)
            x = parse_tour(lp, n, *directed);
        else if (head == "y:" && ! y)
            y = parse_tour(lp, n, *directed);
        else
            lp.fail(col, "unexpected '" + std::string(head) + "'");
    }
    if (! directed)
        throw Error(ErrorCode::ParseError, "line 1, column 1: missing header");
    if (! x || ! y)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ", column 1: missing "
                                               + (x ? "y" : "x") + " tour");
    Instance inst{std::move(*x), std::move(*y), std::nullopt};
    if (z && w)
        inst.certificate = std::pair{std::move(*z), std::move(*w)};
    return inst;
}

auto format_instance(const Instance & inst) -> std::string
{
    std::string s = (inst.directed() ? "directed " : "undirected ") + std::to_string(inst.size()) + '\n';
    s += tour_line("x", inst.x);
    s += tour_line("y", inst.y);
    if (inst.certificate) {
        s += tour_line("# z", inst.certificate->first);
        s += tour_line("# w", inst.certificate->second);
    }
    return s;
}

auto read_instance(const std::filesystem::path & path, std::optional<bool> expect_directed) -> Instance
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str(), expect_directed);
}

void write_instance(const std::filesystem::path & path, const Instance & inst)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    out << format_instance(inst);
    if (! out)
        throw Error(ErrorCode::ParseError, "write failed for " + path.string());
}

} // namespace hamdec
