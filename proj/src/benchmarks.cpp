#include "qce/benchmarks.hpp"
#include "qce/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qce {

BenchmarkSet::BenchmarkSet(std::vector<Benchmark> benchmarks, FoundationScale scale)
: _benchmarks(std::move(benchmarks))
, _scale(std::move(scale))
{
    std::set<std::string, std::less<>> seen;
    for (const auto& benchmark : _benchmarks) {
        if (benchmark.name.empty()) {
            throw InvalidBenchmark("Benchmark names must be nonempty");
        }
        if (!seen.insert(benchmark.name).second) {
            throw InvalidBenchmark("Duplicate benchmark name '{}'", benchmark.name);
        }

        validate_on(benchmark.position, _scale, fmt::format("benchmark '{}'", benchmark.name));
        if (benchmark.weights && benchmark.weights->dimensions() != _scale.dimensions()) {
            throw InvalidBenchmark("Benchmark '{}' has {} weights for a {}-dimensional scale", benchmark.name, benchmark.weights->dimensions(), _scale.dimensions());
        }
    }
}

std::optional<std::size_t> BenchmarkSet::index_of(std::string_view name) const noexcept
{
    auto iter = std::find_if(_benchmarks.begin(), _benchmarks.end(), [name](const Benchmark& b) { return b.name == name; });
    if (iter == _benchmarks.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(iter - _benchmarks.begin());
}

const Benchmark& BenchmarkSet::at(std::string_view name) const
{
    if (auto index = index_of(name)) {
        return _benchmarks[*index];
    }
    throw UnknownBenchmark("Unknown benchmark '{}' (known: {})", name, identity());
}

std::vector<std::string> BenchmarkSet::names() const
{
    std::vector<std::string> result;
    result.reserve(_benchmarks.size());
    for (const auto& benchmark : _benchmarks) {
        result.push_back(benchmark.name);
    }
    return result;
}

BenchmarkSet BenchmarkSet::with(std::span<const Benchmark> extra) const
{
    auto combined = _benchmarks;
    combined.insert(combined.end(), extra.begin(), extra.end());
    return BenchmarkSet(std::move(combined), _scale);
}

std::string BenchmarkSet::identity() const
{
    return fmt::format("{}", fmt::join(names(), ","));
}

BenchmarkSet builtin_benchmarks()
{
    return BenchmarkSet({capitalism_benchmark(), communism_benchmark(), scandinavian_benchmark()});
}

FoundationVector componentwise_mean(std::span<const FoundationVector> vectors)
{
    if (vectors.empty()) {
        throw EmptyClusterError("Cannot average an empty collection of vectors");
    }

    const auto dimensions = vectors.front().dimensions();
    for (const auto& v : vectors) {
        if (v.dimensions() != dimensions) {
            throw DimensionMismatch("Cannot average {}- and {}-dimensional vectors together", dimensions, v.dimensions());
        }
    }

    std::vector<double> means(dimensions);
    std::vector<double> column(vectors.size());
    for (std::size_t d = 0; d < dimensions; ++d) {
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            column[i] = vectors[i][d];
        }

        // Sorted, compensated summation: the sum depends only on the multiset of values.
        std::sort(column.begin(), column.end());
        double sum          = 0.0;
        double compensation = 0.0;
        for (double value : column) {
            const double t = sum + value;
            if (std::abs(sum) >= std::abs(value)) {
                compensation += (sum - t) + value;
            } else {
                compensation += (value - t) + sum;
            }
            sum = t;
        }

        // Divide the double-double (hi, lo) by n, correcting the quotient with its fma residual.
        const double n  = static_cast<double>(column.size());
        const double hi = sum + compensation;
        const double lo = compensation - (hi - sum);
        double mean     = hi / n;
        mean += (std::fma(-mean, n, hi) + lo) / n;
        means[d] = std::clamp(mean, column.front(), column.back());
    }

    return FoundationVector(std::move(means));
}

Benchmark derive_benchmark(std::string name, std::span<const FoundationVector> vectors)
{
    if (vectors.empty()) {
        throw EmptyClusterError("Cannot derive benchmark '{}' from an empty collection", name);
    }
    return {std::move(name), componentwise_mean(vectors), std::nullopt};
}

}
