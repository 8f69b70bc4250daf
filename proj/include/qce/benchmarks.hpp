#pragma once

#include "qce/core_metrics.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qce {

/// Ordered, name-unique collection of benchmarks on one shared scale.
/// Declaration order matters: it breaks ties in nearest_benchmark().
class BenchmarkSet
{
public:
    explicit BenchmarkSet(std::vector<Benchmark> benchmarks, FoundationScale scale = FoundationScale::standard());

    const FoundationScale& scale() const noexcept
    {
        return _scale;
    }

    std::span<const Benchmark> benchmarks() const noexcept
    {
        return _benchmarks;
    }

    std::size_t size() const noexcept
    {
        return _benchmarks.size();
    }

    const Benchmark& operator[](std::size_t index) const
    {
        return _benchmarks.at(index);
    }

    std::optional<std::size_t> index_of(std::string_view name) const noexcept;
    const Benchmark& at(std::string_view name) const;

    std::vector<std::string> names() const;

    /// Returns a new set with `extra` appended; names must stay unique.
    BenchmarkSet with(std::span<const Benchmark> extra) const;

    /// Short identity string, e.g. "capitalism,communism,scandinavian_socialism".
    std::string identity() const;

private:
    std::vector<Benchmark> _benchmarks;
    FoundationScale _scale;
};

/// capitalism (10,10,10), communism (0,0,0), scandinavian_socialism (7.83,7.26,5.28).
BenchmarkSet builtin_benchmarks();

/// Componentwise arithmetic mean of the given vectors, kept at full precision.
/// The result is independent of input order and stays inside the inputs' min/max envelope.
Benchmark derive_benchmark(std::string name, std::span<const FoundationVector> vectors);

/// Mean used by derive_benchmark and period averaging.
FoundationVector componentwise_mean(std::span<const FoundationVector> vectors);

}
