#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qce {

/// Closed interval of admissible scores on one foundation.
struct DimensionRange
{
    double min = 0.0;
    double max = 10.0;

    double width() const noexcept
    {
        return max - min;
    }

    bool contains(double value) const noexcept
    {
        return value >= min && value <= max;
    }

    bool operator==(const DimensionRange&) const = default;
};

/// Per-dimension admissible ranges. The standard scale is three foundations
/// (market organization, private ownership, small government), each on [0, 10].
class FoundationScale
{
public:
    explicit FoundationScale(std::vector<DimensionRange> ranges);

    static FoundationScale standard();

    std::size_t dimensions() const noexcept
    {
        return _ranges.size();
    }

    const DimensionRange& operator[](std::size_t index) const
    {
        return _ranges.at(index);
    }

    std::span<const DimensionRange> ranges() const noexcept
    {
        return _ranges;
    }

    /// Sum of the range widths: the largest attainable L1 distance (30 on the standard scale).
    double total_width() const noexcept;

    bool operator==(const FoundationScale&) const = default;

private:
    std::vector<DimensionRange> _ranges;
};

inline constexpr std::size_t MarketOrganization = 0;
inline constexpr std::size_t PrivateOwnership   = 1;
inline constexpr std::size_t SmallGovernment    = 2;

/// A country's (or benchmark's) scores on the institutional foundations.
/// Range validity depends on a scale and is checked with validate_on().
class FoundationVector
{
public:
    FoundationVector() = default;
    explicit FoundationVector(std::vector<double> scores);
    FoundationVector(std::initializer_list<double> scores);

    std::size_t dimensions() const noexcept
    {
        return _scores.size();
    }

    double operator[](std::size_t index) const
    {
        return _scores.at(index);
    }

    std::span<const double> scores() const noexcept
    {
        return _scores;
    }

    bool operator==(const FoundationVector&) const = default;

private:
    std::vector<double> _scores;
};

/// Throws DimensionMismatch or RangeError when the vector does not live on the scale.
void validate_on(const FoundationVector& vector, const FoundationScale& scale, std::string_view what = "vector");

/// Nonnegative per-dimension weights with a strictly positive sum.
class WeightVector
{
public:
    explicit WeightVector(std::vector<double> weights);

    static WeightVector equal(std::size_t dimensions);

    std::size_t dimensions() const noexcept
    {
        return _weights.size();
    }

    double operator[](std::size_t index) const
    {
        return _weights.at(index);
    }

    std::span<const double> weights() const noexcept
    {
        return _weights;
    }

    double sum() const noexcept;

    /// True when every weight is identical, in which case the unweighted formulas apply verbatim.
    bool is_uniform() const noexcept;

    bool operator==(const WeightVector&) const = default;

private:
    std::vector<double> _weights;
};

class SimilarityScore
{
public:
    explicit SimilarityScore(double value);

    double value() const noexcept
    {
        return _value;
    }

    bool operator==(const SimilarityScore&) const = default;

private:
    double _value;
};

struct DimensionDistances
{
    std::vector<double> per_dimension;
    double aggregate = 0.0;
};

struct Benchmark
{
    std::string name;
    FoundationVector position;
    /// Overrides the run-wide weights when scoring against this benchmark.
    std::optional<WeightVector> weights;
};

enum class NormalizationMode {
    /// 1 - sum(w_i d_i) / sum(w_i range_i). Canonical; reproduces the published tables.
    FixedRange,
    /// 1 - sum(w_i d_i / maxd_i) / sum(w_i), with maxd_i the farthest attainable distance from the benchmark.
    BenchmarkRelative,
};

std::string_view to_string(NormalizationMode mode);
std::optional<NormalizationMode> parse_normalization_mode(std::string_view text);

DimensionDistances l1_distance(const FoundationVector& x, const FoundationVector& y);

SimilarityScore similarity_fixed_range(const FoundationVector& x, const Benchmark& benchmark, const FoundationScale& scale, const WeightVector& weights);

SimilarityScore similarity_benchmark_relative(const FoundationVector& x, const Benchmark& benchmark, const FoundationScale& scale, const WeightVector& weights);

SimilarityScore similarity(NormalizationMode mode, const FoundationVector& x, const Benchmark& benchmark, const FoundationScale& scale, const WeightVector& weights);

Benchmark capitalism_benchmark();
Benchmark communism_benchmark();
Benchmark scandinavian_benchmark();

/// Similarity to pure capitalism (10,10,10) on the standard scale.
SimilarityScore capsi(const FoundationVector& x);
/// Similarity to pure communism (0,0,0) on the standard scale.
SimilarityScore comsi(const FoundationVector& x);
/// Fixed-range similarity to an interior benchmark, by default the Nordic average.
SimilarityScore socsi(const FoundationVector& x, const Benchmark& benchmark = scandinavian_benchmark());

/// Presentation rounding: round half away from zero on the value's shortest
/// round-trip decimal representation, printed with exactly `decimals` digits.
std::string format_decimal(double value, int decimals);

/// Shortest decimal text that parses back to the same double.
std::string format_exact(double value);

/// Numeric value of format_decimal(value, decimals).
double round_half_away(double value, int decimals);

}
