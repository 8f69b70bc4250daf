#include "qce/core_metrics.hpp"
#include "qce/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace qce {

FoundationScale::FoundationScale(std::vector<DimensionRange> ranges)
: _ranges(std::move(ranges))
{
    if (_ranges.empty()) {
        throw InvalidScale("A foundation scale needs at least one dimension");
    }

    for (std::size_t i = 0; i < _ranges.size(); ++i) {
        const auto& range = _ranges[i];
        if (!std::isfinite(range.min) || !std::isfinite(range.max) || !(range.min < range.max)) {
            throw InvalidScale("Dimension {} has an empty range [{}, {}]", i, range.min, range.max);
        }
    }
}

FoundationScale FoundationScale::standard()
{
    return FoundationScale({{0.0, 10.0}, {0.0, 10.0}, {0.0, 10.0}});
}

double FoundationScale::total_width() const noexcept
{
    double total = 0.0;
    for (const auto& range : _ranges) {
        total += range.width();
    }
    return total;
}

FoundationVector::FoundationVector(std::vector<double> scores)
: _scores(std::move(scores))
{
}

FoundationVector::FoundationVector(std::initializer_list<double> scores)
: _scores(scores)
{
}

void validate_on(const FoundationVector& vector, const FoundationScale& scale, std::string_view what)
{
    if (vector.dimensions() != scale.dimensions()) {
        throw DimensionMismatch("{} has {} dimensions but the scale has {}", what, vector.dimensions(), scale.dimensions());
    }

    for (std::size_t i = 0; i < vector.dimensions(); ++i) {
        if (!scale[i].contains(vector[i])) {
            throw RangeError("{} score {} in dimension {} is outside [{}, {}]", what, vector[i], i, scale[i].min, scale[i].max);
        }
    }
}

WeightVector::WeightVector(std::vector<double> weights)
: _weights(std::move(weights))
{
    if (_weights.empty()) {
        throw InvalidWeights("Weight vector is empty");
    }

    for (double w : _weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw InvalidWeights("Weights must be finite and nonnegative, got {}", w);
        }
    }

    if (!(sum() > 0.0)) {
        throw InvalidWeights("At least one weight must be strictly positive");
    }
}

WeightVector WeightVector::equal(std::size_t dimensions)
{
    return WeightVector(std::vector<double>(dimensions, 1.0));
}

double WeightVector::sum() const noexcept
{
    return std::accumulate(_weights.begin(), _weights.end(), 0.0);
}

bool WeightVector::is_uniform() const noexcept
{
    return std::adjacent_find(_weights.begin(), _weights.end(), std::not_equal_to<>()) == _weights.end();
}

SimilarityScore::SimilarityScore(double value)
: _value(value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        throw RangeError("Similarity {} is outside [0, 1]", value);
    }
}

std::string_view to_string(NormalizationMode mode)
{
    switch (mode) {
    case NormalizationMode::FixedRange:
        return "fixed-range";
    case NormalizationMode::BenchmarkRelative:
        return "benchmark-relative";
    }
    return "unknown";
}

std::optional<NormalizationMode> parse_normalization_mode(std::string_view text)
{
    if (text == "fixed-range") {
        return NormalizationMode::FixedRange;
    }
    if (text == "benchmark-relative") {
        return NormalizationMode::BenchmarkRelative;
    }
    return std::nullopt;
}

DimensionDistances l1_distance(const FoundationVector& x, const FoundationVector& y)
{
    if (x.dimensions() != y.dimensions()) {
        throw DimensionMismatch("Cannot measure distance between {}- and {}-dimensional vectors", x.dimensions(), y.dimensions());
    }

    DimensionDistances result;
    result.per_dimension.reserve(x.dimensions());
    for (std::size_t i = 0; i < x.dimensions(); ++i) {
        result.per_dimension.push_back(std::abs(x[i] - y[i]));
        result.aggregate += result.per_dimension.back();
    }
    return result;
}

static void check_inputs(const FoundationVector& x, const Benchmark& benchmark, const FoundationScale& scale, const WeightVector& weights)
{
    validate_on(x, scale, "country vector");
    validate_on(benchmark.position, scale, fmt::format("benchmark '{}'", benchmark.name));
    if (weights.dimensions() != scale.dimensions()) {
        throw DimensionMismatch("{} weights given for a {}-dimensional scale", weights.dimensions(), scale.dimensions());
    }
}

SimilarityScore similarity_fixed_range(const FoundationVector& x, const Benchmark& benchmark, const FoundationScale& scale, const WeightVector& weights)
{
    check_inputs(x, benchmark, scale, weights);

    auto distances = l1_distance(x, benchmark.position);
    if (weights.is_uniform()) {
        return SimilarityScore(1.0 - distances.aggregate / scale.total_width());
    }

    double weightedDistance = 0.0;
    double weightedRange    = 0.0;
    for (std::size_t i = 0; i < scale.dimensions(); ++i) {
        weightedDistance += weights[i] * distances.per_dimension[i];
        weightedRange += weights[i] * scale[i].width();
    }
    return SimilarityScore(1.0 - weightedDistance / weightedRange);
}

SimilarityScore similarity_benchmark_relative(const FoundationVector& x, const Benchmark& benchmark, const FoundationScale& scale, const WeightVector& weights)
{
    check_inputs(x, benchmark, scale, weights);

    auto distances = l1_distance(x, benchmark.position);

    const bool uniform = weights.is_uniform();
    double dissimilarity = 0.0;
    for (std::size_t i = 0; i < scale.dimensions(); ++i) {
        const double b       = benchmark.position[i];
        const double maxDist = std::max(b - scale[i].min, scale[i].max - b);
        if (!(maxDist > 0.0)) {
            throw DegenerateDimension("Benchmark '{}' leaves no attainable distance in dimension {}", benchmark.name, i);
        }

        const double ratio = distances.per_dimension[i] / maxDist;
        dissimilarity += uniform ? ratio : weights[i] * ratio;
    }

    dissimilarity /= uniform ? static_cast<double>(scale.dimensions()) : weights.sum();
    return SimilarityScore(1.0 - dissimilarity);
}

SimilarityScore similarity(NormalizationMode mode, const FoundationVector& x, const Benchmark& benchmark, const FoundationScale& scale, const WeightVector& weights)
{
    switch (mode) {
    case NormalizationMode::BenchmarkRelative:
        return similarity_benchmark_relative(x, benchmark, scale, weights);
    case NormalizationMode::FixedRange:
        break;
    }
    return similarity_fixed_range(x, benchmark, scale, weights);
}

Benchmark capitalism_benchmark()
{
    return {"capitalism", FoundationVector{10.0, 10.0, 10.0}, std::nullopt};
}

Benchmark communism_benchmark()
{
    return {"communism", FoundationVector{0.0, 0.0, 0.0}, std::nullopt};
}

Benchmark scandinavian_benchmark()
{
    // Nordic averages as published at two decimals.
    return {"scandinavian_socialism", FoundationVector{7.83, 7.26, 5.28}, std::nullopt};
}

SimilarityScore capsi(const FoundationVector& x)
{
    return similarity_fixed_range(x, capitalism_benchmark(), FoundationScale::standard(), WeightVector::equal(3));
}

SimilarityScore comsi(const FoundationVector& x)
{
    return similarity_fixed_range(x, communism_benchmark(), FoundationScale::standard(), WeightVector::equal(3));
}

SimilarityScore socsi(const FoundationVector& x, const Benchmark& benchmark)
{
    return similarity_fixed_range(x, benchmark, FoundationScale::standard(), WeightVector::equal(3));
}

std::string format_exact(double value)
{
    char buffer[64];
    auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string format_decimal(double value, int decimals)
{
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    decimals = std::max(decimals, 0);

    char buffer[512];
    auto result = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::fixed);
    std::string text(buffer, result.ptr);

    bool negative = false;
    if (!text.empty() && text.front() == '-') {
        negative = true;
        text.erase(0, 1);
    }

    auto dot             = text.find('.');
    std::string integral = text.substr(0, dot);
    std::string fraction = dot == std::string::npos ? std::string() : text.substr(dot + 1);

    bool roundUp = false;
    if (fraction.size() > static_cast<std::size_t>(decimals)) {
        roundUp = fraction[decimals] >= '5';
        fraction.resize(decimals);
    } else {
        fraction.append(decimals - fraction.size(), '0');
    }

    std::string digits = integral + fraction;
    if (roundUp) {
        int i = static_cast<int>(digits.size()) - 1;
        for (; i >= 0; --i) {
            if (digits[i] == '9') {
                digits[i] = '0';
            } else {
                ++digits[i];
                break;
            }
        }
        if (i < 0) {
            digits.insert(digits.begin(), '1');
        }
    }

    std::string out;
    if (negative && digits.find_first_not_of('0') != std::string::npos) {
        out.push_back('-');
    }
    out.append(digits, 0, digits.size() - decimals);
    if (decimals > 0) {
        out.push_back('.');
        out.append(digits, digits.size() - decimals, decimals);
    }
    return out;
}

double round_half_away(double value, int decimals)
{
    auto text     = format_decimal(value, decimals);
    double parsed = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), parsed);
    return parsed;
}

}
