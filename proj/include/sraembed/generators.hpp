#pragma once

#include "sraembed/metric_space.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sraembed {

enum class Family { Line, SnowflakeLine, EuclideanCloud, GridL1 };

std::string to_string(Family family);
/// Throws InvalidSpec for unknown names.
Family family_from_string(const std::string& name);

/// Instance description. `n` is the point count for line, snowflake_line and
/// euclidean_cloud, and the side length for grid_l1 (n^dim points).
struct GenSpec {
    Family family = Family::Line;
    std::size_t n = 0;
    std::optional<double> exponent;
    std::optional<std::size_t> dim;
    std::uint64_t seed = 0;

    /// Throws InvalidSpec when family-specific fields are missing or out of range.
    void validate() const;
};

/// splitmix64 finalizer of `seed + (index + 1) * 0x9E3779B97F4A7C15`: a counter-based
/// stream, so value i is reproducible without generating values 0..i-1.
std::uint64_t mix64(std::uint64_t seed, std::uint64_t index);

/// Top 53 bits of mix64 mapped to [0, 1).
double unit_double(std::uint64_t seed, std::uint64_t index);

/// Coordinates (row-major, n x dim) of a euclidean_cloud instance.
std::vector<double> cloud_coordinates(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Euclidean distance matrix of row-major coordinates.
std::vector<std::vector<double>> euclidean_matrix(const std::vector<double>& coords, std::size_t dim);

FiniteMetricSpace generate(const GenSpec& spec);

} // namespace sraembed
