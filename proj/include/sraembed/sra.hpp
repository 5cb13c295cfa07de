#pragma once

#include "sraembed/metric_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sraembed {

/// SRA search parameters: 0 < alpha < 1, subset size k >= 2.
struct SraParams {
    double alpha = 0.5;
    std::size_t k = 3;

    /// Throws InvalidArgument when out of range.
    void validate() const;
};

/// d(x,y) <= max{d(x,z) + alpha d(z,y), alpha d(x,z) + d(z,y)}.
bool sra_triple_ok(const FiniteMetricSpace& space, PointId x, PointId z, PointId y, double alpha);

/// True iff every ordered triple of members satisfies the SRA(alpha) inequality.
/// Triples with a repeated point always satisfy it, so only distinct triples are tested.
bool subset_is_sra(const FiniteMetricSpace& space, const Subset& subset, double alpha);

/// Lexicographically first k-point subset satisfying the SRA(alpha) condition,
/// found by depth-first extension with pruning on the first violating triple.
std::optional<Subset> find_sra_subspace(const FiniteMetricSpace& space, const SraParams& params);

/// Smallest k >= 3 for which no k-point SRA(alpha) subset exists (n+1 if every
/// subset of every size up to n is SRA).
std::size_t sra_free_parameter(const FiniteMetricSpace& space, double alpha);

/// R(x): largest minimum pairwise distance over (k-1)-point SRA(alpha/2) subsets
/// containing x. Radius 0 and no witness when no such subset exists.
struct CriticalRadiusEntry {
    PointId point{};
    double radius = 0.0;
    std::optional<Subset> witness;
};

CriticalRadiusEntry critical_radius(const FiniteMetricSpace& space, PointId x,
                                    const SraParams& params);

/// Minimum pairwise distance inside a subset of size >= 2 (+inf otherwise).
double min_pairwise_distance(const FiniteMetricSpace& space, const Subset& subset);

/// Greedy maximal X' with d(x,y) > min{R(x),R(y)} for all distinct members.
struct CoreSubset {
    Subset members;
    std::vector<CriticalRadiusEntry> radii; // one entry per point, by id
    /// Pairs where d(x,y) == min{R(x),R(y)} decided an exclusion by exact tie.
    std::vector<std::string> warnings;
};

CoreSubset build_core_subset(const FiniteMetricSpace& space, const SraParams& params);

} // namespace sraembed
