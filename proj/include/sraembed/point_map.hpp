#pragma once

#include "sraembed/metric_space.hpp"

#include <span>
#include <vector>

namespace sraembed {

/// A map from a subset of a space into R^dim. Rows are stored in domain order.
/// `scale` is the lower bi-Lipschitz factor s and `claimed_distortion` the
/// factor D such that s d <= |f(x) - f(y)| <= D s d is asserted for the map;
/// `verified` records whether that claim has been checked or proved.
class PointMap {
public:
    PointMap() = default;
    PointMap(Subset domain, std::size_t dim);
    PointMap(Subset domain, std::size_t dim, std::vector<double> values);

    const Subset& domain() const noexcept { return domain_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return domain_.size(); }

    /// Row of the i-th domain member.
    std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
    std::span<double> row(std::size_t i) { return {values_.data() + i * dim_, dim_}; }
    /// Throws InvalidArgument when `p` is outside the domain.
    std::span<const double> value(PointId p) const;
    std::size_t slot(PointId p) const;
    bool has(PointId p) const { return domain_.contains(p); }
    const std::vector<double>& values() const noexcept { return values_; }

    double scale = 1.0;
    double claimed_distortion = 1.0;
    bool verified = false;

private:
    Subset domain_;
    std::size_t dim_ = 0;
    std::vector<double> values_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);
double euclidean_norm(std::span<const double> a);

/// Concatenates two maps with equal domains: x -> (a(x), b(x)).
PointMap concatenate(const PointMap& a, const PointMap& b);

/// Multiplies every value by `factor`.
PointMap scaled(const PointMap& map, double factor);

} // namespace sraembed
