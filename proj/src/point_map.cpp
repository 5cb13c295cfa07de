#include "sraembed/point_map.hpp"

#include "sraembed/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sraembed {

PointMap::PointMap(Subset domain, std::size_t dim)
    : domain_(std::move(domain)), dim_(dim), values_(domain_.size() * dim, 0.0) {}

PointMap::PointMap(Subset domain, std::size_t dim, std::vector<double> values)
    : domain_(std::move(domain)), dim_(dim), values_(std::move(values)) {
    if (values_.size() != domain_.size() * dim_)
        throw Error(ErrorKind::InvalidArgument, "value count does not match domain size x dim");
}

std::size_t PointMap::slot(PointId p) const {
    const auto& ids = domain_.ids();
    const auto it = std::lower_bound(ids.begin(), ids.end(), p);
    if (it == ids.end() || *it != p)
        throw Error(ErrorKind::InvalidArgument,
                    "point " + std::to_string(p.value) + " is not in the map domain", {p.value});
    return static_cast<std::size_t>(it - ids.begin());
}

std::span<const double> PointMap::value(PointId p) const { return row(slot(p)); }

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

double euclidean_norm(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return std::sqrt(acc);
}

PointMap concatenate(const PointMap& a, const PointMap& b) {
    if (!(a.domain() == b.domain()))
        throw Error(ErrorKind::InvalidArgument, "concatenated maps need equal domains");
    PointMap out(a.domain(), a.dim() + b.dim());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto dst = out.row(i);
        std::copy(a.row(i).begin(), a.row(i).end(), dst.begin());
        std::copy(b.row(i).begin(), b.row(i).end(), dst.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    }
    return out;
}

PointMap scaled(const PointMap& map, double factor) {
    std::vector<double> values = map.values();
    for (double& v : values) v *= factor;
    PointMap out(map.domain(), map.dim(), std::move(values));
    out.scale = map.scale * factor;
    out.claimed_distortion = map.claimed_distortion;
    out.verified = map.verified;
    return out;
}

} // namespace sraembed
