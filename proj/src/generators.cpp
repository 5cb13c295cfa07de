#include "sraembed/generators.hpp"

#include "sraembed/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace sraembed {

namespace {

constexpr std::size_t kMaxPoints = 4096;

std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return labels;
}

} // namespace

std::string to_string(Family family) {
    switch (family) {
    case Family::Line: return "line";
    case Family::SnowflakeLine: return "snowflake_line";
    case Family::EuclideanCloud: return "euclidean_cloud";
    case Family::GridL1: return "grid_l1";
    }
    return "unknown";
}

Family family_from_string(const std::string& name) {
    if (name == "line") return Family::Line;
    if (name == "snowflake_line") return Family::SnowflakeLine;
    if (name == "euclidean_cloud") return Family::EuclideanCloud;
    if (name == "grid_l1") return Family::GridL1;
    throw Error(ErrorKind::InvalidSpec, "unknown family '" + name + "'");
}

void GenSpec::validate() const {
    if (n == 0) throw Error(ErrorKind::InvalidSpec, "n must be >= 1");
    switch (family) {
    case Family::Line:
        break;
    case Family::SnowflakeLine:
        if (!exponent || !(*exponent > 0.0 && *exponent < 1.0))
            throw Error(ErrorKind::InvalidSpec, "snowflake_line needs an exponent in (0,1)");
        break;
    case Family::EuclideanCloud:
    case Family::GridL1:
        if (!dim || *dim == 0) throw Error(ErrorKind::InvalidSpec, to_string(family) + " needs dim >= 1");
        break;
    }
    std::size_t total = n;
    if (family == Family::GridL1) {
        total = 1;
        for (std::size_t i = 0; i < *dim; ++i) {
            total *= n;
            if (total > kMaxPoints) break;
        }
    }
    if (total > kMaxPoints)
        throw Error(ErrorKind::InvalidSpec, "instance exceeds " + std::to_string(kMaxPoints) + " points");
}

std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(mix64(seed, index) >> 11) * 0x1.0p-53;
}

std::vector<double> cloud_coordinates(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::vector<double> coords(n * dim);
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = unit_double(seed, i);
    return coords;
}

std::vector<std::vector<double>> euclidean_matrix(const std::vector<double>& coords, std::size_t dim) {
    const std::size_t n = coords.size() / dim;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            double acc = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double diff = coords[a * dim + c] - coords[b * dim + c];
                acc += diff * diff;
            }
            m[a][b] = m[b][a] = std::sqrt(acc);
        }
    }
    return m;
}

FiniteMetricSpace generate(const GenSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n;
    std::vector<std::vector<double>> m;
    switch (spec.family) {
    case Family::Line:
    case Family::SnowflakeLine: {
        m.assign(n, std::vector<double>(n, 0.0));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                const double gap = std::fabs(static_cast<double>(a) - static_cast<double>(b));
                m[a][b] = spec.family == Family::Line || a == b ? gap : std::pow(gap, *spec.exponent);
            }
        }
        break;
    }
    case Family::EuclideanCloud:
        m = euclidean_matrix(cloud_coordinates(n, *spec.dim, spec.seed), *spec.dim);
        break;
    case Family::GridL1: {
        const std::size_t dim = *spec.dim;
        std::size_t total = 1;
        for (std::size_t i = 0; i < dim; ++i) total *= n;
        std::vector<std::size_t> coords(total * dim);
        for (std::size_t p = 0; p < total; ++p) {
            std::size_t rest = p;
            for (std::size_t c = dim; c-- > 0;) {
                coords[p * dim + c] = rest % n;
                rest /= n;
            }
        }
        m.assign(total, std::vector<double>(total, 0.0));
        for (std::size_t a = 0; a < total; ++a) {
            for (std::size_t b = 0; b < total; ++b) {
                double acc = 0.0;
                for (std::size_t c = 0; c < dim; ++c)
                    acc += std::fabs(static_cast<double>(coords[a * dim + c]) -
                                     static_cast<double>(coords[b * dim + c]));
                m[a][b] = acc;
            }
        }
        break;
    }
    }
    return validate_metric(m, index_labels(m.size()));
}

} // namespace sraembed
