#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sraembed {

/// Index of a point inside its owning FiniteMetricSpace.
struct PointId {
    std::size_t value = 0;

    constexpr PointId() = default;
    constexpr explicit PointId(std::size_t v) : value(v) {}

    constexpr auto operator<=>(const PointId&) const = default;
};

/// Strictly increasing list of point ids. Validity against a particular space
/// is checked by the operations that consume it.
class Subset {
public:
    Subset() = default;

    /// Throws InvalidArgument unless `ids` is strictly increasing.
    static Subset from_ids(std::vector<PointId> ids);
    static Subset from_indices(std::span<const std::size_t> indices);
    /// Sorts and deduplicates.
    static Subset from_unsorted(std::vector<std::size_t> indices);
    static Subset all(std::size_t n);

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(PointId p) const;
    PointId operator[](std::size_t i) const { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }
    const std::vector<PointId>& ids() const noexcept { return members_; }
    std::vector<std::size_t> indices() const;

    bool operator==(const Subset&) const = default;

private:
    std::vector<PointId> members_;
};

enum class BallKind { Open, Closed };

/// Immutable finite metric space with a validated distance matrix.
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;

    std::size_t size() const noexcept { return n_; }
    double d(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }
    double d(PointId a, PointId b) const noexcept { return d(a.value, b.value); }
    std::span<const double> row(std::size_t i) const { return {dist_.data() + i * n_, n_}; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    std::optional<PointId> find_label(const std::string& label) const;

    double diameter() const noexcept;

    bool operator==(const FiniteMetricSpace&) const = default;

private:
    friend FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>&,
                                             std::optional<std::vector<std::string>>);
    friend FiniteMetricSpace restrict_to(const FiniteMetricSpace&, const Subset&);

    std::size_t n_ = 0;
    std::vector<double> dist_;
    std::vector<std::string> labels_;
};

/// Relative tolerance of the triangle-inequality check.
inline constexpr double kTriangleTolerance = 1e-12;

/// Validates a square matrix and builds a space. Default labels are "p0", "p1", ...
/// Throws Error with NotSquare, NonFinite, NonzeroDiagonal, NegativeDistance,
/// NotSymmetric, DuplicatePoint or TriangleViolation (witness (i, j, k) with
/// d(i,j) > d(i,k) + d(k,j)).
FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                  std::optional<std::vector<std::string>> labels = std::nullopt);

void check_point(const FiniteMetricSpace& space, PointId p);
void check_subset(const FiniteMetricSpace& space, const Subset& subset);

Subset ball(const FiniteMetricSpace& space, PointId center, double r,
            BallKind kind = BallKind::Open);

/// Greedy maximal r-separated subset of `candidates`, scanned in ascending id order.
Subset greedy_maximal_separated(const FiniteMetricSpace& space, const Subset& candidates,
                                double r);

/// Minimum over S of d(p, s); +inf when S is empty.
double distance_to_set(const FiniteMetricSpace& space, PointId p, const Subset& set);

/// Induced metric on a nonempty subset; labels are carried over.
FiniteMetricSpace restrict_to(const FiniteMetricSpace& space, const Subset& subset);

/// Certificate of a doubling-constant estimate. `lambda` balls of radius
/// radius/2 (closed, centered at `cover`) cover the closed ball B_radius(center),
/// and no cover with lambda-1 balls exists for that pair.
struct DoublingCertificate {
    std::size_t lambda = 1;
    PointId center{};
    double radius = 0.0;
    Subset cover;
};

/// Smallest lambda such that every closed ball B_R(x), R a pairwise distance,
/// is covered by lambda closed balls of radius R/2 centered in the space.
DoublingCertificate doubling_constant_estimate(const FiniteMetricSpace& space);

/// Exact minimum number of closed radius-r balls centered in the space that
/// cover `target`, with one optimal set of centers.
Subset minimum_ball_cover(const FiniteMetricSpace& space, const Subset& target, double r);

} // namespace sraembed
