#ifndef DSDSC_GEOMETRY_HPP
#define DSDSC_GEOMETRY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dsdsc/random_stream.hpp"

namespace dsdsc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Circular cell of radius `radius_m` populated by a Poisson point process
/// of intensity `density_per_km2`.
struct CellSpec {
  double radius_m = 0.0;
  double density_per_km2 = 0.0;

  /// Expected user count Lambda = pi * (radius/1000)^2 * density.
  double expected_users() const;
  void validate() const;  // throws std::invalid_argument
};

/// One snapshot of active broadband users, conditioned on at least one.
struct UserField {
  std::vector<Point> points;

  std::size_t count() const { return points.size(); }
};

struct Circle {
  Point center;
  double radius = 0.0;

  bool contains(const Point& p, double tol_m = 1e-9) const;
};

/// Draws the user count Poisson-conditioned on K >= 1 (by rejection) and
/// places the users i.i.d. uniformly on the cell disk.
UserField sample_user_field(const CellSpec& cell, RandomStream& rng);

/// Exact minimum enclosing circle by the randomized incremental method over
/// support sets of at most three points. Deterministic: the internal
/// shuffle is seeded by a fixed constant. Throws on empty input.
Circle smallest_bounding_circle(std::span<const Point> points);

/// Per-trial geometry record, reconstructible from (key, index) so sweeps
/// can stream trials without storing them.
struct SnapshotGeometry {
  UserField field;
  Circle sbc;
};

SnapshotGeometry sample_snapshot(const CellSpec& cell, std::uint64_t key,
                                 std::uint64_t index);

/// `trials` draws of the normalized smallest-bounding-circle radius
/// kappa_SBC = radius_SBC / radius_cell. Consumes one value from `rng` as
/// the derivation key of the per-trial streams.
std::vector<double> kappa_sbc_samples(const CellSpec& cell, std::size_t trials,
                                      RandomStream& rng);

/// Horizontal distance between a point and the drone, normalized by the
/// cell radius; both must lie within the cell disk, so the result is in
/// [0, 2].
double normalized_distance(const Point& point, const Point& drone,
                           const CellSpec& cell);

}  // namespace dsdsc

#endif  // DSDSC_GEOMETRY_HPP
