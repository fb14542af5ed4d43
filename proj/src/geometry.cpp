#include "dsdsc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsdsc/numeric.hpp"

namespace dsdsc {

namespace {

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Containment with a small relative slack so floating-point noise on the
// boundary does not force needless support recomputation.
bool in_circle(const Circle& c, const Point& p) {
  const double r2 = c.radius * c.radius;
  return dist2(p, c.center) <= r2 + 1e-14 * (r2 + 1.0);
}

Circle circle_two(const Point& a, const Point& b) {
  const Point center{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const double radius = 0.5 * std::sqrt(dist2(a, b));
  return Circle{center, radius};
}

Circle widest_pair(const Point& a, const Point& b, const Point& c) {
  const double ab = dist2(a, b), ac = dist2(a, c), bc = dist2(b, c);
  if (ab >= ac && ab >= bc) return circle_two(a, b);
  if (ac >= bc) return circle_two(a, c);
  return circle_two(b, c);
}

// Circumcircle in coordinates translated to `a` for conditioning; collinear
// triples fall back to the widest diameter pair, which encloses the third.
Circle circle_three(const Point& a, const Point& b, const Point& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double det = 2.0 * (bx * cy - by * cx);
  const double scale =
      std::abs(bx * cy) + std::abs(by * cx) + std::abs(bx * by) +
      std::abs(cx * cy);
  if (std::abs(det) <= 1e-14 * scale) return widest_pair(a, b, c);
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / det;
  const double uy = (bx * c2 - cx * b2) / det;
  const Point center{a.x + ux, a.y + uy};
  const double radius = std::sqrt(std::max(
      {dist2(center, a), dist2(center, b), dist2(center, c)}));
  return Circle{center, radius};
}

}  // namespace

double CellSpec::expected_users() const {
  const double radius_km = radius_m / 1000.0;
  return kPi * radius_km * radius_km * density_per_km2;
}

void CellSpec::validate() const {
  if (!(radius_m > 0.0)) {
    throw std::invalid_argument("cell radius must be > 0");
  }
  if (!(density_per_km2 > 0.0)) {
    throw std::invalid_argument("cell user density must be > 0");
  }
}

bool Circle::contains(const Point& p, double tol_m) const {
  const double r = radius + tol_m;
  return dist2(p, center) <= r * r;
}

UserField sample_user_field(const CellSpec& cell, RandomStream& rng) {
  cell.validate();
  const unsigned count = rng.poisson_positive(cell.expected_users());
  UserField field;
  field.points.reserve(count);
  for (unsigned i = 0; i < count; ++i) {
    const double r = cell.radius_m * std::sqrt(rng.uniform());
    const double phi = 2.0 * kPi * rng.uniform();
    field.points.push_back(Point{r * std::cos(phi), r * std::sin(phi)});
  }
  return field;
}

Circle smallest_bounding_circle(std::span<const Point> points) {
  if (points.empty()) {
    throw std::invalid_argument("smallest_bounding_circle: no points");
  }
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());

  // Fixed-seed shuffle keeps the expected-linear behavior of the
  // incremental construction while leaving the result deterministic.
  std::mt19937_64 shuffle_rng(0x5bc5u);
  std::shuffle(pts.begin(), pts.end(), shuffle_rng);

  const std::size_t n = pts.size();
  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < n; ++i) {
    if (in_circle(c, pts[i])) continue;
    c = Circle{pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (in_circle(c, pts[j])) continue;
      c = circle_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (in_circle(c, pts[k])) continue;
        c = circle_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

SnapshotGeometry sample_snapshot(const CellSpec& cell, std::uint64_t key,
                                 std::uint64_t index) {
  RandomStream rng = RandomStream::derived(key, index);
  SnapshotGeometry snap;
  snap.field = sample_user_field(cell, rng);
  snap.sbc = smallest_bounding_circle(snap.field.points);
  return snap;
}

std::vector<double> kappa_sbc_samples(const CellSpec& cell, std::size_t trials,
                                      RandomStream& rng) {
  if (trials < 1) {
    throw std::invalid_argument("kappa_sbc_samples: trials must be >= 1");
  }
  cell.validate();
  const std::uint64_t key = rng.next_u64();
  std::vector<double> kappas;
  kappas.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    kappas.push_back(sample_snapshot(cell, key, t).sbc.radius / cell.radius_m);
  }
  return kappas;
}

double normalized_distance(const Point& point, const Point& drone,
                           const CellSpec& cell) {
  cell.validate();
  const double bound = cell.radius_m * (1.0 + 1e-9);
  if (dist2(point, Point{}) > bound * bound ||
      dist2(drone, Point{}) > bound * bound) {
    throw std::invalid_argument(
        "normalized_distance: positions must lie within the cell disk");
  }
  return std::sqrt(dist2(point, drone)) / cell.radius_m;
}

}  // namespace dsdsc
