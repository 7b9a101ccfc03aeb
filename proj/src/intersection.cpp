#include "sphere_spectra/intersection.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "sphere_spectra/errors.hpp"

namespace sphere_spectra {
namespace {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Rational = boost::multiprecision::cpp_rational;
using Tri3 = std::array<Vec3, 3>;

constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;
// Forward error bounds of the plain floating-point determinants.
constexpr double kOrient2dBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kOrient3dBound = (7.0 + 56.0 * kEps) * kEps;

int sign_of(const Rational& r) { return r.sign(); }

int orient2d_exact(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Rational acx = Rational(a.x()) - Rational(c.x());
  const Rational bcx = Rational(b.x()) - Rational(c.x());
  const Rational acy = Rational(a.y()) - Rational(c.y());
  const Rational bcy = Rational(b.y()) - Rational(c.y());
  return sign_of(acx * bcy - acy * bcx);
}

int orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  Rational m[3][3];
  for (int k = 0; k < 3; ++k) {
    m[0][k] = Rational(a[k]) - Rational(d[k]);
    m[1][k] = Rational(b[k]) - Rational(d[k]);
    m[2][k] = Rational(c[k]) - Rational(d[k]);
  }
  const Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return sign_of(det);
}

// Closed segments pq and rs in the plane.
bool segments_intersect_2d(const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s) {
  const int o1 = predicates::orient2d(p, q, r);
  const int o2 = predicates::orient2d(p, q, s);
  const int o3 = predicates::orient2d(r, s, p);
  const int o4 = predicates::orient2d(r, s, q);
  if (o1 == 0 && o2 == 0) {
    // Collinear: compare extents along both axes.
    for (int k = 0; k < 2; ++k) {
      if (std::max(p[k], q[k]) < std::min(r[k], s[k])) return false;
      if (std::max(r[k], s[k]) < std::min(p[k], q[k])) return false;
    }
    return true;
  }
  return o1 * o2 <= 0 && o3 * o4 <= 0;
}

bool point_in_triangle_2d(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const int s1 = predicates::orient2d(a, b, p);
  const int s2 = predicates::orient2d(b, c, p);
  const int s3 = predicates::orient2d(c, a, p);
  const bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(has_neg && has_pos);
}

// Coordinates dropped along the dominant axis of the plane normal.
std::pair<int, int> projection_axes(const Tri3& t) {
  const Vec3 n = (t[1] - t[0]).cross(t[2] - t[0]);
  int drop = 0;
  n.cwiseAbs().maxCoeff(&drop);
  return {(drop + 1) % 3, (drop + 2) % 3};
}

Vec2 drop_axis(const Vec3& p, std::pair<int, int> axes) { return {p[axes.first], p[axes.second]}; }

bool segment_hits_triangle_2d(const Vec3& p, const Vec3& q, const Tri3& t) {
  const auto axes = projection_axes(t);
  const Vec2 a = drop_axis(t[0], axes);
  const Vec2 b = drop_axis(t[1], axes);
  const Vec2 c = drop_axis(t[2], axes);
  const Vec2 p2 = drop_axis(p, axes);
  const Vec2 q2 = drop_axis(q, axes);
  if (point_in_triangle_2d(p2, a, b, c) || point_in_triangle_2d(q2, a, b, c)) return true;
  return segments_intersect_2d(p2, q2, a, b) || segments_intersect_2d(p2, q2, b, c) ||
         segments_intersect_2d(p2, q2, c, a);
}

bool coplanar_triangles_intersect(const Tri3& a, const Tri3& b) {
  const auto axes = projection_axes(a);
  std::array<Vec2, 3> a2;
  std::array<Vec2, 3> b2;
  for (int k = 0; k < 3; ++k) {
    a2[k] = drop_axis(a[k], axes);
    b2[k] = drop_axis(b[k], axes);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (segments_intersect_2d(a2[i], a2[(i + 1) % 3], b2[j], b2[(j + 1) % 3])) return true;
    }
  }
  return point_in_triangle_2d(a2[0], b2[0], b2[1], b2[2]) ||
         point_in_triangle_2d(b2[0], a2[0], a2[1], a2[2]);
}

struct Box {
  Vec3 lo;
  Vec3 hi;
  bool overlaps(const Box& o) const {
    return (lo.array() <= o.hi.array()).all() && (o.lo.array() <= hi.array()).all();
  }
};

int shared_vertices(const Triangle& a, const Triangle& b, int* shared) {
  int count = 0;
  for (int i : a) {
    for (int j : b) {
      if (i == j) {
        *shared = i;
        ++count;
      }
    }
  }
  return count;
}

std::vector<Vec4> pole_candidates() {
  std::vector<Vec4> out;
  for (int i = 0; i < 4; ++i) {
    for (double s : {1.0, -1.0}) {
      Vec4 e = Vec4::Zero();
      e[i] = s;
      out.push_back(e);
    }
  }
  for (int mask = 0; mask < 16; ++mask) {
    Vec4 v;
    for (int i = 0; i < 4; ++i) v[i] = (mask >> i) & 1 ? -0.5 : 0.5;
    out.push_back(v);
  }
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 488; ++k) {
    Vec4 v(normal(rng), normal(rng), normal(rng), normal(rng));
    out.push_back(v.normalized());
  }
  return out;
}

}  // namespace

namespace predicates {

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double detl = (a.x() - c.x()) * (b.y() - c.y());
  const double detr = (a.y() - c.y()) * (b.x() - c.x());
  const double det = detl - detr;
  const double bound = kOrient2dBound * (std::abs(detl) + std::abs(detr));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient2d_exact(a, b, c);
}

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 ad = a - d;
  const Vec3 bd = b - d;
  const Vec3 cd = c - d;
  const double t1 = bd.y() * cd.z() - bd.z() * cd.y();
  const double t2 = bd.z() * cd.x() - bd.x() * cd.z();
  const double t3 = bd.x() * cd.y() - bd.y() * cd.x();
  const double det = ad.x() * t1 + ad.y() * t2 + ad.z() * t3;
  const double permanent =
      std::abs(ad.x()) * (std::abs(bd.y() * cd.z()) + std::abs(bd.z() * cd.y())) +
      std::abs(ad.y()) * (std::abs(bd.z() * cd.x()) + std::abs(bd.x() * cd.z())) +
      std::abs(ad.z()) * (std::abs(bd.x() * cd.y()) + std::abs(bd.y() * cd.x()));
  const double bound = kOrient3dBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient3d_exact(a, b, c, d);
}

bool segment_hits_triangle(const Vec3& p, const Vec3& q, const Tri3& t) {
  const int o1 = orient3d(t[0], t[1], t[2], p);
  const int o2 = orient3d(t[0], t[1], t[2], q);
  if (o1 == 0 && o2 == 0) return segment_hits_triangle_2d(p, q, t);
  if (o1 == o2) return false;
  const int s1 = orient3d(p, q, t[0], t[1]);
  const int s2 = orient3d(p, q, t[1], t[2]);
  const int s3 = orient3d(p, q, t[2], t[0]);
  const bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(has_neg && has_pos);
}

bool triangles_intersect(const Tri3& a, const Tri3& b) {
  std::array<int, 3> sb{};
  std::array<int, 3> sa{};
  for (int k = 0; k < 3; ++k) sb[k] = orient3d(a[0], a[1], a[2], b[k]);
  if ((sb[0] > 0 && sb[1] > 0 && sb[2] > 0) || (sb[0] < 0 && sb[1] < 0 && sb[2] < 0)) {
    return false;
  }
  if (sb[0] == 0 && sb[1] == 0 && sb[2] == 0) return coplanar_triangles_intersect(a, b);
  for (int k = 0; k < 3; ++k) sa[k] = orient3d(b[0], b[1], b[2], a[k]);
  if ((sa[0] > 0 && sa[1] > 0 && sa[2] > 0) || (sa[0] < 0 && sa[1] < 0 && sa[2] < 0)) {
    return false;
  }
  for (int k = 0; k < 3; ++k) {
    if (segment_hits_triangle(a[k], a[(k + 1) % 3], b)) return true;
    if (segment_hits_triangle(b[k], b[(k + 1) % 3], a)) return true;
  }
  return false;
}

}  // namespace predicates

Vec3 stereographic_projection(const Vec4& x, const Vec4& pole,
                              const Eigen::Matrix<double, 4, 3>& frame) {
  return frame.transpose() * x / (1.0 - x.dot(pole));
}

IntersectionResult self_intersection_test(const SphericalTriMesh& mesh,
                                          const IntersectionOptions& options) {
  const auto& verts = mesh.vertices();
  const auto& tris = mesh.triangles();
  IntersectionResult result;
  if (verts.empty()) return result;

  // Pole: the candidate whose nearest vertex is farthest away.
  double best = -1.0;
  for (const Vec4& c : pole_candidates()) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vec4& v : verts) nearest = std::min(nearest, (v - c).norm());
    if (nearest > best) {
      best = nearest;
      result.pole = c;
    }
  }
  result.pole_distance = best;
  if (best < options.min_pole_distance) {
    std::ostringstream msg;
    msg << "self_intersection_test: no admissible projection pole (best distance " << best
        << ")";
    throw ConfigurationError(msg.str());
  }

  const Eigen::Matrix4d q = Eigen::Matrix<double, 4, 1>(result.pole).householderQr().householderQ();
  const Eigen::Matrix<double, 4, 3> frame = q.rightCols<3>();

  std::vector<Vec3> projected(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    projected[i] = stereographic_projection(verts[i], result.pole, frame);
  }

  std::vector<Box> boxes(tris.size());
  std::vector<double> extents(tris.size());
  for (std::size_t f = 0; f < tris.size(); ++f) {
    Box b{projected[tris[f][0]], projected[tris[f][0]]};
    for (int k = 1; k < 3; ++k) {
      b.lo = b.lo.cwiseMin(projected[tris[f][k]]);
      b.hi = b.hi.cwiseMax(projected[tris[f][k]]);
    }
    boxes[f] = b;
    extents[f] = (b.hi - b.lo).maxCoeff();
  }
  if (tris.empty()) return result;

  // Broad phase: uniform hash grid with the median triangle extent as cell.
  std::vector<double> sorted = extents;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double cell = std::max(sorted[sorted.size() / 2], 1e-12);
  auto cell_of = [cell](double x) { return static_cast<std::int64_t>(std::floor(x / cell)); };
  auto key_of = [](std::int64_t i, std::int64_t j, std::int64_t k) {
    std::uint64_t h = static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(j) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
    return h;
  };
  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  for (std::size_t f = 0; f < tris.size(); ++f) {
    const Box& b = boxes[f];
    for (std::int64_t i = cell_of(b.lo.x()); i <= cell_of(b.hi.x()); ++i) {
      for (std::int64_t j = cell_of(b.lo.y()); j <= cell_of(b.hi.y()); ++j) {
        for (std::int64_t k = cell_of(b.lo.z()); k <= cell_of(b.hi.z()); ++k) {
          grid[key_of(i, j, k)].push_back(static_cast<int>(f));
        }
      }
    }
  }
  std::vector<std::uint64_t> pairs;
  for (const auto& [key, members] : grid) {
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const auto lo = static_cast<std::uint32_t>(std::min(members[x], members[y]));
        const auto hi = static_cast<std::uint32_t>(std::max(members[x], members[y]));
        pairs.push_back((static_cast<std::uint64_t>(lo) << 32) | hi);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  auto corners = [&](int f) {
    return Tri3{projected[tris[f][0]], projected[tris[f][1]], projected[tris[f][2]]};
  };
  for (std::uint64_t p : pairs) {
    const int fa = static_cast<int>(p >> 32);
    const int fb = static_cast<int>(p & 0xffffffffULL);
    if (!boxes[fa].overlaps(boxes[fb])) continue;
    ++result.candidate_pairs;
    int shared = -1;
    const int common = shared_vertices(tris[fa], tris[fb], &shared);
    bool hit = false;
    if (common >= 2) continue;
    if (common == 1) {
      // Contact away from the shared vertex must involve an opposite edge.
      auto opposite = [&](int f) {
        std::array<int, 2> e{};
        int m = 0;
        for (int v : tris[f]) {
          if (v != shared) e[m++] = v;
        }
        return e;
      };
      const auto ea = opposite(fa);
      const auto eb = opposite(fb);
      hit = predicates::segment_hits_triangle(projected[ea[0]], projected[ea[1]], corners(fb)) ||
            predicates::segment_hits_triangle(projected[eb[0]], projected[eb[1]], corners(fa));
    } else {
      hit = predicates::triangles_intersect(corners(fa), corners(fb));
    }
    if (hit) {
      result.embedded = false;
      if (result.witnesses.size() < options.max_witnesses) result.witnesses.push_back({fa, fb});
    }
  }
  return result;
}

}  // namespace sphere_spectra
