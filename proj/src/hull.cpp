#include "wbm/hull.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>

#include "wbm/errors.hpp"
#include "wbm/lp.hpp"

namespace wbm {

std::vector<Vec2> hull2d(std::vector<Vec2> pts, double tol) {
  if (pts.empty()) throw InvalidBody("empty point set");
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::vector<Vec2> uniq;
  for (const auto& p : pts) {
    bool dup = false;
    for (auto it = uniq.rbegin(); it != uniq.rend() && it->x() >= p.x() - tol; ++it) {
      if ((*it - p).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(p);
  }
  if (uniq.size() == 1) return uniq;
  double scale = 0.0;
  for (const auto& p : uniq) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  // a turn is kept only if the triangle height exceeds tol
  auto left_turn = [&](const Vec2& o, const Vec2& a, const Vec2& b) {
    const double c = cross2(a - o, b - o);
    return c > tol * std::max((b - o).norm(), 1e-300);
  };
  std::vector<Vec2> h(2 * uniq.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    while (k >= 2 && !left_turn(h[k - 2], h[k - 1], uniq[i])) --k;
    h[k++] = uniq[i];
  }
  for (std::size_t i = uniq.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && !left_turn(h[k - 2], h[k - 1], uniq[i])) --k;
    h[k++] = uniq[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) {
    // collinear: keep the two extreme endpoints
    return {uniq.front(), uniq.back()};
  }
  // rotate so the lowest, then leftmost, vertex comes first
  auto start = std::min_element(h.begin(), h.end(), [](const Vec2& a, const Vec2& b) {
    return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
  });
  std::rotate(h.begin(), start, h.end());
  (void)scale;
  return h;
}

double polygon_area(const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return 0.0;
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross2(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

double polygon_perimeter(const std::vector<Vec2>& poly) {
  if (poly.size() < 2) return 0.0;
  double p = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) p += (poly[(i + 1) % poly.size()] - poly[i]).norm();
  return p;
}

namespace {

struct EdgeVec {
  Vec2 d;
  double angle;
};

std::vector<EdgeVec> edge_vectors(const std::vector<Vec2>& P) {
  std::vector<EdgeVec> out;
  if (P.size() < 2) return out;
  for (std::size_t i = 0; i < P.size(); ++i) {
    Vec2 d = P[(i + 1) % P.size()] - P[i];
    out.push_back({d, angle_of(d)});
  }
  return out;
}

std::size_t lowest_index(const std::vector<Vec2>& P) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < P.size(); ++i) {
    if (P[i].y() < P[best].y() || (P[i].y() == P[best].y() && P[i].x() < P[best].x())) best = i;
  }
  return best;
}

}  // namespace

std::vector<Vec2> minkowski_merge2d(const std::vector<Vec2>& P, const std::vector<Vec2>& Q) {
  const Vec2 start = P[lowest_index(P)] + Q[lowest_index(Q)];
  std::vector<EdgeVec> edges = edge_vectors(P);
  auto eq = edge_vectors(Q);
  edges.insert(edges.end(), eq.begin(), eq.end());
  // edges leaving the lowest vertex point into the upper half plane, so sorting by angle
  // from 0 reproduces the counter-clockwise boundary
  for (auto& e : edges) {
    if (e.angle >= 2 * kPi - 1e-14) e.angle = 0.0;
  }
  std::stable_sort(edges.begin(), edges.end(), [](const EdgeVec& a, const EdgeVec& b) { return a.angle < b.angle; });
  std::vector<Vec2> merged;
  for (const auto& e : edges) {
    if (!merged.empty()) {
      const Vec2& last = merged.back();
      if (std::abs(cross2(last, e.d)) <= 1e-13 * last.norm() * e.d.norm() && last.dot(e.d) > 0) {
        merged.back() += e.d;
        continue;
      }
    }
    merged.push_back(e.d);
  }
  std::vector<Vec2> out{start};
  Vec2 cur = start;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    cur += merged[i];
    out.push_back(cur);
  }
  return out;
}

// ---------------------------------------------------------------- 3-D hull

double Polytope3::volume() const {
  double v = 0.0;
  for (const auto& f : facets) v += f.offset * f.area / 3.0;
  return v;
}

bool Polytope3::contains(const Vec3& x, double tol) const {
  if (facets.empty()) return false;
  for (const auto& f : facets) {
    if (f.normal.dot(x) - f.offset > tol) return false;
  }
  return true;
}

namespace {

double point_segment_dist(const Vec3& x, const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double L2 = d.squaredNorm();
  double t = L2 > 0 ? (x - a).dot(d) / L2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (x - (a + t * d)).norm();
}

}  // namespace

double Polytope3::distance(const Vec3& x) const {
  if (contains(x, 0.0)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : facets) {
    const double h = f.normal.dot(x) - f.offset;
    const Vec3 proj = x - h * f.normal;
    // projection inside the facet polygon?
    bool inside = true;
    for (std::size_t i = 0; i < f.loop.size(); ++i) {
      const Vec3& a = vertices[f.loop[i]];
      const Vec3& b = vertices[f.loop[(i + 1) % f.loop.size()]];
      if ((b - a).cross(proj - a).dot(f.normal) < 0) {
        inside = false;
        break;
      }
    }
    if (inside) {
      if (h >= 0) best = std::min(best, h);
    } else {
      for (std::size_t i = 0; i < f.loop.size(); ++i) {
        best = std::min(best, point_segment_dist(x, vertices[f.loop[i]], vertices[f.loop[(i + 1) % f.loop.size()]]));
      }
    }
  }
  return best;
}

Polytope3 hull3d(const std::vector<Vec3>& input, double tol) {
  // dedup
  std::vector<Vec3> pts;
  for (const auto& p : input) {
    bool dup = false;
    for (const auto& q : pts) {
      if ((p - q).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(p);
  }
  Polytope3 out;
  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = 1e-12 * scale;

  // initial simplex
  const int n = static_cast<int>(pts.size());
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n && i1 < 0; ++i) {
    if ((pts[i] - pts[i0]).norm() > tol) i1 = i;
  }
  if (i1 >= 0) {
    for (int i = 1; i < n && i2 < 0; ++i) {
      if ((pts[i1] - pts[i0]).cross(pts[i] - pts[i0]).norm() > tol * (pts[i1] - pts[i0]).norm()) i2 = i;
    }
  }
  if (i2 >= 0) {
    const Vec3 nrm = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
    for (int i = 1; i < n && i3 < 0; ++i) {
      if (std::abs(nrm.dot(pts[i] - pts[i0])) > tol) i3 = i;
    }
  }
  if (i3 < 0) {
    out.vertices = pts;
    out.dimension = i1 < 0 ? 0 : (i2 < 0 ? 1 : 2);
    return out;
  }

  struct Tri {
    std::array<int, 3> v;
    Vec3 n;
    double off;
    bool alive = true;
  };
  std::vector<Tri> tris;
  auto make = [&](int a, int b, int c) {
    Tri t;
    t.v = {a, b, c};
    t.n = (pts[b] - pts[a]).cross(pts[c] - pts[a]).normalized();
    t.off = t.n.dot(pts[a]);
    return t;
  };
  const Vec3 centroid = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  auto oriented = [&](int a, int b, int c) {
    Tri t = make(a, b, c);
    if (t.n.dot(centroid) - t.off > 0) t = make(a, c, b);
    return t;
  };
  tris.push_back(oriented(i0, i1, i2));
  tris.push_back(oriented(i0, i1, i3));
  tris.push_back(oriented(i0, i2, i3));
  tris.push_back(oriented(i1, i2, i3));

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<int> visible;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
      if (tris[t].alive && tris[t].n.dot(pts[p]) - tris[t].off > eps) visible.push_back(t);
    }
    if (visible.empty()) continue;
    std::map<std::pair<int, int>, int> edge_count;
    for (int t : visible) {
      for (int k = 0; k < 3; ++k) edge_count[{tris[t].v[k], tris[t].v[(k + 1) % 3]}]++;
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [e, c] : edge_count) {
      if (!edge_count.count({e.second, e.first})) horizon.push_back(e);
    }
    for (int t : visible) tris[t].alive = false;
    for (const auto& e : horizon) tris.push_back(make(e.first, e.second, p));
  }

  // merge coplanar triangles into polygonal facets
  std::vector<Tri> live;
  for (const auto& t : tris) {
    if (t.alive) live.push_back(t);
  }
  std::vector<int> group(live.size(), -1);
  std::vector<std::vector<int>> groups;
  for (std::size_t a = 0; a < live.size(); ++a) {
    if (group[a] >= 0) continue;
    group[a] = static_cast<int>(groups.size());
    groups.push_back({static_cast<int>(a)});
    for (std::size_t b = a + 1; b < live.size(); ++b) {
      if (group[b] < 0 && live[a].n.dot(live[b].n) > 1 - 1e-10 && std::abs(live[a].off - live[b].off) <= 1e-10 * scale) {
        group[b] = group[a];
        groups.back().push_back(static_cast<int>(b));
      }
    }
  }
  std::map<int, int> remap;
  for (const auto& g : groups) {
    Vec3 nrm = Vec3::Zero();
    std::set<int> verts;
    for (int t : g) {
      nrm += live[t].n;
      for (int v : live[t].v) verts.insert(v);
    }
    nrm.normalize();
    // in-plane basis with e1 x e2 = nrm
    Vec3 e1 = (std::abs(nrm.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(nrm).normalized();
    Vec3 e2 = nrm.cross(e1);
    std::vector<Vec2> proj;
    std::vector<int> ids(verts.begin(), verts.end());
    for (int v : ids) proj.emplace_back(pts[v].dot(e1), pts[v].dot(e2));
    auto h = hull2d(proj, tol);
    Facet3 f;
    f.normal = nrm;
    double off = 0.0;
    for (const auto& q : h) {
      for (std::size_t k = 0; k < ids.size(); ++k) {
        if ((proj[k] - q).cwiseAbs().maxCoeff() == 0.0) {
          if (!remap.count(ids[k])) {
            remap[ids[k]] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(pts[ids[k]]);
          }
          f.loop.push_back(remap[ids[k]]);
          off += nrm.dot(pts[ids[k]]);
          break;
        }
      }
    }
    f.offset = off / static_cast<double>(f.loop.size());
    f.area = std::abs(polygon_area(h));
    out.facets.push_back(std::move(f));
  }
  out.dimension = 3;
  return out;
}

int affine_dimension(const PointList& pts, double tol) {
  if (pts.empty()) return -1;
  const Eigen::Index d = pts[0].size();
  Eigen::MatrixXd M(d, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) M.col(static_cast<Eigen::Index>(i)) = pts[i] - pts[0];
  if (pts.size() == 1) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > tol) ++r;
  }
  return r;
}

PointList extreme_points(const PointList& input, double tol) {
  PointList pts;
  for (const auto& p : input) {
    bool dup = false;
    for (const auto& q : pts) {
      if ((p - q).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(p);
  }
  PointList out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Eigen::MatrixXd others(pts[i].size(), static_cast<Eigen::Index>(pts.size() - 1));
    Eigen::Index c = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j != i) others.col(c++) = pts[j];
    }
    if (pts.size() == 1 || !in_convex_hull(others, pts[i], tol)) out.push_back(pts[i]);
  }
  return out;
}

}  // namespace wbm
