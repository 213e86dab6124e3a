#include "lozenge/surface.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <deque>
#include <limits>
#include <numbers>

#include "lozenge/errors.hpp"
#include "lozenge/io.hpp"
#include "lozenge/parallel.hpp"

namespace lozenge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

double cross(const Eigen::Vector2d& u, const Eigen::Vector2d& v) { return u.x() * v.y() - u.y() * v.x(); }

bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                        const Eigen::Vector2d& q2) {
  const Eigen::Vector2d r = p2 - p1, s = q2 - q1;
  const double denom = cross(r, s);
  const Eigen::Vector2d d = q1 - p1;
  if (std::abs(denom) < 1e-12) {
    if (std::abs(cross(d, r)) > 1e-12) return false;
    const double rr = r.squaredNorm();
    const double t0 = d.dot(r) / rr, t1 = (q2 - p1).dot(r) / rr;
    return std::max(t0, t1) >= 0.0 && std::min(t0, t1) <= 1.0;
  }
  const double t = cross(d, s) / denom, u = cross(d, r) / denom;
  return t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0;
}

std::array<Eigen::Vector2d, 3> hole_polygon(const TriHole& h) {
  const auto c = hole_corners(h);
  return {to_cartesian(c[0]), to_cartesian(c[1]), to_cartesian(c[2])};
}

bool inside_triangle(const Eigen::Vector2d& p, const std::array<Eigen::Vector2d, 3>& t) {
  const double d1 = cross(t[1] - t[0], p - t[0]);
  const double d2 = cross(t[2] - t[1], p - t[1]);
  const double d3 = cross(t[0] - t[2], p - t[2]);
  const bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(neg && pos);
}

bool segment_hits_triangle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const std::array<Eigen::Vector2d, 3>& t) {
  if (inside_triangle(a, t)) return true;
  for (int i = 0; i < 3; ++i)
    if (segments_intersect(a, b, t[i], t[(i + 1) % 3])) return true;
  return false;
}

// Rays are clipped to a segment long enough to leave any window considered.
constexpr double kRayLength = 1e6;

Eigen::Vector2d ray_end(const CutRay& r) {
  return r.origin + kRayLength * Eigen::Vector2d(std::cos(r.angle), std::sin(r.angle));
}

std::vector<TriHole> all_holes(const HoleSystem& hs) { return hs.holes(); }

}  // namespace

Window Window::around(const HoleSystem& hs, std::int64_t margin) {
  const auto holes = hs.holes();
  if (holes.empty()) return {-margin, -margin, margin, margin};
  Window w{std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::max(),
           std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::min()};
  for (const auto& h : holes) {
    for (const auto& c : hole_corners(h)) {
      w.x0 = std::min(w.x0, c.a - margin);
      w.x1 = std::max(w.x1, c.a + margin);
      w.y0 = std::min(w.y0, c.b - margin);
      w.y1 = std::max(w.y1, c.b + margin);
    }
  }
  return w;
}

std::array<SurfaceEdge, 3> outgoing_edges(ObliqueCoord u) {
  return {{
      {u, {u.a - 1, u.b + 1}, {{u.a, u.b}, LozengeDir::D0}},
      {u, {u.a + 1, u.b}, {{u.a + 1, u.b}, LozengeDir::D240}},
      {u, {u.a, u.b - 1}, {{u.a + 1, u.b - 1}, LozengeDir::D120}},
  }};
}

double height_increment(double p) { return (1.0 - 3.0 * p) / std::numbers::sqrt2; }

bool CutFamily::crosses(ObliqueCoord u, ObliqueCoord v) const {
  const Eigen::Vector2d p = to_cartesian(u), q = to_cartesian(v);
  for (const auto& r : rays)
    if (segments_intersect(p, q, r.origin, ray_end(r))) return true;
  return false;
}

void CutFamily::validate(const HoleSystem& hs, const Window&) const {
  const auto holes = all_holes(hs);
  if (rays.size() != holes.size())
    throw Error(ErrorCode::CutsIntersect, "need exactly one cut per hole");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (!inside_triangle(rays[i].origin, hole_polygon(holes[i])))
      throw Error(ErrorCode::CutsIntersect, "cut " + std::to_string(i) + " does not start inside its hole");
    for (std::size_t j = 0; j < holes.size(); ++j) {
      if (j != i && segment_hits_triangle(rays[i].origin, ray_end(rays[i]), hole_polygon(holes[j])))
        throw Error(ErrorCode::CutsIntersect, "cut " + std::to_string(i) + " passes through hole " + std::to_string(j));
    }
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      if (segments_intersect(rays[i].origin, ray_end(rays[i]), rays[j].origin, ray_end(rays[j])))
        throw Error(ErrorCode::CutsIntersect, "cuts " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  }
}

CutFamily CutFamily::default_for(const HoleSystem& hs, const Window& w) {
  const auto holes = all_holes(hs);
  CutFamily fam;
  for (std::size_t i = 0; i < holes.size(); ++i) {
    const Eigen::Vector2d c = to_cartesian(hole_centroid(holes[i]).x(), hole_centroid(holes[i]).y());
    const double stagger = 0.1 * static_cast<double>(i % 3);
    const std::array<CutRay, 4> options{{
        {c + Eigen::Vector2d(0.0, 0.2 + stagger), 0.0},
        {c + Eigen::Vector2d(0.1 + 0.05 * stagger, 0.0), kPi / 2},
        {c + Eigen::Vector2d(0.1 + 0.05 * stagger, 0.0), -kPi / 2},
        {c + Eigen::Vector2d(0.0, 0.2 + stagger), kPi},
    }};
    bool placed = false;
    for (const auto& ray : options) {
      bool ok = true;
      for (std::size_t j = 0; j < holes.size() && ok; ++j)
        ok = j == i || !segment_hits_triangle(ray.origin, ray_end(ray), hole_polygon(holes[j]));
      for (const auto& prev : fam.rays) {
        if (!ok) break;
        ok = !segments_intersect(ray.origin, ray_end(ray), prev.origin, ray_end(prev));
      }
      if (ok) {
        fam.rays.push_back(ray);
        placed = true;
        break;
      }
    }
    if (!placed) throw Error(ErrorCode::CutsIntersect, "no straight cut available for hole " + std::to_string(i));
  }
  fam.validate(hs, w);
  return fam;
}

bool HeightSheet::has(ObliqueCoord u) const { return window.contains(u) && !std::isnan(heights[window.index(u)]); }

double HeightSheet::at(ObliqueCoord u) const {
  if (!window.contains(u)) throw Error(ErrorCode::InvalidArgument, "node outside the window");
  return heights[window.index(u)];
}

namespace {

// Edge state: interior edges of holes and cut edges carry no increment.
bool edge_usable(const PlacementEngine& pe, const CutFamily& cuts, const SurfaceEdge& e) {
  const auto ms = e.lozenge.monomers();
  if (pe.occupied(ms[0]) && pe.occupied(ms[1])) return false;
  return !cuts.crosses(e.from, e.to);
}

double edge_probability(const PlacementEngine& pe, const LozengeLocation& L) {
  return pe.overlaps(L) ? 0.0 : pe.probability(L);
}

}  // namespace

bool HeightSheet::usable(ObliqueCoord u, ObliqueCoord v) const {
  if (!has(u) || !has(v)) return false;
  for (const auto& e : outgoing_edges(u)) {
    if (e.to != v) continue;
    const auto ms = e.lozenge.monomers();
    const bool interior = std::binary_search(blocked.begin(), blocked.end(), ms[0]) &&
                          std::binary_search(blocked.begin(), blocked.end(), ms[1]);
    return !interior && !cuts.crosses(u, v);
  }
  return false;
}

HeightSheet average_surface(const HoleSystem& hs, const Window& w, const CutFamily& cuts, ObliqueCoord basepoint,
                            const CorrelationOptions& opts) {
  if (w.x1 < w.x0 || w.y1 < w.y0) throw Error(ErrorCode::WindowTooSmall, "empty window");
  for (const auto& h : hs.holes()) {
    for (const auto& c : hole_corners(h)) {
      if (c.a <= w.x0 || c.a >= w.x1 || c.b <= w.y0 || c.b >= w.y1)
        throw Error(ErrorCode::WindowTooSmall, "hole reaches the window boundary");
    }
  }
  if (!w.contains(basepoint)) throw Error(ErrorCode::InvalidArgument, "basepoint outside the window");
  cuts.validate(hs, w);

  const PlacementEngine pe(hs, opts);
  const std::size_t n = w.node_count();

  // increments[3*i + k] for the k-th outgoing edge of node i; NaN when unusable.
  std::vector<double> inc(3 * n, kNaN);
  parallel_for(n, [&](std::size_t i) {
    const auto edges = outgoing_edges(w.node(i));
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& e = edges[k];
      if (!w.contains(e.to) || !edge_usable(pe, cuts, e)) continue;
      inc[3 * i + k] = height_increment(edge_probability(pe, e.lozenge));
    }
  });

  // Adjacency in both directions with signed increments, in deterministic order.
  struct Arc {
    std::size_t to;
    double delta;
  };
  std::vector<std::vector<Arc>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto edges = outgoing_edges(w.node(i));
    for (std::size_t k = 0; k < 3; ++k) {
      if (std::isnan(inc[3 * i + k])) continue;
      const std::size_t j = w.index(edges[k].to);
      adj[i].push_back({j, inc[3 * i + k]});
      adj[j].push_back({i, -inc[3 * i + k]});
    }
  }

  HeightSheet sheet;
  sheet.window = w;
  sheet.basepoint = basepoint;
  sheet.cuts = cuts;
  sheet.holes = hs;
  sheet.blocked = hs.triangles();
  std::sort(sheet.blocked.begin(), sheet.blocked.end());
  sheet.heights.assign(n, kNaN);
  const std::size_t root = w.index(basepoint);
  if (adj[root].empty()) throw Error(ErrorCode::InvalidArgument, "basepoint has no usable edge");
  sheet.heights[root] = 0.0;
  std::deque<std::size_t> queue{root};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& a : adj[i]) {
      if (!std::isnan(sheet.heights[a.to])) continue;
      sheet.heights[a.to] = sheet.heights[i] + a.delta;
      queue.push_back(a.to);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(sheet.heights[i]) && !adj[i].empty())
      throw Error(ErrorCode::CutsIntersect, "cuts disconnect the window");
  }
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& a : adj[i])
      residual = std::max(residual, std::abs(sheet.heights[a.to] - sheet.heights[i] - a.delta));
  }
  sheet.residual = residual;
  return sheet;
}

HeightSheet average_surface(const HoleSystem& hs, const Window& w, const CorrelationOptions& opts) {
  return average_surface(hs, w, CutFamily::default_for(hs, w), {w.x0, w.y0}, opts);
}

double loop_circulation(const PlacementEngine& engine, std::span<const ObliqueCoord> loop) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    const ObliqueCoord u = loop[i], v = loop[i + 1];
    bool found = false;
    for (const auto& [from, to, sign] : {std::tuple{u, v, 1.0}, std::tuple{v, u, -1.0}}) {
      for (const auto& e : outgoing_edges(from)) {
        if (e.to != to) continue;
        const auto ms = e.lozenge.monomers();
        if (engine.occupied(ms[0]) && engine.occupied(ms[1]))
          throw Error(ErrorCode::InvalidArgument, "loop runs through a hole");
        total += sign * height_increment(edge_probability(engine, e.lozenge));
        found = true;
      }
      if (found) break;
    }
    if (!found) throw Error(ErrorCode::InvalidArgument, "loop nodes are not adjacent");
  }
  return total;
}

std::vector<ObliqueCoord> parallelogram_loop(std::int64_t a0, std::int64_t b0, std::int64_t a1, std::int64_t b1) {
  if (a1 <= a0 || b1 <= b0) throw Error(ErrorCode::InvalidArgument, "degenerate loop");
  std::vector<ObliqueCoord> loop;
  // Counterclockwise: along +x (polar -pi/6) is south-east, so go +x first, then +y.
  for (std::int64_t a = a0; a < a1; ++a) loop.push_back({a, b0});
  for (std::int64_t b = b0; b < b1; ++b) loop.push_back({a1, b});
  for (std::int64_t a = a1; a > a0; --a) loop.push_back({a, b1});
  for (std::int64_t b = b1; b > b0; --b) loop.push_back({a0, b});
  loop.push_back({a0, b0});
  return loop;
}

HelicoidComparison compare_to_helicoids(const HeightSheet& sheet, double R, const LimitConfig& cfg,
                                        const ComparisonOptions& opts) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  const auto specs = limit_helicoids(cfg);
  const Window& w = sheet.window;
  auto near = [&](const Eigen::Vector2d& p, double radius) {
    for (const auto& h : specs)
      if ((p - h.center).norm() < radius) return true;
    return false;
  };

  std::vector<double> diffs;
  double modulus = kSheetModulus;
  for (std::size_t i = 0; i < w.node_count(); ++i) {
    const double h = sheet.heights[i];
    if (std::isnan(h)) continue;
    const Eigen::Vector2d p = to_cartesian(w.node(i)) / R;
    if (near(p, opts.exclusion)) continue;
    double rep = 0.0;
    if (!specs.empty()) {
      const Fiber f = helicoid_fiber(specs, p);
      rep = f.representative;
      modulus = f.modulus;
    }
    diffs.push_back(h - rep);
  }

  HelicoidComparison rep;
  rep.nodes = diffs.size();
  if (!diffs.empty()) {
    std::complex<double> mean = 0.0;
    for (double d : diffs) mean += std::polar(1.0, 2.0 * kPi * d / modulus);
    rep.offset = std::abs(mean) > 0.0 ? std::arg(mean) * modulus / (2.0 * kPi) : 0.0;
    double sum = 0.0;
    for (double d : diffs) {
      const double e = fiber_distance(d, rep.offset, modulus);
      rep.max_abs = std::max(rep.max_abs, e);
      sum += e;
    }
    rep.mean_abs = sum / static_cast<double>(diffs.size());
  }

  // Central differences along the pi/2 and -pi/6 lattice lines through each node.
  for (std::size_t i = 0; i < w.node_count(); ++i) {
    const ObliqueCoord u = w.node(i);
    const ObliqueCoord up{u.a - 1, u.b + 1}, down{u.a + 1, u.b - 1}, east{u.a + 1, u.b}, west{u.a - 1, u.b};
    if (!sheet.usable(u, up) || !sheet.usable(down, u) || !sheet.usable(u, east) || !sheet.usable(west, u)) continue;
    const double dy = (sheet.at(up) - sheet.at(down)) / 2.0;
    const double de = (sheet.at(east) - sheet.at(west)) / 2.0;
    const Eigen::Vector2d g(2.0 / std::sqrt(3.0) * (de + dy / 2.0), dy);
    const Eigen::Vector2d at = to_cartesian(u) / R;
    if (near(at, opts.gradient_exclusion)) continue;
    const Eigen::Vector2d target = specs.empty() ? Eigen::Vector2d::Zero() : surface_gradient_limit(cfg, at);
    const Eigen::Vector2d scaled = R * g;
    const double err = (scaled - target).norm();
    const double rel = target.norm() > 0.0 ? err / target.norm() : err;
    rep.grad_max_rel = std::max(rep.grad_max_rel, rel);
    ++rep.gradient_nodes;
  }
  return rep;
}

std::string mesh_obj(const MultiSheetSurface& s, int sheets) {
  if (sheets < 1) throw Error(ErrorCode::InvalidArgument, "at least one sheet is required");
  const HeightSheet& b = s.base;
  const Window& w = b.window;
  const std::size_t n = w.node_count();
  std::vector<std::size_t> vid(n, 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isnan(b.heights[i])) vid[i] = ++count;

  // Faces: window triangles whose three edges all carry increments.
  std::vector<std::array<std::size_t, 3>> faces;
  for (std::int64_t X = w.x0; X <= w.x1 + 1; ++X) {
    for (std::int64_t Y = w.y0 - 1; Y <= w.y1; ++Y) {
      for (const Monomer m : {left(X, Y), right(X, Y)}) {
        auto vs = vertices(m);
        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) ok = b.usable(vs[k], vs[(k + 1) % 3]) || b.usable(vs[(k + 1) % 3], vs[k]);
        if (!ok) continue;
        // Counterclockwise in the plane.
        const Eigen::Vector2d p0 = to_cartesian(vs[0]), p1 = to_cartesian(vs[1]), p2 = to_cartesian(vs[2]);
        if (cross(p1 - p0, p2 - p0) < 0) std::swap(vs[1], vs[2]);
        faces.push_back({vid[w.index(vs[0])], vid[w.index(vs[1])], vid[w.index(vs[2])]});
      }
    }
  }

  std::string out = "# lozenge average lifting surface\n";
  char buf[128];
  for (int k = 0; k < sheets; ++k) {
    std::snprintf(buf, sizeof buf, "o sheet_%d\n", k);
    out += buf;
    for (std::size_t i = 0; i < n; ++i) {
      if (vid[i] == 0) continue;
      const Eigen::Vector2d p = to_cartesian(w.node(i));
      std::snprintf(buf, sizeof buf, "v %.10f %.10f %.10f\n", p.x(), p.y(), s.height(w.node(i), k));
      out += buf;
    }
    const std::size_t shift = static_cast<std::size_t>(k) * count;
    for (const auto& f : faces) {
      std::snprintf(buf, sizeof buf, "f %zu %zu %zu\n", f[0] + shift, f[1] + shift, f[2] + shift);
      out += buf;
    }
  }
  return out;
}

void export_mesh(const MultiSheetSurface& s, int sheets, const std::filesystem::path& path) {
  write_file_atomic(path, mesh_obj(s, sheets));
}

}  // namespace lozenge
