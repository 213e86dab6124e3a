#include "lozenge/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace lozenge {

namespace {

constexpr double kHalfSqrt3 = 0.86602540378443864676;

std::int64_t exact_integer(const mpq_class& v, const char* what) {
  if (v.get_den() != 1) throw Error(ErrorCode::NonIntegerIndex, std::string(what) + " is not an integer");
  if (!v.get_num().fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "index out of range");
  return v.get_num().get_si();
}

}  // namespace

Eigen::Vector2d to_cartesian(double a, double b) { return {(a + b) * kHalfSqrt3, 0.5 * (b - a)}; }

Eigen::Vector2d to_cartesian(ObliqueCoord c) {
  return to_cartesian(static_cast<double>(c.a), static_cast<double>(c.b));
}

Eigen::Vector2d cartesian_to_oblique(const Eigen::Vector2d& p) {
  const double s = p.x() / kHalfSqrt3;
  return {0.5 * s - p.y(), 0.5 * s + p.y()};
}

double distance(ObliqueCoord u, ObliqueCoord v) {
  const double da = static_cast<double>(u.a - v.a);
  const double db = static_cast<double>(u.b - v.b);
  return std::sqrt(da * da + da * db + db * db);
}

std::array<ObliqueCoord, 3> vertices(const Monomer& m) {
  const auto [a, b] = m.pos;
  if (m.orientation == Orientation::Left) return {{{a, b}, {a - 1, b + 1}, {a - 1, b}}};
  return {{{a, b}, {a - 1, b + 1}, {a, b + 1}}};
}

Eigen::Vector2d midpoint(const Monomer& m) {
  return to_cartesian(m.pos) + Eigen::Vector2d(0.0, 0.5);
}

bool share_vertex(const Monomer& u, const Monomer& v) {
  for (const auto& p : vertices(u))
    for (const auto& q : vertices(v))
      if (p == q) return true;
  return false;
}

Monomer reflect_vertical(const Monomer& m) {
  const Orientation o = m.orientation == Orientation::Left ? Orientation::Right : Orientation::Left;
  return {o, {-m.pos.b, -m.pos.a}};
}

std::array<Monomer, 4> triangles(const TriHole& h) {
  const auto [x, y] = h.pos;
  if (h.kind == HoleKind::E) return {left(x, y), right(x, y), right(x - 1, y), right(x, y - 1)};
  return {right(x, y), left(x, y), left(x + 1, y), left(x, y + 1)};
}

std::array<Monomer, 2> decompose_hole(const TriHole& h) {
  const auto [x, y] = h.pos;
  if (h.kind == HoleKind::E) return {right(x - 1, y), right(x, y - 1)};
  return {left(x + 1, y), left(x, y + 1)};
}

std::array<ObliqueCoord, 3> hole_corners(const TriHole& h) {
  const auto [x, y] = h.pos;
  if (h.kind == HoleKind::E) return {{{x - 2, y + 1}, {x, y - 1}, {x, y + 1}}};
  return {{{x + 1, y}, {x - 1, y + 2}, {x - 1, y}}};
}

Eigen::Vector2d hole_centroid(const TriHole& h) {
  const double x = static_cast<double>(h.pos.a);
  const double y = static_cast<double>(h.pos.b);
  if (h.kind == HoleKind::E) return {x - 2.0 / 3.0, y + 1.0 / 3.0};
  return {x - 1.0 / 3.0, y + 2.0 / 3.0};
}

std::vector<TriHole> MultiHole::constituents() const {
  std::vector<TriHole> out;
  out.reserve(indices.size());
  for (const auto ai : indices) {
    const mpq_class qa = q * mpq_class(static_cast<long>(ai));
    const std::int64_t b = exact_integer(qa, "q*a_i");
    out.push_back({kind, {ai + anchor.a, b + anchor.b}});
  }
  return out;
}

int MultiHole::charge() const {
  const int per = kind == HoleKind::E ? 2 : -2;
  return per * static_cast<int>(indices.size());
}

Eigen::Vector2d MultiHole::centroid() const {
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  const auto parts = constituents();
  for (const auto& h : parts) c += hole_centroid(h);
  return parts.empty() ? c : c / static_cast<double>(parts.size());
}

std::vector<TriHole> HoleSystem::holes() const {
  std::vector<TriHole> out;
  for (const auto& mh : multiholes) {
    auto parts = mh.constituents();
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

std::vector<Monomer> HoleSystem::triangles() const {
  std::vector<Monomer> out;
  for (const auto& h : holes()) {
    const auto t = lozenge::triangles(h);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

int HoleSystem::total_charge() const {
  int c = 0;
  for (const auto& mh : multiholes) c += mh.charge();
  return c;
}

MultiHole single_hole(HoleKind kind, std::int64_t x, std::int64_t y) {
  MultiHole mh;
  mh.kind = kind;
  mh.q = 1;
  mh.indices = {0};
  mh.anchor = {x, y};
  return mh;
}

Monomer LozengeLocation::right() const {
  switch (dir) {
    case LozengeDir::D0: return lozenge::right(base.a, base.b);
    case LozengeDir::D120: return lozenge::right(base.a - 1, base.b);
    case LozengeDir::D240: return lozenge::right(base.a, base.b - 1);
  }
  return lozenge::right(base.a, base.b);
}

LozengeLocation LozengeLocation::from_pair(const Monomer& r, const Monomer& l) {
  if (r.orientation != Orientation::Right || l.orientation != Orientation::Left)
    throw Error(ErrorCode::InvalidArgument, "lozenge pair must be (right, left)");
  for (const auto& L : lozenges_covering(l))
    if (L.right() == r) return L;
  throw Error(ErrorCode::InvalidArgument, "monomers do not share an edge");
}

std::array<LozengeLocation, 3> lozenges_covering(const Monomer& e) {
  if (e.orientation != Orientation::Left)
    throw Error(ErrorCode::InvalidArgument, "lozenges_covering expects a left monomer");
  return {{{e.pos, LozengeDir::D0}, {e.pos, LozengeDir::D120}, {e.pos, LozengeDir::D240}}};
}

std::array<LozengeLocation, 3> lozenges_covering_right(const Monomer& e) {
  if (e.orientation != Orientation::Right)
    throw Error(ErrorCode::InvalidArgument, "lozenges_covering_right expects a right monomer");
  const auto [x, y] = e.pos;
  return {{{{x, y}, LozengeDir::D0}, {{x + 1, y}, LozengeDir::D120}, {{x, y + 1}, LozengeDir::D240}}};
}

Eigen::Vector2d lozenge_unit(LozengeDir d) {
  switch (d) {
    case LozengeDir::D0: return {1.0, 0.0};
    case LozengeDir::D120: return {-0.5, kHalfSqrt3};
    case LozengeDir::D240: return {-0.5, -kHalfSqrt3};
  }
  return {1.0, 0.0};
}

int charge(std::span<const Monomer> region) {
  int c = 0;
  for (const auto& m : region) c += m.orientation == Orientation::Right ? 1 : -1;
  return c;
}

int charge(const MultiHole& h) { return h.charge(); }
int charge(const LozengeLocation&) { return 0; }

bool divisible_slope(const mpq_class& q) {
  const mpq_class d = 1 - q;
  return mpz_divisible_ui_p(d.get_num().get_mpz_t(), 3) != 0;
}

bool has_vertex_pairing(std::span<const Monomer> monomers) {
  const std::size_t n = monomers.size();
  if (n % 2 != 0) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (share_vertex(monomers[i], monomers[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  std::vector<bool> used(n, false);
  std::function<bool()> search = [&]() -> bool {
    std::size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) return true;
    used[i] = true;
    for (const auto j : adj[i]) {
      if (used[j]) continue;
      used[j] = true;
      if (search()) return true;
      used[j] = false;
    }
    used[i] = false;
    return false;
  };
  return search();
}

ValidationReport validate_system(const HoleSystem& hs, std::span<const Probe> probes) {
  ValidationReport rep;
  auto fail = [&](ErrorCode code, std::string msg) {
    rep.valid = false;
    rep.issues.push_back({code, std::move(msg)});
  };

  std::vector<Monomer> pair_set;
  std::set<Monomer> seen;
  auto claim = [&](const Monomer& m, const char* what) {
    if (!seen.insert(m).second)
      fail(ErrorCode::OverlappingHoles,
           std::string(what) + " overlaps at monomer (" + std::to_string(m.pos.a) + "," + std::to_string(m.pos.b) + ")");
  };

  for (const auto& mh : hs.multiholes) {
    if (!divisible_slope(mh.q)) {
      fail(ErrorCode::BadSlope, "3 does not divide 1-q for q=" + mh.q.get_str());
      continue;
    }
    if (!std::is_sorted(mh.indices.begin(), mh.indices.end()) ||
        std::adjacent_find(mh.indices.begin(), mh.indices.end()) != mh.indices.end()) {
      fail(ErrorCode::InvalidArgument, "multihole indices must be strictly increasing");
      continue;
    }
    std::vector<TriHole> parts;
    try {
      parts = mh.constituents();
    } catch (const Error& e) {
      fail(e.code(), e.what());
      continue;
    }
    for (const auto& h : parts) {
      for (const auto& t : triangles(h)) claim(t, "hole");
      const auto d = decompose_hole(h);
      pair_set.insert(pair_set.end(), d.begin(), d.end());
    }
    rep.total_charge += mh.charge();
  }

  for (const auto& p : probes) {
    if (const auto* m = std::get_if<Monomer>(&p)) {
      if (seen.count(*m)) fail(ErrorCode::ProbeOverlapsHole, "probe monomer overlaps a hole");
      seen.insert(*m);
      pair_set.push_back(*m);
      rep.total_charge += m->orientation == Orientation::Right ? 1 : -1;
    } else {
      const auto& L = std::get<LozengeLocation>(p);
      for (const auto& m2 : L.monomers()) {
        if (seen.count(m2)) fail(ErrorCode::ProbeOverlapsHole, "probe lozenge overlaps a hole");
        seen.insert(m2);
        pair_set.push_back(m2);
      }
    }
  }

  rep.pairable = has_vertex_pairing(pair_set);
  if (!rep.pairable) fail(ErrorCode::UnpairableConfiguration, "monomers cannot be paired by shared vertices");
  return rep;
}

void require_valid(const HoleSystem& hs, std::span<const Probe> probes) {
  const auto rep = validate_system(hs, probes);
  if (!rep.valid) throw Error(rep.issues.front().code, rep.issues.front().message);
}

}  // namespace lozenge
