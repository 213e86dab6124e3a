#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "lozenge/lattice.hpp"
#include "oracles.hpp"

using namespace lozenge;

TEST_CASE("distance matches the oblique metric") {
  CHECK(distance({0, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(distance({0, 0}, {1, 1}) == doctest::Approx(std::sqrt(3.0)));
  CHECK(distance({0, 0}, {1, -1}) == doctest::Approx(1.0));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-40, 40);
  for (int i = 0; i < 200; ++i) {
    const ObliqueCoord u{d(rng), d(rng)}, v{d(rng), d(rng)};
    const double da = static_cast<double>(u.a - v.a), db = static_cast<double>(u.b - v.b);
    const auto [x1, y1] = oracle::cartesian(static_cast<double>(u.a), static_cast<double>(u.b));
    const auto [x2, y2] = oracle::cartesian(static_cast<double>(v.a), static_cast<double>(v.b));
    CHECK(std::abs(distance(u, v) - std::sqrt(da * da + da * db + db * db)) < 1e-12);
    CHECK(std::abs(distance(u, v) - std::hypot(x1 - x2, y1 - y2)) < 1e-12);
  }
}

TEST_CASE("cartesian round trip") {
  for (int a = -5; a <= 5; ++a) {
    for (int b = -5; b <= 5; ++b) {
      const Eigen::Vector2d p = to_cartesian(ObliqueCoord{a, b});
      const Eigen::Vector2d q = cartesian_to_oblique(p);
      CHECK(q.x() == doctest::Approx(a));
      CHECK(q.y() == doctest::Approx(b));
    }
  }
}

TEST_CASE("unit triangles have side one and a vertical side through their position") {
  for (const Monomer m : {left(0, 0), right(0, 0), left(3, -2), right(-4, 7)}) {
    const auto v = vertices(m);
    CHECK(distance(v[0], v[1]) == doctest::Approx(1.0));
    CHECK(distance(v[1], v[2]) == doctest::Approx(1.0));
    CHECK(distance(v[2], v[0]) == doctest::Approx(1.0));
    const Eigen::Vector2d mid = midpoint(m), base = to_cartesian(m.pos);
    CHECK(mid.x() == doctest::Approx(base.x()));
    CHECK(mid.y() == doctest::Approx(base.y() + 0.5));
  }
}

TEST_CASE("reflection across the vertical axis swaps orientation and is an involution") {
  for (const Monomer m : {left(2, 1), right(-3, 4), left(0, 0)}) {
    const Monomer r = reflect_vertical(m);
    CHECK(r.orientation != m.orientation);
    CHECK(reflect_vertical(r) == m);
    const Eigen::Vector2d a = midpoint(m), b = midpoint(r);
    CHECK(a.x() == doctest::Approx(-b.x()));
    CHECK(a.y() == doctest::Approx(b.y()));
  }
}

TEST_CASE("charges of holes and lozenges") {
  CHECK(charge(single_hole(HoleKind::E, 0, 0)) == 2);
  CHECK(charge(single_hole(HoleKind::W, 0, 0)) == -2);
  const LozengeLocation L{{0, 0}, LozengeDir::D120};
  const auto ms = L.monomers();
  CHECK(charge(std::span<const Monomer>(ms)) == 0);
  // Charge of the four triangles of a hole equals the hole charge.
  const auto te = triangles(TriHole{HoleKind::E, {4, 1}});
  const auto tw = triangles(TriHole{HoleKind::W, {4, 1}});
  CHECK(charge(std::span<const Monomer>(te)) == 2);
  CHECK(charge(std::span<const Monomer>(tw)) == -2);
}

TEST_CASE("decomposition of holes into two monomers") {
  const auto e = decompose_hole({HoleKind::E, {0, 0}});
  CHECK(std::set<Monomer>(e.begin(), e.end()) == std::set<Monomer>{right(-1, 0), right(0, -1)});
  const auto w = decompose_hole({HoleKind::W, {0, 0}});
  CHECK(std::set<Monomer>(w.begin(), w.end()) == std::set<Monomer>{left(1, 0), left(0, 1)});
  const auto e52 = decompose_hole({HoleKind::E, {5, 2}});
  CHECK(std::set<Monomer>(e52.begin(), e52.end()) == std::set<Monomer>{right(4, 2), right(5, 1)});
  // Both monomers lie inside the side-2 triangle.
  for (const auto kind : {HoleKind::E, HoleKind::W}) {
    const TriHole h{kind, {2, -1}};
    const auto tri = triangles(h);
    for (const auto& m : decompose_hole(h)) CHECK(std::find(tri.begin(), tri.end(), m) != tri.end());
  }
}

TEST_CASE("hole triangles form a side-2 triangle") {
  for (const auto kind : {HoleKind::E, HoleKind::W}) {
    const TriHole h{kind, {1, 1}};
    const auto c = hole_corners(h);
    CHECK(distance(c[0], c[1]) == doctest::Approx(2.0));
    CHECK(distance(c[1], c[2]) == doctest::Approx(2.0));
    CHECK(distance(c[2], c[0]) == doctest::Approx(2.0));
    std::set<ObliqueCoord> nodes;
    for (const auto& t : triangles(h))
      for (const auto& v : vertices(t)) nodes.insert(v);
    CHECK(nodes.size() == 6);
    const Eigen::Vector2d centroid = hole_centroid(h);
    CHECK(centroid.x() == doctest::Approx((c[0].a + c[1].a + c[2].a) / 3.0));
    CHECK(centroid.y() == doctest::Approx((c[0].b + c[1].b + c[2].b) / 3.0));
  }
}

TEST_CASE("the three lozenges covering a left monomer") {
  const auto ls = lozenges_covering(left(0, 0));
  CHECK(ls[0] == LozengeLocation{{0, 0}, LozengeDir::D0});
  CHECK(ls[0].right() == right(0, 0));
  std::set<Monomer> partners;
  for (const auto& L : ls) {
    CHECK(L.left() == left(0, 0));
    // Two triangles of a lozenge share an edge, i.e. two vertices.
    const auto a = vertices(L.left()), b = vertices(L.right());
    int shared = 0;
    for (const auto& u : a) shared += static_cast<int>(std::count(b.begin(), b.end(), u));
    CHECK(shared == 2);
    partners.insert(L.right());
    CHECK(LozengeLocation::from_pair(L.right(), L.left()) == L);
  }
  CHECK(partners.size() == 3);
  const auto shifted = lozenges_covering(left(3, -5));
  for (int i = 0; i < 3; ++i) {
    CHECK(shifted[i].base == ObliqueCoord{ls[i].base.a + 3, ls[i].base.b - 5});
    CHECK(shifted[i].dir == ls[i].dir);
  }
  // Covering a right monomer gives the same lozenges from the other side.
  for (const auto& L : lozenges_covering_right(right(2, 2))) CHECK(L.right() == right(2, 2));
  CHECK_THROWS_AS(LozengeLocation::from_pair(right(5, 5), left(0, 0)), Error);
}

TEST_CASE("lozenge directions are 120 degrees apart") {
  const Eigen::Vector2d u0 = lozenge_unit(LozengeDir::D0), u1 = lozenge_unit(LozengeDir::D120),
                        u2 = lozenge_unit(LozengeDir::D240);
  CHECK((u0 + u1 + u2).norm() < 1e-12);
  CHECK(u0.dot(u1) == doctest::Approx(-0.5));
}

TEST_CASE("multihole constituents and index integrality") {
  MultiHole mh{HoleKind::E, mpq_class(-2), {0, 3}, {1, 1}};
  const auto parts = mh.constituents();
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].pos == ObliqueCoord{1, 1});
  CHECK(parts[1].pos == ObliqueCoord{4, -5});
  CHECK(mh.charge() == 4);

  MultiHole frac{HoleKind::W, mpq_class(1, 4), {0, 2}, {0, 0}};
  CHECK_THROWS_WITH_AS(frac.constituents(), doctest::Contains("NonIntegerIndex"), Error);
}

TEST_CASE("validation of hole systems") {
  HoleSystem ok;
  ok.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::W, 6, 0)};
  const auto rep = validate_system(ok);
  CHECK(rep.valid);
  CHECK(rep.total_charge == 0);
  CHECK(rep.pairable);
  CHECK(validate_system(ok).issues.size() == rep.issues.size());

  HoleSystem overlap;
  overlap.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::E, 1, 0)};
  const auto ro = validate_system(overlap);
  CHECK_FALSE(ro.valid);
  CHECK(ro.issues.front().code == ErrorCode::OverlappingHoles);

  HoleSystem slope;
  slope.multiholes = {MultiHole{HoleKind::E, mpq_class(2), {0, 3}, {0, 0}}};
  CHECK(validate_system(slope).issues.front().code == ErrorCode::BadSlope);
  CHECK(divisible_slope(mpq_class(-2)));
  CHECK(divisible_slope(mpq_class(1, 4)));
  CHECK_FALSE(divisible_slope(mpq_class(2)));

  HoleSystem frac;
  frac.multiholes = {MultiHole{HoleKind::E, mpq_class(1, 4), {0, 1}, {0, 0}}};
  CHECK(validate_system(frac).issues.front().code == ErrorCode::NonIntegerIndex);

  // Two lone monomers far apart cannot be paired by shared vertices.
  const std::vector<Probe> probes{Probe{left(20, 20)}, Probe{right(-20, -20)}};
  HoleSystem empty;
  const auto ru = validate_system(empty, probes);
  CHECK_FALSE(ru.pairable);
  CHECK_THROWS_WITH_AS(require_valid(empty, probes), doctest::Contains("UnpairableConfiguration"), Error);

  // A probe on a hole is rejected.
  const std::vector<Probe> on_hole{Probe{right(-1, 0)}};
  CHECK(validate_system(ok, on_hole).issues.front().code == ErrorCode::ProbeOverlapsHole);
}

TEST_CASE("charge is additive over disjoint unions") {
  HoleSystem hs;
  hs.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::E, 9, 0), single_hole(HoleKind::W, 0, 9)};
  const auto tri = hs.triangles();
  CHECK(charge(std::span<const Monomer>(tri)) == hs.total_charge());
  CHECK(hs.total_charge() == 2);
}
