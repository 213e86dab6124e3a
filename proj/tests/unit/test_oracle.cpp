#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lozenge/oracle.hpp"
#include "oracles.hpp"

using namespace lozenge;

namespace {

std::vector<LozengeLocation> lozenges_inside(const Region& r) {
  std::vector<LozengeLocation> out;
  for (const Monomer& m : r.triangles()) {
    if (m.orientation != Orientation::Left) continue;
    for (const auto& L : lozenges_covering(m))
      if (r.contains(L.right())) out.push_back(L);
  }
  return out;
}

// Every placement of the hole system, translated over the region, that fits inside.
std::vector<Region> placements(const Region& r, const HoleSystem& hs) {
  std::vector<Region> out;
  for (std::int64_t da = -4; da <= 4; ++da)
    for (std::int64_t db = -4; db <= 4; ++db) {
      std::vector<Monomer> moved;
      for (Monomer m : hs.triangles()) {
        m.pos = m.pos + ObliqueCoord{da, db};
        moved.push_back(m);
      }
      if (std::all_of(moved.begin(), moved.end(), [&](const Monomer& m) { return r.contains(m); }))
        out.push_back(r.minus(moved));
    }
  return out;
}

}  // namespace

TEST_CASE("hexagon shapes") {
  CHECK(Region::hexagon(1, 1, 1).size() == 6);
  CHECK(Region::hexagon(2, 3, 1).size() == 2 * (6 + 3 + 2));
  CHECK(Region::hexagon(2, 2, 2).balance() == 0);
  CHECK(Region::centered_hexagon(3).size() == 54);
}

TEST_CASE("tiling counts of hexagons match MacMahon") {
  CHECK(count_tilings(Region::hexagon(1, 1, 1)) == 2);
  CHECK(brute_force_count(Region::hexagon(2, 2, 2)) == 20);
  CHECK(kasteleyn_count(Region::hexagon(2, 2, 2)) == 20);
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c) CHECK(kasteleyn_count(Region::hexagon(a, b, c)) == oracle::macmahon(a, b, c));
  CHECK(count_tilings(Region::centered_hexagon(5)) == oracle::macmahon(5, 5, 5));
}

TEST_CASE("Kasteleyn equals brute force on small regions") {
  std::vector<Region> corpus;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 2; ++c) {
        const Region h = Region::hexagon(a, b, c);
        if (h.size() > 40) continue;
        corpus.push_back(h);
        for (const auto& L : lozenges_inside(h)) corpus.push_back(h.minus(L));
      }
  HoleSystem e;
  e.multiholes = {single_hole(HoleKind::E, 0, 0)};
  HoleSystem ew;
  ew.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::W, 2, 0)};
  const std::size_t before = corpus.size();
  for (const Region& h : {Region::hexagon(3, 3, 1), Region::hexagon(2, 2, 3), Region::hexagon(3, 2, 2)}) {
    for (const Region& r : placements(h, e)) corpus.push_back(r);
    for (const Region& r : placements(h, ew)) corpus.push_back(r);
  }
  CHECK(corpus.size() > before);
  corpus.push_back(Region{});
  CHECK(count_tilings(Region{}) == 1);
  for (const Region& r : corpus) {
    REQUIRE(r.size() <= 40);
    CHECK(kasteleyn_count(r) == brute_force_count(r));
  }
}

TEST_CASE("unbalanced regions have no tilings") {
  const Region h = Region::hexagon(2, 2, 2);
  const Monomer one[] = {h.triangles().front()};
  const Region r = h.minus(one);
  CHECK(r.balance() != 0);
  CHECK(count_tilings(r) == 0);
  CHECK(kasteleyn_count(r) == 0);
  CHECK(std::isinf(log_count_tilings(r)));
}

TEST_CASE("invalid removals") {
  const Region h = Region::hexagon(2, 2, 2);
  const Monomer outside[] = {left(40, 40)};
  CHECK_THROWS_WITH_AS(h.minus(outside), doctest::Contains("HoleTooLarge"), Error);
  const Monomer dup[] = {h.triangles()[0], h.triangles()[0]};
  CHECK_THROWS_WITH_AS(h.minus(dup), doctest::Contains("OverlappingHoles"), Error);
}

TEST_CASE("oracle probabilities") {
  const Region h = Region::hexagon(1, 1, 1);
  for (const auto& L : lozenges_inside(h)) CHECK(oracle_probability(L, h) == mpq_class(1, 2));

  const Region big = Region::hexagon(3, 3, 2);
  for (const Monomer& m : big.triangles()) {
    if (m.orientation != Orientation::Left) continue;
    mpq_class total = 0;
    for (const auto& L : lozenges_covering(m)) {
      if (!big.contains(L.right())) continue;
      const mpq_class p = oracle_probability(L, big);
      CHECK(p >= 0);
      CHECK(p <= 1);
      CHECK(oracle_probability_float(L, big) == doctest::Approx(p.get_d()).epsilon(1e-10));
      total += p;
    }
    CHECK(total == 1);
  }
}

TEST_CASE("bulk probability in a large hexagon is close to one third") {
  const Region h = Region::centered_hexagon(20);
  const KasteleynSolver solver(h);
  for (const auto& L : lozenges_covering(left(0, 0))) CHECK(std::abs(solver.probability(L) - 1.0 / 3.0) < 0.02);
  const Region small = Region::hexagon(3, 3, 3);
  const KasteleynSolver s2(small);
  CHECK(s2.log_abs_det() == doctest::Approx(std::log(oracle::macmahon(3, 3, 3).get_d())));
  CHECK(log_count_tilings(small) == doctest::Approx(std::log(oracle::macmahon(3, 3, 3).get_d())));
}

TEST_CASE("torus counts") {
  for (int N = 2; N <= 4; ++N) {
    const TorusSpec ts{N, {}, {}};
    CHECK(torus_count(ts) == torus_brute_force(ts));
    CHECK(torus_count_float(ts) == doctest::Approx(torus_count(ts).get_d()));
  }
  TorusSpec holes{4, {}, {}};
  holes.holes.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::W, 2, 1)};
  CHECK(torus_count(holes) == torus_brute_force(holes));
  const double ratio = torus_ratio(holes);
  CHECK(ratio > 0.0);
  CHECK(ratio < 1.0);

  TorusSpec full{2, {}, {}};
  full.removed = torus_triangles(full);
  CHECK(torus_count(full) == 1);

  TorusSpec overlap{2, {}, {}};
  overlap.holes.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::E, 2, 0)};
  CHECK_THROWS_WITH_AS(torus_triangles(overlap), doctest::Contains("HoleTooLarge"), Error);
}
