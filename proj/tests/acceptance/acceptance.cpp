// One line per acceptance criterion; exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lozenge/continuum.hpp"
#include "lozenge/correlation.hpp"
#include "lozenge/coupling.hpp"
#include "lozenge/io.hpp"
#include "lozenge/oracle.hpp"
#include "lozenge/surface.hpp"
#include "lozenge/verify.hpp"
#include "oracles.hpp"

using namespace lozenge;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string join(const std::vector<double>& v, const char* f = "%.4g") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(f, v[i]);
  return s;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

HoleSystem ew_pair(std::int64_t wx, std::int64_t wy = 0) {
  HoleSystem hs;
  hs.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::W, wx, wy)};
  return hs;
}

std::int64_t aligned(double v, double R) { return 3 * std::llround(v * R / 3.0); }

Outcome coupling_exactness() {
  const bool third = coupling_p(0, 0) == CouplingValue{mpq_class(1, 3), 0};
  const VerifyResult sym = verify_symmetries(30);
  double quad = 0.0;
  for (std::int64_t x = -15; x <= 15; ++x)
    for (std::int64_t y = -15; y <= 15; ++y)
      quad = std::max(quad, std::abs(coupling_float(x, y) - oracle::coupling_quadrature(x, y)));
  return {third && sym.ok() && quad <= 1e-10,
          std::string("P(0,0)=") + coupling_p(0, 0).str() + " symmetry_failures=" + std::to_string(sym.failures) +
              " quadrature_gap=" + fmt("%.3g", quad)};
}

Outcome identity31() {
  const VerifyResult r = verify_identity31(100, 7, 1e-8);
  return {r.ok() && r.checks == 100, "trials=" + std::to_string(r.checks) + " max_residual=" + fmt("%.3g", r.max_residual)};
}

Outcome lemmas() {
  const VerifyResult a = verify_lemma33(20, 7);
  const VerifyResult b = verify_lemma34(20, 7);
  return {a.ok() && b.ok(), "lemma33 checks=" + std::to_string(a.checks) + " failures=" + std::to_string(a.failures) +
                                "; lemma34 checks=" + std::to_string(b.checks) + " failures=" + std::to_string(b.failures)};
}

// E at the origin, W at scaled distance 2, probe on the perpendicular bisector.
Outcome coulomb_convergence() {
  std::vector<double> errs;
  bool exact = true;
  for (const double R : {8.0, 16.0, 32.0, 64.0}) {
    const HoleSystem hs = ew_pair(aligned(2.0, R));
    const Monomer probe = left(aligned(0.5, R), aligned(1.0, R));
    const FieldSample f = discrete_field(probe, hs);
    exact = exact && f.exactness == Exactness::Exact;
    LimitConfig cfg = limit_config_from(hs, R);
    const Eigen::Vector2d mid = cartesian_to_oblique(midpoint(probe));
    cfg.probe = {mid.x() / R, mid.y() / R, 0, 0};
    const Eigen::Vector2d lim = R * coulomb_field(cfg, R);
    const Eigen::Vector2d got = R * Eigen::Vector2d(f.fx, f.fy);
    errs.push_back((got - lim).norm() / lim.norm());
  }
  return {exact && strictly_decreasing(errs) && errs.back() <= 0.05, "rel_errors(R=8,16,32,64)=" + join(errs)};
}

constexpr Window kGoldenWindow{-4, -10, 15, 9};

Outcome probability_axioms() {
  const PlacementEngine engine(ew_pair(12));
  std::size_t probes = 0, bad = 0;
  for (std::int64_t a = kGoldenWindow.x0; a <= kGoldenWindow.x1; ++a)
    for (std::int64_t b = kGoldenWindow.y0; b <= kGoldenWindow.y1; ++b)
      for (const Monomer e : {left(a, b), right(a, b)}) {
        if (engine.occupied(e)) continue;
        const FieldSample s = engine.field(e, true);
        ++probes;
        const bool in_range = s.p1 >= 0 && s.p1 <= 1 && s.p2 >= 0 && s.p2 <= 1 && s.p3 >= 0 && s.p3 <= 1;
        if (!in_range || !s.sum_exact || s.exactness != Exactness::Exact) ++bad;
      }
  return {bad == 0 && probes > 0, "probes=" + std::to_string(probes) + " violations=" + std::to_string(bad)};
}

Outcome circulation() {
  const HoleSystem hs = ew_pair(12);
  const auto loops = circulation_loops(hs, kGoldenWindow, 40, 7);
  const VerifyResult r = verify_circulation(hs, kGoldenWindow, 40, 7, 1e-8, 1e-9);
  std::size_t charged = 0;
  for (const auto& l : loops) charged += l.enclosed_charge != 0 ? 1 : 0;
  return {r.ok() && charged > 0 && loops.size() > charged,
          "loops=" + std::to_string(r.checks) + " charged=" + std::to_string(charged) +
              " max_residual=" + fmt("%.3g", r.max_residual)};
}

Outcome divided_differences() {
  const mpq_class q(-2);
  const std::vector<std::int64_t> nodes{0, 1, 2};
  const double dirs[][2] = {{-1.0, 0.5}, {0.5, -1.0}, {2.0, 0.5}};
  double worst_band = 0.0, worst_growth = 0.0;
  for (int k = 0; k <= 2; ++k)
    for (int l = 0; l <= 2; ++l)
      for (const auto& d : dirs) {
        std::vector<double> scaled;
        for (const std::int64_t n : {50, 100, 200, 400}) {
          const auto r = static_cast<std::int64_t>(std::floor(d[0] * static_cast<double>(n)));
          const auto s = static_cast<std::int64_t>(std::floor(d[1] * static_cast<double>(n)));
          const double exact = dd_p_exact(k, l, r, s, q, nodes, nodes).value();
          const double err = std::abs(exact - dd_p_leading(k, l, r, s, q));
          scaled.push_back(err * std::pow(static_cast<double>(n), k + l + 2));
        }
        const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
        worst_band = std::max(worst_band, *hi / *lo);
        worst_growth = std::max(worst_growth, scaled.back() / scaled.front());
      }
  return {worst_band <= 3.0 && worst_growth <= 3.0,
          "max_band_ratio=" + fmt("%.3f", worst_band) + " max_last_over_first=" + fmt("%.3f", worst_growth)};
}

Outcome helicoid_convergence() {
  std::vector<double> maxes, grads;
  for (const std::int64_t R : {8, 16, 32}) {
    const HoleSystem hs = ew_pair(2 * R);
    const Window w{-2 * R, -2 * R, 4 * R, 2 * R};
    const HeightSheet s = average_surface(hs, w);
    const auto c = compare_to_helicoids(s, static_cast<double>(R), limit_config_from(hs, static_cast<double>(R)));
    maxes.push_back(c.max_abs);
    grads.push_back(c.grad_max_rel);
  }
  return {strictly_decreasing(maxes) && grads.back() <= 0.10,
          "max_fiber_distance(R=8,16,32)=" + join(maxes) + " grad_rel=" + join(grads)};
}

std::vector<Region> oracle_corpus() {
  std::vector<Region> out;
  HoleSystem e, ew;
  e.multiholes = {single_hole(HoleKind::E, 0, 0)};
  ew.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::W, 2, 0)};
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c) {
        const Region h = Region::hexagon(a, b, c);
        if (h.size() > 40) continue;
        out.push_back(h);
        for (const Monomer& m : h.triangles()) {
          if (m.orientation != Orientation::Left) continue;
          for (const auto& L : lozenges_covering(m))
            if (h.contains(L.right())) out.push_back(h.minus(L));
        }
        for (const HoleSystem* hs : {&e, &ew})
          for (std::int64_t da = -3; da <= 5; ++da)
            for (std::int64_t db = -3; db <= 5; ++db) {
              std::vector<Monomer> moved;
              for (Monomer m : hs->triangles()) {
                m.pos = m.pos + ObliqueCoord{da, db};
                moved.push_back(m);
              }
              if (std::all_of(moved.begin(), moved.end(), [&](const Monomer& m) { return h.contains(m); }))
                out.push_back(h.minus(moved));
            }
      }
  return out;
}

Outcome oracle_agreement() {
  const auto corpus = oracle_corpus();
  std::size_t mismatches = 0;
  for (const Region& r : corpus)
    if (kasteleyn_count(r) != brute_force_count(r)) ++mismatches;
  const mpz_class h222 = count_tilings(Region::hexagon(2, 2, 2));

  const HoleSystem hs = ew_pair(3);
  const PlacementEngine engine(hs);
  const Monomer probes[] = {left(1, 1), left(1, 0), left(2, 0), left(-1, 2)};
  std::vector<double> gaps;
  for (const int n : {8, 16, 24}) {
    const KasteleynSolver solver(Region::centered_hexagon(n).minus(hs));
    double gap = 0.0;
    for (const Monomer& e : probes)
      for (const auto& L : lozenges_covering(e)) {
        if (engine.overlaps(L)) continue;
        gap = std::max(gap, std::abs(solver.probability(L) - engine.probability(L)));
      }
    gaps.push_back(gap);
  }
  return {mismatches == 0 && h222 == 20 && strictly_decreasing(gaps),
          "corpus=" + std::to_string(corpus.size()) + " mismatches=" + std::to_string(mismatches) +
              " H(2,2,2)=" + h222.get_str() + " gaps(n=8,16,24)=" + join(gaps)};
}

std::string slurp(const std::filesystem::path& p) {
  return std::filesystem::exists(p) ? read_file(p) : std::string();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lozenge_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string d = dir.string() + "/";
  write_file_atomic(dir / "pair.json", holes_to_json(ew_pair(12)).dump());
  write_file_atomic(dir / "unit.json", holes_to_json(ew_pair(2)).dump());
  LimitConfig cfg;
  cfg.positives = {{0.0, 0.0, 1}};
  cfg.negatives = {{2.0, 0.0, 1}};
  cfg.positives.push_back({0.0, 2.0, 1});
  cfg.probe = {1.0, 1.0};
  write_file_atomic(dir / "cfg.json", limit_config_to_json(cfg).dump());

  const std::vector<std::string> commands{
      "coupling --x 3 --y -7",
      "coupling --x 3 --y -7 --float",
      "coupling-table --range 8 --out " + d + "table.csv",
      "field --holes " + d + "pair.json --probes grid:-4,-10,15,9 --exact --out " + d + "field.csv",
      "coulomb --config " + d + "cfg.json --grid -0.9,-0.9,3.1,3.1,9,9 --R 4 --out " + d + "coulomb.csv",
      "converge --holes " + d + "unit.json --probe 0.5,1 --R-list 8,16 --out " + d + "converge.csv",
      "surface --holes " + d + "pair.json --margin 4 --R 6 --sheets 2 --compare --out " + d + "surface.obj",
      "verify identity31 --trials 10 --seed 7",
      "verify lemma33 --trials 5 --seed 7",
      "verify lemma34 --trials 5 --seed 7",
      "verify symmetries --range 10",
      "verify circulation --holes " + d + "pair.json --trials 5 --seed 7",
      "oracle count --region hex:3,3,3",
      "oracle compare --region hex:24,24,24 --holes " + d + "pair.json --lozenge 2,2,0",
      "oracle torus --N 4 --exact",
  };
  const std::vector<std::string> artifacts{"table.csv", "field.csv", "coulomb.csv", "converge.csv", "surface.obj"};

  auto run_all = [&](int pass) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < commands.size(); ++i) {
      const std::string log = d + "run" + std::to_string(pass) + "_" + std::to_string(i) + ".txt";
      const std::string cmd = std::string(LOZENGE_CLI) + " " + commands[i] + " > " + log + " 2>&1";
      const int status = std::system(cmd.c_str());
      out.push_back(std::to_string(status) + "\n" + slurp(log));
    }
    for (const auto& a : artifacts) out.push_back(slurp(dir / a));
    return out;
  };
  const auto first = run_all(1);
  const auto second = run_all(2);
  std::size_t differ = 0, failed = 0;
  for (std::size_t i = 0; i < first.size(); ++i) differ += first[i] == second[i] ? 0 : 1;
  for (std::size_t i = 0; i < commands.size(); ++i) failed += first[i].rfind("0\n", 0) == 0 ? 0 : 1;
  std::size_t empty = 0;
  for (const auto& a : artifacts) empty += slurp(dir / a).empty() ? 1 : 0;
  fs::remove_all(dir);
  return {differ == 0 && failed == 0 && empty == 0,
          "commands=" + std::to_string(commands.size()) + " nonzero_exit=" + std::to_string(failed) +
              " differing_outputs=" + std::to_string(differ) + " missing_artifacts=" + std::to_string(empty)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::function<Outcome()> check;
    double budget;  // seconds, 0 when unbounded
  };
  const std::vector<Criterion> criteria{
      {1, coupling_exactness, 5.0},    {2, identity31, 30.0},        {3, lemmas, 0.0},
      {4, coulomb_convergence, 60.0},  {5, probability_axioms, 0.0}, {6, circulation, 0.0},
      {7, divided_differences, 120.0}, {8, helicoid_convergence, 0.0}, {9, oracle_agreement, 0.0},
      {10, determinism, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool timely = c.budget == 0.0 || secs < c.budget;
    const bool pass = o.pass && timely;
    failures += pass ? 0 : 1;
    std::printf("criterion %d: %s %s time=%.2fs%s\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                timely ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  return failures;
}
