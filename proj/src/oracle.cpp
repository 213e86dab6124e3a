#include "lozenge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <unordered_map>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "lozenge/determinant.hpp"
#include "lozenge/errors.hpp"

namespace lozenge {

namespace {

bool node_inside(ObliqueCoord v, int a, int b, int c, ObliqueCoord o) {
  const std::int64_t h = v.a - o.a, g = v.b - o.b;
  return h >= 0 && h <= a + c && g >= 0 && g <= b + c && h + g >= c && h + g <= a + b + c;
}

// Bipartite graph between lefts (rows) and rights (columns); each edge carries
// the seam crossings used for torus twists.
struct Edge {
  int left;
  int right;
  bool xseam = false;
  bool yseam = false;
};

struct Bipartite {
  std::vector<Monomer> lefts, rights;
  std::vector<Edge> edges;
};

Bipartite planar_graph(const Region& r) {
  Bipartite g;
  std::map<Monomer, int> ridx;
  for (const auto& m : r.triangles()) {
    if (m.orientation == Orientation::Left) {
      g.lefts.push_back(m);
    } else {
      ridx.emplace(m, static_cast<int>(g.rights.size()));
      g.rights.push_back(m);
    }
  }
  for (int i = 0; i < static_cast<int>(g.lefts.size()); ++i) {
    for (const auto& L : lozenges_covering(g.lefts[i])) {
      auto it = ridx.find(L.right());
      if (it != ridx.end()) g.edges.push_back({i, it->second});
    }
  }
  return g;
}

// Counts perfect matchings by always covering the lowest free vertex.
mpz_class enumerate_matchings(const Bipartite& g) {
  const int nl = static_cast<int>(g.lefts.size());
  const int nr = static_cast<int>(g.rights.size());
  if (nl != nr) return 0;
  if (nl + nr > 64) throw Error(ErrorCode::InvalidArgument, "brute force limited to 64 triangles");
  std::vector<std::vector<int>> adj(nl);
  for (const auto& e : g.edges) adj[e.left].push_back(e.right);
  std::unordered_map<std::uint64_t, mpz_class> memo;
  // mask over rights only; lefts are consumed in index order.
  auto rec = [&](auto&& self, int i, std::uint64_t used) -> mpz_class {
    if (i == nl) return 1;
    const std::uint64_t key = used | (static_cast<std::uint64_t>(i) << 58);
    if (nr <= 58) {
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    mpz_class total = 0;
    for (int j : adj[i]) {
      if (used >> j & 1U) continue;
      total += self(self, i + 1, used | (std::uint64_t{1} << j));
    }
    if (nr <= 58) memo.emplace(key, total);
    return total;
  };
  return rec(rec, 0, 0);
}

template <class Scalar>
DenseMatrix<Scalar> dense_kasteleyn(const Bipartite& g, bool tx = false, bool ty = false) {
  const auto n = static_cast<Eigen::Index>(g.lefts.size());
  DenseMatrix<Scalar> k = DenseMatrix<Scalar>::Constant(n, n, Scalar(0));
  for (const auto& e : g.edges) {
    int w = ((tx && e.xseam) != (ty && e.yseam)) ? -1 : 1;
    k(e.left, e.right) += Scalar(w);
  }
  return k;
}

Eigen::SparseMatrix<double> sparse_kasteleyn(const Bipartite& g, bool tx = false, bool ty = false) {
  const auto n = static_cast<Eigen::Index>(g.lefts.size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    double w = ((tx && e.xseam) != (ty && e.yseam)) ? -1.0 : 1.0;
    trips.emplace_back(e.left, e.right, w);
  }
  Eigen::SparseMatrix<double> k(n, n);
  k.setFromTriplets(trips.begin(), trips.end());
  k.makeCompressed();
  return k;
}

// Row i matched to column match[i]; empty when no perfect matching exists.
std::vector<int> find_matching(const Bipartite& g) {
  const int n = static_cast<int>(g.lefts.size());
  if (n != static_cast<int>(g.rights.size())) return {};
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges) adj[e.left].push_back(e.right);
  std::vector<int> row_of(n, -1), col_of(n, -1);
  std::vector<int> seen(n, -1);
  auto augment = [&](auto&& self, int u, int stamp) -> bool {
    for (int v : adj[u]) {
      if (seen[v] == stamp) continue;
      seen[v] = stamp;
      if (row_of[v] < 0 || self(self, row_of[v], stamp)) {
        row_of[v] = u;
        col_of[u] = v;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < n; ++u)
    if (!augment(augment, u, u)) return {};
  return col_of;
}

int permutation_sign(const std::vector<int>& p) {
  std::vector<char> done(p.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !done[j]; j = static_cast<std::size_t>(p[j])) {
      done[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

int reference_term_sign(const Bipartite& g, const std::vector<int>& match, bool tx, bool ty) {
  int s = permutation_sign(match);
  for (const auto& e : g.edges) {
    if (match[e.left] != e.right) continue;
    if ((tx && e.xseam) != (ty && e.yseam)) s = -s;
  }
  return s;
}

std::int64_t mod(std::int64_t v, int n) {
  const std::int64_t r = v % n;
  return r < 0 ? r + n : r;
}

Monomer reduce(const Monomer& m, int n) { return {m.orientation, {mod(m.pos.a, n), mod(m.pos.b, n)}}; }

Bipartite torus_graph(const TorusSpec& ts) {
  const auto tri = torus_triangles(ts);
  Bipartite g;
  std::map<Monomer, int> ridx;
  for (const auto& m : tri) {
    if (m.orientation == Orientation::Left) {
      g.lefts.push_back(m);
    } else {
      ridx.emplace(m, static_cast<int>(g.rights.size()));
      g.rights.push_back(m);
    }
  }
  const int n = ts.N;
  for (int i = 0; i < static_cast<int>(g.lefts.size()); ++i) {
    const auto p = g.lefts[i].pos;
    const std::array<std::pair<Monomer, Edge>, 3> nbrs{{
        {right(p.a, p.b), {i, 0, false, false}},
        {right(mod(p.a - 1, n), p.b), {i, 0, p.a == 0, false}},
        {right(p.a, mod(p.b - 1, n)), {i, 0, false, p.b == 0}},
    }};
    for (auto [m, e] : nbrs) {
      auto it = ridx.find(m);
      if (it == ridx.end()) continue;
      e.right = it->second;
      g.edges.push_back(e);
    }
  }
  return g;
}

struct LogSigned {
  int sign;
  double log_abs;
};

LogSigned sparse_det(const Eigen::SparseMatrix<double>& k) {
  if (k.rows() == 0) return {1, 0.0};
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(k);
  lu.factorize(k);
  if (lu.info() != Eigen::Success) return {0, -std::numeric_limits<double>::infinity()};
  return {static_cast<int>(lu.signDeterminant()), lu.logAbsDeterminant()};
}

// log of sum_h |S_h| given the four normalised twisted determinants.
double combine_twists(const std::array<LogSigned, 4>& d) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& x : d)
    if (x.sign != 0) top = std::max(top, x.log_abs);
  if (!std::isfinite(top)) return top;
  double total = 0.0;
  for (int hx = 0; hx < 2; ++hx) {
    for (int hy = 0; hy < 2; ++hy) {
      double s = 0.0;
      for (int t = 0; t < 4; ++t) {
        const int tx = t >> 1, ty = t & 1;
        const double sgn = ((tx * hx + ty * hy) % 2) ? -1.0 : 1.0;
        s += sgn * d[t].sign * std::exp(d[t].log_abs - top);
      }
      total += std::abs(s) / 4.0;
    }
  }
  return top + std::log(total);
}

}  // namespace

Region::Region(std::vector<Monomer> triangles) : t_(std::move(triangles)) {
  std::sort(t_.begin(), t_.end());
  t_.erase(std::unique(t_.begin(), t_.end()), t_.end());
}

Region Region::hexagon(int a, int b, int c, ObliqueCoord o) {
  if (a < 0 || b < 0 || c < 0) throw Error(ErrorCode::InvalidArgument, "hexagon sides must be non-negative");
  std::vector<Monomer> tri;
  for (std::int64_t X = o.a - 1; X <= o.a + a + c + 1; ++X) {
    for (std::int64_t Y = o.b - 1; Y <= o.b + b + c + 1; ++Y) {
      for (const Monomer m : {left(X, Y), right(X, Y)}) {
        const auto vs = vertices(m);
        if (std::all_of(vs.begin(), vs.end(), [&](ObliqueCoord v) { return node_inside(v, a, b, c, o); }))
          tri.push_back(m);
      }
    }
  }
  return Region(std::move(tri));
}

Region Region::centered_hexagon(int n) { return hexagon(n, n, n, {-n, -n}); }

Region Region::minus(std::span<const Monomer> removed) const {
  std::vector<Monomer> out;
  out.reserve(t_.size());
  std::vector<Monomer> rem(removed.begin(), removed.end());
  std::sort(rem.begin(), rem.end());
  for (const auto& m : rem)
    if (!contains(m)) throw Error(ErrorCode::HoleTooLarge, "removed triangle lies outside the region");
  std::set_difference(t_.begin(), t_.end(), rem.begin(), rem.end(), std::back_inserter(out));
  if (out.size() + rem.size() != t_.size())
    throw Error(ErrorCode::OverlappingHoles, "removed triangles overlap");
  return Region(std::move(out));
}

Region Region::minus(const HoleSystem& hs) const {
  const auto tri = hs.triangles();
  return minus(std::span<const Monomer>(tri));
}

Region Region::minus(const LozengeLocation& L) const {
  const auto tri = L.monomers();
  return minus(std::span<const Monomer>(tri));
}

bool Region::contains(const Monomer& m) const { return std::binary_search(t_.begin(), t_.end(), m); }

mpz_class brute_force_count(const Region& r) {
  if (r.balance() != 0) return 0;
  return enumerate_matchings(planar_graph(r));
}

mpz_class kasteleyn_count(const Region& r) {
  if (r.balance() != 0) return 0;
  const auto g = planar_graph(r);
  mpz_class d = bareiss_determinant(dense_kasteleyn<mpz_class>(g));
  return abs(d);
}

mpz_class count_tilings(const Region& r) {
  if (r.size() <= 40) return brute_force_count(r);
  return kasteleyn_count(r);
}

double log_count_tilings(const Region& r) {
  if (r.balance() != 0) return -std::numeric_limits<double>::infinity();
  return sparse_det(sparse_kasteleyn(planar_graph(r))).log_abs;
}

mpq_class oracle_probability(const LozengeLocation& L, const Region& r) {
  if (!r.contains(L.left()) || !r.contains(L.right())) return 0;
  const mpz_class total = count_tilings(r);
  if (total == 0) throw Error(ErrorCode::UnpairableConfiguration, "region has no tilings");
  mpq_class p(count_tilings(r.minus(L)), total);
  p.canonicalize();
  return p;
}

struct KasteleynSolver::Impl {
  Bipartite g;
  std::map<Monomer, int> lidx, ridx;
  Eigen::SparseMatrix<double> k;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

KasteleynSolver::KasteleynSolver(const Region& r) : impl_(new Impl) {
  if (r.balance() != 0) {
    delete impl_;
    throw Error(ErrorCode::UnpairableConfiguration, "region is not balanced");
  }
  impl_->g = planar_graph(r);
  for (int i = 0; i < static_cast<int>(impl_->g.lefts.size()); ++i) impl_->lidx.emplace(impl_->g.lefts[i], i);
  for (int i = 0; i < static_cast<int>(impl_->g.rights.size()); ++i) impl_->ridx.emplace(impl_->g.rights[i], i);
  impl_->k = sparse_kasteleyn(impl_->g);
  impl_->lu.analyzePattern(impl_->k);
  impl_->lu.factorize(impl_->k);
  if (impl_->lu.info() != Eigen::Success) {
    delete impl_;
    throw Error(ErrorCode::UnpairableConfiguration, "region has no tilings");
  }
}

KasteleynSolver::~KasteleynSolver() { delete impl_; }

double KasteleynSolver::probability(const LozengeLocation& L) const {
  auto li = impl_->lidx.find(L.left());
  auto ri = impl_->ridx.find(L.right());
  if (li == impl_->lidx.end() || ri == impl_->ridx.end()) return 0.0;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(impl_->k.rows());
  e(li->second) = 1.0;
  const Eigen::VectorXd x = impl_->lu.solve(e);
  return std::abs(x(ri->second));
}

double KasteleynSolver::log_abs_det() const { return impl_->lu.logAbsDeterminant(); }

double oracle_probability_float(const LozengeLocation& L, const Region& r) {
  return KasteleynSolver(r).probability(L);
}

std::vector<Monomer> torus_triangles(const TorusSpec& ts) {
  if (ts.N < 2) throw Error(ErrorCode::InvalidArgument, "torus side must be at least 2");
  std::vector<Monomer> removed;
  for (const auto& m : ts.holes.triangles()) removed.push_back(reduce(m, ts.N));
  for (const auto& m : ts.removed) removed.push_back(reduce(m, ts.N));
  std::sort(removed.begin(), removed.end());
  if (std::adjacent_find(removed.begin(), removed.end()) != removed.end())
    throw Error(ErrorCode::HoleTooLarge, "holes overlap after wrapping on the torus");
  std::vector<Monomer> out;
  for (std::int64_t X = 0; X < ts.N; ++X) {
    for (std::int64_t Y = 0; Y < ts.N; ++Y) {
      for (const Monomer m : {left(X, Y), right(X, Y)})
        if (!std::binary_search(removed.begin(), removed.end(), m)) out.push_back(m);
    }
  }
  return out;
}

mpz_class torus_brute_force(const TorusSpec& ts) { return enumerate_matchings(torus_graph(ts)); }

mpz_class torus_count(const TorusSpec& ts) {
  const auto g = torus_graph(ts);
  if (g.lefts.size() != g.rights.size()) return 0;
  if (g.lefts.empty()) return 1;
  const auto match = find_matching(g);
  if (match.empty()) return 0;
  std::array<mpz_class, 4> d;
  for (int t = 0; t < 4; ++t) {
    const bool tx = t >> 1, ty = t & 1;
    d[t] = bareiss_determinant(dense_kasteleyn<mpz_class>(g, tx, ty)) * reference_term_sign(g, match, tx, ty);
  }
  mpz_class total = 0;
  for (int hx = 0; hx < 2; ++hx) {
    for (int hy = 0; hy < 2; ++hy) {
      mpz_class s = 0;
      for (int t = 0; t < 4; ++t) {
        const int tx = t >> 1, ty = t & 1;
        if ((tx * hx + ty * hy) % 2) s -= d[t];
        else s += d[t];
      }
      total += abs(s);
    }
  }
  return total / 4;
}

namespace {

double torus_log_count(const TorusSpec& ts) {
  const auto g = torus_graph(ts);
  if (g.lefts.size() != g.rights.size()) return -std::numeric_limits<double>::infinity();
  if (g.lefts.empty()) return 0.0;
  const auto match = find_matching(g);
  if (match.empty()) return -std::numeric_limits<double>::infinity();
  std::array<LogSigned, 4> d;
  for (int t = 0; t < 4; ++t) {
    const bool tx = t >> 1, ty = t & 1;
    d[t] = sparse_det(sparse_kasteleyn(g, tx, ty));
    d[t].sign *= reference_term_sign(g, match, tx, ty);
  }
  return combine_twists(d);
}

}  // namespace

double torus_count_float(const TorusSpec& ts) { return std::exp(torus_log_count(ts)); }

double torus_ratio(const TorusSpec& ts) {
  TorusSpec empty{ts.N, {}, {}};
  return std::exp(torus_log_count(ts) - torus_log_count(empty));
}

}  // namespace lozenge
