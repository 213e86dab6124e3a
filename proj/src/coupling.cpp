#include "lozenge/coupling.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace lozenge {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& p) const noexcept {
    const auto h1 = static_cast<std::uint64_t>(p.first) * 0x9E3779B97F4A7C15ULL;
    const auto h2 = static_cast<std::uint64_t>(p.second) + 0x632BE59BD9B4E019ULL;
    return static_cast<std::size_t>(h1 ^ (h2 << 17) ^ (h2 >> 13));
  }
};

using Key = std::pair<std::int64_t, std::int64_t>;

template <class V>
class ConcurrentMemo {
 public:
  bool find(const Key& k, V* out) const {
    std::shared_lock lock(mu_);
    const auto it = map_.find(k);
    if (it == map_.end()) return false;
    *out = it->second;
    return true;
  }
  void insert(const Key& k, const V& v) {
    std::unique_lock lock(mu_);
    map_.emplace(k, v);
  }
  std::size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<Key, V, PairHash> map_;
};

ConcurrentMemo<CouplingValue>& exact_memo() {
  static ConcurrentMemo<CouplingValue> memo;
  return memo;
}

ConcurrentMemo<double>& float_memo() {
  static ConcurrentMemo<double> memo;
  return memo;
}

mpz_class lcm_upto(unsigned long n) {
  mpz_class l = 1;
  std::vector<bool> composite(n + 1, false);
  for (unsigned long p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (unsigned long m = p * p; m <= n; m += p) composite[m] = true;
    unsigned long pk = p;
    while (pk <= n / p) pk *= p;
    l *= pk;
  }
  return l;
}

// chi(j) = sin(2 pi j / 3) * 2/sqrt(3)
int chi(std::int64_t j) {
  const auto m = ((j % 3) + 3) % 3;
  return m == 0 ? 0 : (m == 1 ? 1 : -1);
}

// P(x, y) for x <= -1 by expanding (-1-t)^N, N = -x-1.
CouplingValue coupling_reduced(std::int64_t x, std::int64_t y) {
  const auto n = static_cast<unsigned long>(-x - 1);
  const std::int64_t span = std::max<std::int64_t>(std::abs(y), std::abs(static_cast<std::int64_t>(n) - y));
  const mpz_class l = lcm_upto(static_cast<unsigned long>(std::max<std::int64_t>(span, 1)));

  mpz_class binom = 1;
  mpz_class sum = 0;
  mpz_class term;
  mpz_class binom_at_y = 0;
  for (unsigned long k = 0; k <= n; ++k) {
    const std::int64_t j = static_cast<std::int64_t>(k) - y;
    if (j == 0) {
      binom_at_y = binom;
    } else if (const int c = chi(j); c != 0) {
      mpz_divexact_ui(term.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(std::abs(j)));
      term *= binom;
      if ((c > 0) == (j > 0)) sum += term;
      else sum -= term;
    }
    if (k < n) {
      mpz_mul_ui(binom.get_mpz_t(), binom.get_mpz_t(), n - k);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), k + 1);
    }
  }
  const int sgn = (n % 2 == 0) ? 1 : -1;
  CouplingValue v;
  v.rational_part = mpq_class(binom_at_y * sgn, 3);
  v.rational_part.canonicalize();
  v.sqrt3_over_pi_part = mpq_class(-sgn * sum, 2 * l);
  v.sqrt3_over_pi_part.canonicalize();
  return v;
}

}  // namespace

std::complex<double> zeta_pow(std::int64_t k) {
  switch (((k % 3) + 3) % 3) {
    case 0: return {1.0, 0.0};
    case 1: return kZeta;
    default: return std::conj(kZeta);
  }
}

std::pair<std::int64_t, std::int64_t> reduce_domain(std::int64_t x, std::int64_t y) {
  if (x <= -1) return {x, y};
  if (y <= -1) return {y, x};
  return {-x - y - 1, x};
}

CouplingValue coupling_p(std::int64_t x, std::int64_t y) {
  const Key key = reduce_domain(x, y);
  CouplingValue v;
  if (exact_memo().find(key, &v)) return v;
  v = coupling_reduced(key.first, key.second);
  exact_memo().insert(key, v);
  return v;
}

double coupling_leading(std::int64_t x, std::int64_t y) {
  if (x == 0 && y == 0) throw Error(ErrorCode::DegenerateDirection, "leading term undefined at the origin");
  const auto f = zeta_pow(x - y - 1) / (static_cast<double>(-x) + static_cast<double>(y) * kZeta);
  return f.imag() / std::numbers::pi;
}

double coupling_float(std::int64_t x, std::int64_t y, FloatPath path) {
  if (path == FloatPath::Asymptotic && std::abs(x) + std::abs(y) > 400) return coupling_leading(x, y);
  const Key key = reduce_domain(x, y);
  double v = 0.0;
  if (float_memo().find(key, &v)) return v;
  v = coupling_p(key.first, key.second).value();
  float_memo().insert(key, v);
  return v;
}

std::size_t coupling_cache_size() { return exact_memo().size(); }

double u0_closed_form(std::int64_t a, std::int64_t b) {
  return chi(a - b - 1) * std::numbers::sqrt3 / (2.0 * std::numbers::pi);
}

namespace {

// Solves sum_j h_i^j u_j = y_i exactly.
std::vector<CouplingValue> solve_vandermonde(const std::vector<mpq_class>& h, std::vector<CouplingValue> y) {
  const std::size_t n = h.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = p;
      p *= h[i];
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (m[piv][c] == 0) ++piv;
    std::swap(m[piv], m[c]);
    std::swap(y[piv], y[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
      y[r] -= y[c] * f;
    }
  }
  std::vector<CouplingValue> u(n);
  for (std::size_t i = n; i-- > 0;) {
    CouplingValue acc = y[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= u[j] * m[i][j];
    u[i] = acc / m[i][i];
  }
  return u;
}

struct FitKey {
  std::int64_t a, b, base;
  int terms;
  auto operator<=>(const FitKey&) const = default;
};

std::vector<double> fit_series(std::int64_t a, std::int64_t b, std::int64_t base, int terms) {
  static std::mutex mu;
  static std::map<FitKey, std::vector<double>> cache;
  const FitKey key{a, b, base, terms};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<mpq_class> h;
  std::vector<CouplingValue> y;
  for (int i = 0; i < terms; ++i) {
    const std::int64_t r = base + i * (base / 4);
    const std::int64_t n3 = 3 * r;
    h.emplace_back(1, static_cast<unsigned long>(n3));
    y.push_back(coupling_p(-n3 - 1 + a, -1 + b) * mpq_class(static_cast<long>(n3)));
  }
  const auto u = solve_vandermonde(h, std::move(y));
  std::vector<double> out;
  for (const auto& v : u) out.push_back(v.value());
  std::lock_guard lock(mu);
  cache.emplace(key, out);
  return out;
}

}  // namespace

UCoefficient u_coefficient(int s, std::int64_t a, std::int64_t b, const ExtrapolationParams& params) {
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "series index must be nonnegative");
  if (params.base_radius < 4 || params.base_radius % 4 != 0)
    throw Error(ErrorCode::InvalidArgument, "base radius must be a positive multiple of 4");
  const int terms = s + params.guard_terms + 1;
  std::vector<double> est;
  for (const std::int64_t base : {params.base_radius, 2 * params.base_radius, 4 * params.base_radius})
    est.push_back(fit_series(a, b, base, terms)[s]);
  UCoefficient u{s, a, b, est[2], std::abs(est[2] - est[1])};
  if (u.error > params.tolerance * (1.0 + std::abs(u.value)))
    throw Error(ErrorCode::IllConditioned, "U_" + std::to_string(s) + " fit error " + std::to_string(u.error));
  return u;
}

namespace detail {
void check_nodes(const DividedDifferenceSpec& spec) {
  if (spec.order < 0) throw Error(ErrorCode::InvalidArgument, "negative order");
  if (static_cast<int>(spec.nodes.size()) < spec.order + 1)
    throw Error(ErrorCode::InsufficientNodes, "need order+1 nodes");
  for (std::size_t i = 1; i < spec.nodes.size(); ++i)
    if (spec.nodes[i] <= spec.nodes[i - 1]) throw Error(ErrorCode::InvalidArgument, "nodes must increase");
}
}  // namespace detail

namespace {
std::int64_t scaled_integer(const mpq_class& q, std::int64_t v) {
  const mpq_class p = q * mpq_class(static_cast<long>(v));
  if (p.get_den() != 1) throw Error(ErrorCode::NonIntegerIndex, "q times a node is not an integer");
  return p.get_num().get_si();
}
}  // namespace

CouplingValue dd_p_exact(int k, int l, std::int64_t r, std::int64_t s, const mpq_class& q,
                         std::span<const std::int64_t> a_nodes, std::span<const std::int64_t> b_nodes) {
  DividedDifferenceSpec sx{{a_nodes.begin(), a_nodes.end()}, k};
  DividedDifferenceSpec sy{{b_nodes.begin(), b_nodes.end()}, l};
  return divided_difference(
      [&](std::int64_t y) {
        return divided_difference(
            [&](std::int64_t x) { return coupling_p(r + x + y, s + scaled_integer(q, x) + scaled_integer(q, y)); },
            sx);
      },
      sy);
}

double dd_p_leading(int k, int l, std::int64_t r, std::int64_t s, const mpq_class& q) {
  if (r == 0 && s == 0) throw Error(ErrorCode::DegenerateDirection, "(r,s) = (0,0)");
  if (k < 0 || l < 0) throw Error(ErrorCode::InvalidArgument, "negative order");
  const double qd = to_double(q);
  const int m = k + l;
  const std::complex<double> base = static_cast<double>(-r) + static_cast<double>(s) * kZeta;
  const std::complex<double> f =
      zeta_pow(r - s - 1) * std::pow(1.0 - qd * kZeta, m) / std::pow(base, m + 1);
  double binom = 1.0;
  for (int i = 1; i <= k; ++i) binom = binom * (l + i) / i;
  return binom * f.imag() / std::numbers::pi;
}

}  // namespace lozenge
