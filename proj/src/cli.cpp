#include "lozenge/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lozenge/continuum.hpp"
#include "lozenge/correlation.hpp"
#include "lozenge/coupling.hpp"
#include "lozenge/errors.hpp"
#include "lozenge/io.hpp"
#include "lozenge/oracle.hpp"
#include "lozenge/parallel.hpp"
#include "lozenge/surface.hpp"
#include "lozenge/verify.hpp"

namespace lozenge {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

template <class T>
T parse_number(const std::string& s) {
  std::istringstream in(s);
  T v{};
  in >> v;
  if (in.fail() || !in.eof()) throw Error(ErrorCode::ConfigParse, "not a number: \"" + s + "\"");
  return v;
}

template <class T>
std::vector<T> parse_list(const std::string& s, std::size_t expected, const char* what) {
  const auto parts = split(s, ',');
  if (expected != 0 && parts.size() != expected)
    throw Error(ErrorCode::ConfigParse, std::string(what) + " expects " + std::to_string(expected) + " values");
  std::vector<T> v;
  for (const auto& p : parts) v.push_back(parse_number<T>(p));
  return v;
}

Window parse_window(const std::string& s) {
  const auto v = parse_list<std::int64_t>(s, 4, "--window");
  return {v[0], v[1], v[2], v[3]};
}

LozengeLocation parse_lozenge(const std::string& s) {
  const auto v = parse_list<std::int64_t>(s, 3, "--lozenge");
  LozengeDir d;
  switch (v[2]) {
    case 0: d = LozengeDir::D0; break;
    case 120: d = LozengeDir::D120; break;
    case 240: d = LozengeDir::D240; break;
    default: throw Error(ErrorCode::ConfigParse, "lozenge direction must be 0, 120 or 240");
  }
  return {{v[0], v[1]}, d};
}

std::vector<Monomer> parse_probes(const std::string& s) {
  std::vector<Monomer> out;
  if (s.rfind("grid:", 0) == 0) {
    const auto v = parse_list<std::int64_t>(s.substr(5), 4, "grid");
    for (std::int64_t a = v[0]; a <= v[2]; ++a)
      for (std::int64_t b = v[1]; b <= v[3]; ++b) out.push_back(left(a, b));
  } else if (s.rfind("list:", 0) == 0) {
    for (const auto& item : split(s.substr(5), ';')) {
      const auto v = parse_list<std::int64_t>(item, 2, "list entry");
      out.push_back(left(v[0], v[1]));
    }
  } else {
    throw Error(ErrorCode::ConfigParse, "probes must be grid:x0,y0,x1,y1 or list:x,y;x,y");
  }
  return out;
}

Region parse_region(const std::string& s) {
  if (s.rfind("hex:", 0) != 0) throw Error(ErrorCode::ConfigParse, "region must be hex:a,b,c");
  const auto v = parse_list<int>(s.substr(4), 3, "hex");
  return Region::hexagon(v[0], v[1], v[2], {-(v[0] + v[2]) / 2, -(v[1] + v[2]) / 2});
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

std::string f17(double v) { return format_double(v); }

// Folds the run-config file into the argument list; config values win.
std::vector<std::string> merge_run_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--run-config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--run-config=", 0) == 0) {
      path = args[i].substr(13);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  json cfg;
  try {
    cfg = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, path + ": " + e.what());
  }
  if (!cfg.is_object()) throw Error(ErrorCode::ConfigParse, "run config must be a JSON object");

  if (cfg.contains("command")) {
    if (!cfg["command"].is_string()) throw Error(ErrorCode::ConfigParse, "\"command\" must be a string");
    const std::string cmd = cfg["command"];
    if (args.empty() || args.front().rfind("-", 0) == 0) {
      std::vector<std::string> head{cmd};
      if (cfg.contains("mode")) head.push_back(cfg["mode"].get<std::string>());
      args.insert(args.begin(), head.begin(), head.end());
    } else if (args.front() != cmd) {
      throw Error(ErrorCode::ConfigParse, "run config is for \"" + cmd + "\", not \"" + args.front() + "\"");
    }
  }
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command" || key == "mode") continue;
    const std::string flag = "--" + key;
    for (std::size_t i = 0; i < args.size();) {
      if (args[i] == flag) {
        std::size_t j = i + 1;
        while (j < args.size() && args[j].rfind("--", 0) != 0) ++j;
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(j));
      } else if (args[i].rfind(flag + "=", 0) == 0) {
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ',';
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      args.push_back(flag);
      args.push_back(joined);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back(flag);
      args.push_back(value.dump());
    } else {
      throw Error(ErrorCode::ConfigParse, "unsupported value for \"" + key + "\"");
    }
  }
  return args;
}

struct Options {
  // coupling
  std::int64_t x = 0, y = 0;
  bool float_mode = false;
  std::string path = "rounded";
  int range = 10;
  // shared
  std::string holes, out, window, lozenge, region;
  bool exact = false;
  int trials = 20;
  std::uint64_t seed = 7;
  // field / coulomb
  std::string probes, config, grid;
  double R = 1.0;
  // converge
  std::string probe, r_list = "8,16,32,64";
  bool no_align = false;
  // surface
  int sheets = 1;
  int margin = 8;
  bool compare = false;
  // verify / oracle
  std::string mode;
  std::string method = "auto";
  int N = 0;
};

int cmd_coupling(const Options& o, std::ostream& out) {
  if (o.float_mode) {
    const FloatPath p = o.path == "asymptotic" ? FloatPath::Asymptotic : FloatPath::Rounded;
    if (o.path != "rounded" && o.path != "asymptotic") throw Error(ErrorCode::ConfigParse, "--path is rounded|asymptotic");
    out << f17(coupling_float(o.x, o.y, p)) << '\n';
  } else {
    const CouplingValue v = coupling_p(o.x, o.y);
    out << v.str() << '\n' << f17(v.value()) << '\n';
  }
  return 0;
}

int cmd_coupling_table(const Options& o, std::ostream& out) {
  if (o.range < 0) throw Error(ErrorCode::InvalidArgument, "--range must be non-negative");
  CsvWriter csv({"x", "y", "p_num", "p_den", "r_num", "r_den", "float"});
  for (std::int64_t x = -o.range; x <= o.range; ++x) {
    for (std::int64_t y = -o.range; y <= o.range; ++y) {
      const CouplingValue v = coupling_p(x, y);
      csv.row({std::to_string(x), std::to_string(y), v.rational_part.get_num().get_str(),
               v.rational_part.get_den().get_str(), v.sqrt3_over_pi_part.get_num().get_str(),
               v.sqrt3_over_pi_part.get_den().get_str(), f17(v.value())});
    }
  }
  emit(o.out, csv.str(), out);
  return 0;
}

int cmd_field(const Options& o, std::ostream& out) {
  const HoleSystem hs = load_holes(o.holes);
  require_valid(hs);
  const auto probes = parse_probes(o.probes);
  const PlacementEngine pe(hs);
  std::vector<std::optional<FieldSample>> rows(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    if (!pe.occupied(probes[i])) rows[i] = pe.field(probes[i], o.exact);
  });
  CsvWriter csv({"x", "y", "fx", "fy", "p1", "p2", "p3", "exactness", "sum_exact"});
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!rows[i]) continue;
    const auto& f = *rows[i];
    csv.row({std::to_string(probes[i].pos.a), std::to_string(probes[i].pos.b), f17(f.fx), f17(f.fy), f17(f.p1),
             f17(f.p2), f17(f.p3), f.exactness == Exactness::Exact ? "exact" : "extrapolated",
             f.sum_exact ? "1" : "0"});
  }
  emit(o.out, csv.str(), out);
  return 0;
}

int cmd_coulomb(const Options& o, std::ostream& out) {
  LimitConfig cfg = load_limit_config(o.config);
  const auto g = parse_list<double>(o.grid, 6, "--grid");
  const int nx = static_cast<int>(g[4]), ny = static_cast<int>(g[5]);
  if (nx < 1 || ny < 1) throw Error(ErrorCode::InvalidArgument, "grid counts must be positive");
  CsvWriter csv({"x", "y", "fx", "fy"});
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const double x = nx == 1 ? g[0] : g[0] + (g[2] - g[0]) * i / (nx - 1);
      const double y = ny == 1 ? g[1] : g[1] + (g[3] - g[1]) * j / (ny - 1);
      cfg.probe.x = x;
      cfg.probe.y = y;
      const Eigen::Vector2d F = coulomb_field(cfg, o.R);
      csv.row({f17(x), f17(y), f17(F.x()), f17(F.y())});
    }
  }
  emit(o.out, csv.str(), out);
  return 0;
}

std::int64_t scaled(double v, double R, bool align) {
  if (!align) return std::llround(v * R);
  return 3 * std::llround(v * R / 3.0);
}

int cmd_converge(const Options& o, std::ostream& out) {
  const HoleSystem unit = load_holes(o.holes);
  const auto p = parse_list<double>(o.probe, 2, "--probe");
  const auto rs = parse_list<double>(o.r_list, 0, "--R-list");
  const bool align = !o.no_align;
  CsvWriter csv({"R", "RFx", "RFy", "RFx_limit", "RFy_limit", "rel_error", "exactness"});
  for (double R : rs) {
    if (!(R > 0)) throw Error(ErrorCode::InvalidArgument, "R values must be positive");
    HoleSystem hs = unit;
    for (auto& mh : hs.multiholes)
      mh.anchor = {scaled(static_cast<double>(mh.anchor.a), R, align), scaled(static_cast<double>(mh.anchor.b), R, align)};
    require_valid(hs);
    const Monomer probe = left(scaled(p[0], R, align), scaled(p[1], R, align));
    const FieldSample f = discrete_field(probe, hs);
    LimitConfig cfg = limit_config_from(hs, R);
    const Eigen::Vector2d mid = cartesian_to_oblique(midpoint(probe));
    cfg.probe = {mid.x() / R, mid.y() / R, 0, 0};
    const Eigen::Vector2d lim = coulomb_field(cfg, R);
    const Eigen::Vector2d ex(f.fx, f.fy);
    const double rel = (ex - lim).norm() / lim.norm();
    csv.row({f17(R), f17(R * ex.x()), f17(R * ex.y()), f17(R * lim.x()), f17(R * lim.y()), f17(rel),
             f.exactness == Exactness::Exact ? "exact" : "extrapolated"});
  }
  emit(o.out, csv.str(), out);
  return 0;
}

int cmd_surface(const Options& o, std::ostream& out) {
  const HoleSystem hs = load_holes(o.holes);
  require_valid(hs);
  const Window w = o.window.empty() ? Window::around(hs, o.margin) : parse_window(o.window);
  MultiSheetSurface s{average_surface(hs, w), kSheetModulus, o.sheets};
  if (!o.out.empty()) export_mesh(s, o.sheets, o.out);
  if (o.compare || o.out.empty()) {
    const auto rep = compare_to_helicoids(s.base, o.R, limit_config_from(hs, o.R));
    json j{{"max_abs", rep.max_abs},     {"mean_abs", rep.mean_abs},
           {"grad_max_rel", rep.grad_max_rel}, {"nodes", rep.nodes},
           {"gradient_nodes", rep.gradient_nodes}, {"residual", s.base.residual}};
    out << j.dump(2) << '\n';
  }
  return 0;
}

int report(const VerifyResult& r, std::ostream& out) {
  out << "checks=" << r.checks << " failures=" << r.failures << " max_residual=" << f17(r.max_residual) << '\n';
  for (const auto& n : r.notes) out << "violation: " << n << '\n';
  return r.ok() ? 0 : 1;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.mode == "identity31") return report(verify_identity31(o.trials, o.seed), out);
  if (o.mode == "lemma33") return report(verify_lemma33(o.trials, o.seed), out);
  if (o.mode == "lemma34") return report(verify_lemma34(o.trials, o.seed), out);
  if (o.mode == "symmetries") return report(verify_symmetries(o.range), out);
  if (o.mode == "circulation") {
    const HoleSystem hs = load_holes(o.holes);
    require_valid(hs);
    const Window w = o.window.empty() ? Window::around(hs, o.margin) : parse_window(o.window);
    return report(verify_circulation(hs, w, o.trials, o.seed), out);
  }
  throw Error(ErrorCode::ConfigParse, "unknown verification \"" + o.mode + "\"");
}

int cmd_oracle(const Options& o, std::ostream& out) {
  HoleSystem hs;
  if (!o.holes.empty()) hs = load_holes(o.holes);
  if (o.mode == "torus") {
    if (o.N < 2) throw Error(ErrorCode::InvalidArgument, "--N must be at least 2");
    const TorusSpec ts{o.N, hs, {}};
    out << "count=" << (o.exact ? torus_count(ts).get_str() : f17(torus_count_float(ts))) << '\n';
    out << "ratio=" << f17(torus_ratio(ts)) << '\n';
    return 0;
  }
  const Region region = parse_region(o.region).minus(hs);
  if (o.mode == "count") {
    mpz_class n;
    if (o.method == "brute") n = brute_force_count(region);
    else if (o.method == "kasteleyn") n = kasteleyn_count(region);
    else if (o.method == "auto") n = count_tilings(region);
    else throw Error(ErrorCode::ConfigParse, "--method is auto|brute|kasteleyn");
    out << "triangles=" << region.size() << '\n' << "count=" << n.get_str() << '\n';
    return 0;
  }
  if (o.mode == "compare") {
    if (o.lozenge.empty()) throw Error(ErrorCode::ConfigParse, "compare needs --lozenge x,y,dir");
    const LozengeLocation L = parse_lozenge(o.lozenge);
    const double oracle = o.exact ? to_double(oracle_probability(L, region)) : oracle_probability_float(L, region);
    const double placed = placement_probability(L, hs);
    out << "oracle=" << f17(oracle) << '\n' << "placement=" << f17(placed) << '\n'
        << "gap=" << f17(std::abs(oracle - placed)) << '\n';
    return 0;
  }
  throw Error(ErrorCode::ConfigParse, "unknown oracle mode \"" + o.mode + "\"");
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Lozenge tilings with triangular holes: exact correlations, fields and surfaces"};
  app.require_subcommand(1);
  std::string run_config;
  app.add_option("--run-config", run_config, "JSON file whose keys override flags");

  auto* coupling = app.add_subcommand("coupling", "Exact or float value of the coupling function");
  coupling->add_option("--x", o.x)->required();
  coupling->add_option("--y", o.y)->required();
  coupling->add_flag("--exact", "Exact value (default)");
  coupling->add_flag("--float", o.float_mode, "Floating-point value");
  coupling->add_option("--path", o.path, "Float path: rounded|asymptotic");

  auto* table = app.add_subcommand("coupling-table", "CSV of exact coupling values on a square");
  table->add_option("--range", o.range, "Half-width of the square");
  table->add_option("--out", o.out);

  auto* field = app.add_subcommand("field", "Discrete average-orientation field on a probe set");
  field->add_option("--holes", o.holes)->required();
  field->add_option("--probes", o.probes, "grid:x0,y0,x1,y1 or list:x,y;x,y")->required();
  field->add_flag("--exact", o.exact, "Exact field arithmetic");
  field->add_option("--out", o.out);

  auto* coulomb = app.add_subcommand("coulomb", "Coulomb field of a scaled configuration on a grid");
  coulomb->add_option("--config", o.config)->required();
  coulomb->add_option("--grid", o.grid, "x0,y0,x1,y1,nx,ny")->required();
  coulomb->add_option("--R", o.R);
  coulomb->add_option("--out", o.out);

  auto* converge = app.add_subcommand("converge", "R-scaled field against the Coulomb limit");
  converge->add_option("--holes", o.holes, "Hole system at unit scale")->required();
  converge->add_option("--probe", o.probe, "Probe at unit scale, x,y")->required();
  converge->add_option("--R-list", o.r_list);
  converge->add_flag("--no-align", o.no_align, "Do not round scaled positions to multiples of 3");
  converge->add_option("--out", o.out);

  auto* surface = app.add_subcommand("surface", "Average lifting surface, mesh export and helicoid comparison");
  surface->add_option("--holes", o.holes)->required();
  surface->add_option("--window", o.window, "x0,y0,x1,y1");
  surface->add_option("--margin", o.margin, "Margin around the holes when no window is given");
  surface->add_option("--R", o.R, "Scale used for the helicoid comparison");
  surface->add_option("--sheets", o.sheets)->check(CLI::PositiveNumber);
  surface->add_option("--out", o.out, "OBJ path");
  surface->add_flag("--compare", o.compare);

  auto* verify = app.add_subcommand("verify", "Property checks");
  verify->add_option("kind", o.mode, "identity31|lemma33|lemma34|symmetries|circulation")->required();
  verify->add_option("--trials", o.trials);
  verify->add_option("--seed", o.seed);
  verify->add_option("--range", o.range);
  verify->add_option("--holes", o.holes);
  verify->add_option("--window", o.window);
  verify->add_option("--margin", o.margin);

  auto* oracle = app.add_subcommand("oracle", "Enumeration oracle");
  oracle->add_option("mode", o.mode, "compare|count|torus")->required();
  oracle->add_option("--region", o.region, "hex:a,b,c");
  oracle->add_option("--holes", o.holes);
  oracle->add_option("--lozenge", o.lozenge, "x,y,dir with dir in 0,120,240");
  oracle->add_option("--method", o.method);
  oracle->add_option("--N", o.N, "Torus side");
  oracle->add_flag("--exact", o.exact);

  try {
    args = merge_run_config(std::move(args));
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      throw Error(ErrorCode::ConfigParse, e.what());
    }
    if (coupling->parsed()) return cmd_coupling(o, out);
    if (table->parsed()) return cmd_coupling_table(o, out);
    if (field->parsed()) return cmd_field(o, out);
    if (coulomb->parsed()) return cmd_coulomb(o, out);
    if (converge->parsed()) return cmd_converge(o, out);
    if (surface->parsed()) return cmd_surface(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    err << "error: " << to_string(ErrorCode::InvalidArgument) << ": " << e.what() << '\n';
    return 2;
  }
}

}  // namespace lozenge
