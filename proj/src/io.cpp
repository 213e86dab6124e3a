#include "lozenge/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "lozenge/errors.hpp"

namespace lozenge {

using nlohmann::json;

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IOFailure, "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IOFailure, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IOFailure, "cannot move output into " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IOFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

json parse_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, path.string() + ": " + e.what());
  }
}

mpq_class parse_rational(const json& j) {
  try {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) {
      mpq_class q(j.get<std::string>(), 10);
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  throw Error(ErrorCode::ConfigParse, "expected a rational such as \"-1/2\", got " + j.dump());
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ConfigParse, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, std::string("field '") + key + "': " + e.what());
  }
}

HoleKind parse_kind(const std::string& s) {
  if (s == "E") return HoleKind::E;
  if (s == "W") return HoleKind::W;
  throw Error(ErrorCode::ConfigParse, "hole kind must be \"E\" or \"W\", got \"" + s + "\"");
}

}  // namespace

HoleSystem holes_from_json(const json& j) {
  if (!j.is_object() || !j.contains("multiholes") || !j.at("multiholes").is_array())
    throw Error(ErrorCode::ConfigParse, "holes file needs a \"multiholes\" array");
  HoleSystem hs;
  for (const auto& e : j.at("multiholes")) {
    MultiHole mh;
    mh.kind = parse_kind(field<std::string>(e, "kind"));
    mh.q = e.contains("q") ? parse_rational(e.at("q")) : mpq_class(1);
    mh.indices = e.contains("indices") ? field<std::vector<std::int64_t>>(e, "indices") : std::vector<std::int64_t>{0};
    const auto anchor = field<std::vector<std::int64_t>>(e, "anchor");
    if (anchor.size() != 2) throw Error(ErrorCode::ConfigParse, "anchor must have two coordinates");
    mh.anchor = {anchor[0], anchor[1]};
    hs.multiholes.push_back(std::move(mh));
  }
  return hs;
}

json holes_to_json(const HoleSystem& hs) {
  json arr = json::array();
  for (const auto& mh : hs.multiholes) {
    arr.push_back({{"kind", mh.kind == HoleKind::E ? "E" : "W"},
                   {"q", mh.q.get_str()},
                   {"indices", mh.indices},
                   {"anchor", {mh.anchor.a, mh.anchor.b}}});
  }
  return {{"multiholes", arr}};
}

HoleSystem load_holes(const std::filesystem::path& path) { return holes_from_json(parse_json(path)); }

LimitConfig limit_config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigParse, "limit config must be an object");
  LimitConfig cfg;
  cfg.q = j.contains("q") ? parse_rational(j.at("q")) : mpq_class(1);
  if (j.contains("positives")) {
    for (const auto& e : j.at("positives"))
      cfg.positives.push_back({field<double>(e, "x"), field<double>(e, "y"), e.value("s", 1), e.value("alpha", 0),
                               e.value("beta", 0)});
  }
  if (j.contains("negatives")) {
    for (const auto& e : j.at("negatives"))
      cfg.negatives.push_back({field<double>(e, "z"), field<double>(e, "w"), e.value("t", 1), e.value("gamma", 0),
                               e.value("delta", 0)});
  }
  if (j.contains("probe")) {
    const auto& e = j.at("probe");
    cfg.probe = {field<double>(e, "x"), field<double>(e, "y"), e.value("alpha", 0), e.value("beta", 0)};
  }
  return cfg;
}

json limit_config_to_json(const LimitConfig& cfg) {
  json pos = json::array(), neg = json::array();
  for (const auto& p : cfg.positives)
    pos.push_back({{"x", p.x}, {"y", p.y}, {"s", p.s}, {"alpha", p.alpha}, {"beta", p.beta}});
  for (const auto& n : cfg.negatives)
    neg.push_back({{"z", n.z}, {"w", n.w}, {"t", n.t}, {"gamma", n.gamma}, {"delta", n.delta}});
  return {{"q", cfg.q.get_str()},
          {"positives", pos},
          {"negatives", neg},
          {"probe", {{"x", cfg.probe.x}, {"y", cfg.probe.y}, {"alpha", cfg.probe.alpha}, {"beta", cfg.probe.beta}}}};
}

LimitConfig load_limit_config(const std::filesystem::path& path) { return limit_config_from_json(parse_json(path)); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row(header); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw Error(ErrorCode::InvalidArgument, "CSV row has the wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    out_ += cells[i];
  }
  out_ += '\n';
}

}  // namespace lozenge
