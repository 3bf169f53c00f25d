#include "almostconv/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace almostconv::io {

namespace {

using nlohmann::json;

struct Header {
  std::size_t dim = 0;
  double bound = 0.0;
  NormKind norm = NormKind::l2;
  std::optional<double> step;
};

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

Header parse_header(const std::string& line) {
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed header line: ") + e.what());
  }
  if (!h.is_object()) throw std::runtime_error("first line must be a header object");
  if (!h.contains("dim") || !h.contains("bound")) {
    throw std::runtime_error("header needs \"dim\" and \"bound\"");
  }
  Header out;
  const auto dim = h.at("dim").get<long long>();
  if (dim < 1) throw std::runtime_error("header dim must be >= 1");
  out.dim = static_cast<std::size_t>(dim);
  out.bound = h.at("bound").get<double>();
  if (h.contains("norm")) out.norm = parse_norm(h.at("norm").get<std::string>());
  if (h.contains("step")) out.step = h.at("step").get<double>();
  return out;
}

struct RawSamples {
  Header header;
  std::vector<double> rows;
};

RawSamples read_raw(std::istream& in) {
  RawSamples raw;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (!have_header) {
      raw.header = parse_header(line);
      have_header = true;
      continue;
    }
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (row.is_number()) row = json::array({row});
    if (!row.is_array() || row.size() != raw.header.dim) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected an array of " +
                               std::to_string(raw.header.dim) + " numbers");
    }
    for (const auto& c : row) {
      if (!c.is_number()) throw std::runtime_error("line " + std::to_string(line_no) + ": non-numeric entry");
      raw.rows.push_back(c.get<double>());
    }
  }
  if (!have_header) throw std::runtime_error("empty input: no header line");
  if (raw.rows.empty()) throw std::runtime_error("input has a header but no samples");
  return raw;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

void write_rows(std::ostream& out, std::span<const double> rows, std::size_t dim) {
  for (std::size_t i = 0; i < rows.size(); i += dim) {
    out << json(std::vector<double>(rows.begin() + i, rows.begin() + i + dim)).dump() << '\n';
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SequenceSample read_sequence(std::istream& in) {
  auto raw = read_raw(in);
  return SequenceSample(std::move(raw.rows), raw.header.dim, raw.header.bound, raw.header.norm);
}

SequenceSample read_sequence_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_sequence(in);
}

void write_sequence(std::ostream& out, const SequenceSample& x, const json& extra_header) {
  json header = {{"dim", x.dim()}, {"bound", x.bound()}, {"norm", std::string(to_string(x.norm_kind()))}};
  header.update(extra_header);
  out << header.dump() << '\n';
  write_rows(out, x.rows(), x.dim());
}

SampledFunction read_function(std::istream& in, std::optional<double> step_override) {
  auto raw = read_raw(in);
  const auto step = step_override ? step_override : raw.header.step;
  if (!step) throw std::runtime_error("function file has no \"step\"; pass one explicitly");
  return SampledFunction(std::move(raw.rows), raw.header.dim, *step, raw.header.bound,
                         raw.header.norm);
}

SampledFunction read_function_file(const std::filesystem::path& path,
                                   std::optional<double> step_override) {
  auto in = open_input(path);
  return read_function(in, step_override);
}

void write_function(std::ostream& out, const SampledFunction& f, const json& extra_header) {
  json header = {{"dim", f.dim()},
                 {"bound", f.bound()},
                 {"norm", std::string(to_string(f.norm_kind()))},
                 {"step", f.step()}};
  header.update(extra_header);
  out << header.dump() << '\n';
  write_rows(out, f.values().rows(), f.dim());
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "n,c_sliding,c_block,residual_sliding,residual_block\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.c_sliding) << ',' << format_double(r.c_block) << ','
        << format_double(r.residual_sliding) << ',' << format_double(r.residual_block) << '\n';
  }
}

std::vector<CurveRow> read_curve_csv(std::istream& in) {
  std::vector<CurveRow> rows;
  std::string line;
  bool header = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (header) {
      header = false;
      if (line.rfind("n,", 0) == 0) continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        cells.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw std::runtime_error("curve line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (cells.size() < 2) throw std::runtime_error("curve line " + std::to_string(line_no) + ": too few columns");
    CurveRow r;
    r.n = static_cast<std::size_t>(cells[0]);
    r.c_sliding = cells[1];
    if (cells.size() > 2) r.c_block = cells[2];
    if (cells.size() > 3) r.residual_sliding = cells[3];
    if (cells.size() > 4) r.residual_block = cells[4];
    rows.push_back(r);
  }
  if (rows.empty()) throw std::runtime_error("curve file has no rows");
  return rows;
}

CesaroCurve sliding_curve_from_csv(const std::vector<CurveRow>& rows) {
  CesaroCurve curve;
  curve.mode = CurveMode::sliding;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].n != i + 1) throw std::runtime_error("curve rows must list n = 1, 2, ... in order");
    curve.values.push_back(rows[i].c_sliding);
  }
  curve.bound = curve.values.front();
  return curve;
}

json to_json(const Vector& v) {
  return json(std::vector<double>(v.components().begin(), v.components().end()));
}

Vector vector_from_json(const json& j) {
  if (j.is_number()) return Vector{j.get<double>()};
  if (!j.is_array()) throw std::runtime_error("expected a number or an array of numbers");
  return Vector(j.get<std::vector<double>>());
}

json to_json(const Verdict& verdict) {
  return {{"status", to_string(verdict.status)},
          {"candidate", to_json(verdict.candidate)},
          {"residual", verdict.residual},
          {"tolerance", verdict.tolerance},
          {"divergence_floor", verdict.divergence_floor},
          {"window", verdict.window},
          {"horizon", verdict.horizon},
          {"mode", to_string(verdict.mode)}};
}

json to_json(const GeneratorSpec& s) {
  json j = {{"kind", to_string(s.kind)}, {"norm", to_string(s.norm)}};
  switch (s.kind) {
    case GeneratorKind::alternating:
    case GeneratorKind::doubling_blocks:
      j["length"] = s.length;
      j["high"] = s.high;
      j["low"] = s.low;
      break;
    case GeneratorKind::periodic: {
      j["length"] = s.length;
      json pattern = json::array();
      for (const auto& v : s.pattern) pattern.push_back(to_json(v));
      j["pattern"] = pattern;
      break;
    }
    case GeneratorKind::convergent:
      j["length"] = s.length;
      if (s.limit) j["limit"] = to_json(*s.limit);
      if (s.decay) j["decay"] = to_json(*s.decay);
      break;
    case GeneratorKind::rotation:
      j["length"] = s.length;
      j["angle"] = s.angle;
      j["radius"] = s.radius;
      break;
    case GeneratorKind::random_bounded:
      j["length"] = s.length;
      j["dim"] = s.dim;
      j["bound"] = s.bound;
      j["seed"] = s.seed;
      break;
    case GeneratorKind::square_wave:
      j["period"] = s.period;
      j["step"] = s.step;
      j["duration"] = s.duration;
      j["high"] = s.high;
      j["low"] = s.low;
      break;
  }
  return j;
}

GeneratorSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw std::runtime_error("generator spec needs a \"kind\"");
  GeneratorSpec s;
  s.kind = parse_generator_kind(j.at("kind").get<std::string>());
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  if (j.contains("norm")) s.norm = parse_norm(j.at("norm").get<std::string>());
  get("length", s.length);
  get("high", s.high);
  get("low", s.low);
  get("angle", s.angle);
  get("radius", s.radius);
  get("dim", s.dim);
  get("bound", s.bound);
  get("seed", s.seed);
  get("period", s.period);
  get("step", s.step);
  get("duration", s.duration);
  if (j.contains("pattern")) {
    for (const auto& v : j.at("pattern")) s.pattern.push_back(vector_from_json(v));
  }
  if (j.contains("limit")) s.limit = vector_from_json(j.at("limit"));
  if (j.contains("decay")) s.decay = vector_from_json(j.at("decay"));
  return s;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace almostconv::io
