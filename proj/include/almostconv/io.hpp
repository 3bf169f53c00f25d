#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "almostconv/corpus.hpp"

namespace almostconv::io {

/// JSON Lines: header {"dim":d,"bound":B,"norm":"l2"} then one array per sample.
SequenceSample read_sequence(std::istream& in);
SequenceSample read_sequence_file(const std::filesystem::path& path);
/// Keys in `extra_header` are merged into the header object.
void write_sequence(std::ostream& out, const SequenceSample& x,
                    const nlohmann::json& extra_header = nlohmann::json::object());

/// As read_sequence, with "step" in the header. An explicit override
/// replaces the header value and is required when the header has none.
SampledFunction read_function(std::istream& in, std::optional<double> step_override = {});
SampledFunction read_function_file(const std::filesystem::path& path,
                                   std::optional<double> step_override = {});
void write_function(std::ostream& out, const SampledFunction& f,
                    const nlohmann::json& extra_header = nlohmann::json::object());

/// One row of the curve CSV.
struct CurveRow {
  std::size_t n = 0;
  double c_sliding = 0.0;
  double c_block = 0.0;
  double residual_sliding = 0.0;
  double residual_block = 0.0;
};

/// Columns n,c_sliding,c_block,residual_sliding,residual_block.
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);
std::vector<CurveRow> read_curve_csv(std::istream& in);

/// Sliding curve recovered from a curve CSV. B is taken as c_1, which equals
/// the sup norm of the sample the curve was computed from.
CesaroCurve sliding_curve_from_csv(const std::vector<CurveRow>& rows);

nlohmann::json to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Verdict& verdict);

nlohmann::json to_json(const GeneratorSpec& spec);
GeneratorSpec spec_from_json(const nlohmann::json& j);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace almostconv::io
