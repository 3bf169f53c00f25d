#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "almostconv/continuous.hpp"
#include "almostconv/rng.hpp"

namespace almostconv {

enum class GeneratorKind {
  alternating,
  periodic,
  convergent,
  doubling_blocks,
  rotation,
  random_bounded,
  square_wave,
};

GeneratorKind parse_generator_kind(std::string_view name);
std::string_view to_string(GeneratorKind kind);

/// Parameters for one seeded test sequence (or, for square_wave, function).
/// Fields a kind does not use are ignored.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::alternating;
  std::size_t length = 0;  // M samples; unused by square_wave
  NormKind norm = NormKind::l2;

  double high = 1.0;  // alternating, doubling_blocks, square_wave
  double low = 0.0;
  std::vector<Vector> pattern;   // periodic
  std::optional<Vector> limit;   // convergent: x_n = limit + decay / n
  std::optional<Vector> decay;
  double angle = 0.0;            // rotation: radius (cos n angle, sin n angle)
  double radius = 1.0;
  std::size_t dim = 1;           // random_bounded
  double bound = 1.0;
  std::uint64_t seed = 0;
  double period = 1.0;           // square_wave
  double step = 1e-3;
  double duration = 1.0;

  bool is_function() const { return kind == GeneratorKind::square_wave; }
};

struct GeneratedSequence {
  SequenceSample sample;
  std::optional<Vector> truth;  // strong almost limit, or none
};

struct GeneratedFunction {
  SampledFunction function;
  std::optional<Vector> truth;
};

GeneratedSequence generate_sequence(const GeneratorSpec& spec);
GeneratedFunction generate_function(const GeneratorSpec& spec);
std::variant<GeneratedSequence, GeneratedFunction> generate(const GeneratorSpec& spec);

/// Fixed set of sequence specs in dimensions 1..3 covering every sequence
/// kind, convergent and not.
std::vector<GeneratorSpec> standard_corpus(std::size_t length, std::uint64_t seed);

/// One sequence spec of a random kind with random parameters, d <= 3.
GeneratorSpec random_spec(SplitMix64& rng, std::size_t length);

/// max_j ||(1/n) sum_{i<n} x_{i+j} - v|| by the plain double loop,
/// summing left to right with no prefix sums.
double oracle_residual(const SequenceSample& x, const Vector& v, std::size_t n);

/// Same as oracle_residual over block starts j n, j >= 1.
double oracle_block_residual(const SequenceSample& x, const Vector& v, std::size_t n);

}  // namespace almostconv
