#include "almostconv/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace almostconv {

namespace {

constexpr std::pair<GeneratorKind, std::string_view> kKindNames[] = {
    {GeneratorKind::alternating, "alternating"},
    {GeneratorKind::periodic, "periodic"},
    {GeneratorKind::convergent, "convergent"},
    {GeneratorKind::doubling_blocks, "doubling_blocks"},
    {GeneratorKind::rotation, "rotation"},
    {GeneratorKind::random_bounded, "random_bounded"},
    {GeneratorKind::square_wave, "square_wave"},
};

void require_length(const GeneratorSpec& spec) {
  if (spec.length == 0) throw std::invalid_argument("generator length must be >= 1");
}

std::vector<double> scalars(std::size_t m, auto&& value_at) {
  std::vector<double> rows(m);
  for (std::size_t k = 1; k <= m; ++k) rows[k - 1] = value_at(k);
  return rows;
}

GeneratedSequence alternating(const GeneratorSpec& s) {
  auto rows = scalars(s.length, [&](std::size_t k) { return k % 2 == 1 ? s.high : s.low; });
  const double b = std::max(std::abs(s.high), std::abs(s.low));
  return {SequenceSample(std::move(rows), 1, b, s.norm), Vector{0.5 * (s.high + s.low)}};
}

GeneratedSequence periodic(const GeneratorSpec& s) {
  if (s.pattern.empty()) throw std::invalid_argument("periodic generator needs a pattern");
  const std::size_t d = s.pattern.front().dim();
  const std::size_t p = s.pattern.size();
  Vector mean = Vector::zero(d);
  double b = 0.0;
  for (const auto& v : s.pattern) {
    mean += v;
    b = std::max(b, norm(v, s.norm));
  }
  mean *= 1.0 / static_cast<double>(p);
  std::vector<double> rows;
  rows.reserve(s.length * d);
  for (std::size_t k = 0; k < s.length; ++k) {
    const auto c = s.pattern[k % p].components();
    rows.insert(rows.end(), c.begin(), c.end());
  }
  return {SequenceSample(std::move(rows), d, b, s.norm), mean};
}

GeneratedSequence convergent(const GeneratorSpec& s) {
  if (!s.limit || !s.decay) throw std::invalid_argument("convergent generator needs limit and decay");
  const Vector& v = *s.limit;
  const Vector& u = *s.decay;
  require_same_dim(v.dim(), u.dim(), "convergent generator");
  const std::size_t d = v.dim();
  std::vector<double> rows(s.length * d);
  for (std::size_t k = 1; k <= s.length; ++k) {
    for (std::size_t c = 0; c < d; ++c) rows[(k - 1) * d + c] = v[c] + u[c] / static_cast<double>(k);
  }
  // x_k lies on a segment in 1/k, so the norm peaks at k = 1 or k = M
  const double b = std::max(norm(std::span<const double>(rows.data(), d), s.norm),
                            norm(std::span<const double>(rows.data() + (s.length - 1) * d, d), s.norm));
  return {SequenceSample(std::move(rows), d, b, s.norm), v};
}

GeneratedSequence doubling_blocks(const GeneratorSpec& s) {
  // block k has length 2^k and value low for even k, high for odd k
  std::vector<double> rows;
  rows.reserve(s.length);
  for (std::size_t k = 0; rows.size() < s.length; ++k) {
    const std::size_t len = std::size_t{1} << k;
    const double value = k % 2 == 0 ? s.low : s.high;
    for (std::size_t i = 0; i < len && rows.size() < s.length; ++i) rows.push_back(value);
  }
  const double b = std::max(std::abs(s.high), std::abs(s.low));
  return {SequenceSample(std::move(rows), 1, b, s.norm), std::nullopt};
}

GeneratedSequence rotation(const GeneratorSpec& s) {
  std::vector<double> rows(2 * s.length);
  for (std::size_t k = 1; k <= s.length; ++k) {
    const double phase = static_cast<double>(k) * s.angle;
    rows[2 * (k - 1)] = s.radius * std::cos(phase);
    rows[2 * (k - 1) + 1] = s.radius * std::sin(phase);
  }
  const double b = std::abs(s.radius) * equivalence_constant(NormKind::l2, s.norm, 2);
  const double turns = s.angle / (2.0 * std::numbers::pi);
  std::optional<Vector> truth = Vector{0.0, 0.0};
  if (std::abs(turns - std::round(turns)) < 1e-12) truth = Vector{s.radius, 0.0};
  return {SequenceSample(std::move(rows), 2, b, s.norm), truth};
}

GeneratedSequence random_bounded(const GeneratorSpec& s) {
  if (s.dim == 0) throw std::invalid_argument("random_bounded needs dim >= 1");
  if (!(s.bound > 0.0)) throw std::invalid_argument("random_bounded needs bound > 0");
  // i.i.d. uniform on the cube [-a, a)^d whose corners have norm exactly B
  const double a = s.bound / norm(std::vector<double>(s.dim, 1.0), s.norm);
  SplitMix64 rng(s.seed);
  std::vector<double> rows(s.length * s.dim);
  for (double& c : rows) c = a * rng.symmetric();
  return {SequenceSample(std::move(rows), s.dim, s.bound, s.norm), std::nullopt};
}

}  // namespace

GeneratorKind parse_generator_kind(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  throw std::invalid_argument("unknown generator kind '" + std::string(name) + "'");
}

std::string_view to_string(GeneratorKind kind) {
  for (const auto& [k, n] : kKindNames) {
    if (k == kind) return n;
  }
  return "?";
}

GeneratedSequence generate_sequence(const GeneratorSpec& spec) {
  if (spec.is_function()) throw std::invalid_argument("square_wave generates a function, not a sequence");
  require_length(spec);
  switch (spec.kind) {
    case GeneratorKind::alternating: return alternating(spec);
    case GeneratorKind::periodic: return periodic(spec);
    case GeneratorKind::convergent: return convergent(spec);
    case GeneratorKind::doubling_blocks: return doubling_blocks(spec);
    case GeneratorKind::rotation: return rotation(spec);
    case GeneratorKind::random_bounded: return random_bounded(spec);
    case GeneratorKind::square_wave: break;
  }
  throw std::logic_error("unhandled generator kind");
}

GeneratedFunction generate_function(const GeneratorSpec& spec) {
  if (!spec.is_function()) throw std::invalid_argument("generator kind produces a sequence");
  if (!(spec.step > 0.0)) throw std::invalid_argument("square_wave needs step > 0");
  const double per = spec.period / spec.step;
  const auto cells = static_cast<std::size_t>(std::llround(per));
  if (cells < 2 || cells % 2 != 0 || std::abs(per - static_cast<double>(cells)) > 1e-9 * per) {
    throw std::invalid_argument("square_wave period must be an even multiple of step");
  }
  const double k_real = spec.duration / spec.step;
  const auto intervals = static_cast<std::size_t>(std::llround(k_real));
  if (std::abs(k_real - static_cast<double>(intervals)) > 1e-9 * std::max(1.0, k_real)) {
    throw std::invalid_argument("square_wave duration must be a multiple of step");
  }
  std::vector<double> rows(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) rows[k] = (k % cells) < cells / 2 ? spec.high : spec.low;
  const double b = std::max(std::abs(spec.high), std::abs(spec.low));
  return {SampledFunction(std::move(rows), 1, spec.step, b, spec.norm),
          Vector{0.5 * (spec.high + spec.low)}};
}

std::variant<GeneratedSequence, GeneratedFunction> generate(const GeneratorSpec& spec) {
  if (spec.is_function()) return generate_function(spec);
  return generate_sequence(spec);
}

std::vector<GeneratorSpec> standard_corpus(std::size_t length, std::uint64_t seed) {
  std::vector<GeneratorSpec> corpus;
  auto add = [&](GeneratorSpec s) {
    s.length = length;
    corpus.push_back(std::move(s));
  };

  auto of_kind = [](GeneratorKind kind) {
    GeneratorSpec s;
    s.kind = kind;
    return s;
  };
  add(of_kind(GeneratorKind::alternating));

  GeneratorSpec p;
  p.kind = GeneratorKind::periodic;
  p.pattern = {Vector{2.0}, Vector{-1.0}, Vector{0.5}};
  add(p);
  p.pattern = {Vector{1.0, 0.0}, Vector{0.0, 1.0}, Vector{-1.0, 0.0}, Vector{0.0, -1.0},
               Vector{0.5, 0.5}};
  add(p);
  p.pattern = {Vector{1.0, 0.0, 0.0}, Vector{0.0, 1.0, 0.0}, Vector{0.0, 0.0, 1.0},
               Vector{-0.5, -0.5, -0.5}};
  add(p);
  p.pattern = {Vector{0.7, -0.2}};
  add(p);

  GeneratorSpec c;
  c.kind = GeneratorKind::convergent;
  c.limit = Vector{0.3};
  c.decay = Vector{0.5};
  add(c);
  c.limit = Vector{1.0, -1.0};
  c.decay = Vector{0.3, 0.4};
  add(c);
  c.limit = Vector{0.2, 0.4, -0.6};
  c.decay = Vector{0.2, -0.2, 0.1};
  add(c);

  add(of_kind(GeneratorKind::doubling_blocks));
  GeneratorSpec r = of_kind(GeneratorKind::rotation);
  r.angle = 2.0 * std::numbers::pi / 8.0;
  r.radius = 0.5;
  add(r);
  r.angle = 2.0;
  r.radius = 1.0;
  add(r);

  SplitMix64 rng(seed);
  GeneratorSpec u = of_kind(GeneratorKind::random_bounded);
  // amplitude large enough that i.i.d. noise clears the usual divergence floor at N ~ 1000
  u.bound = 4.0;
  for (std::size_t d = 1; d <= 3; ++d) {
    u.dim = d;
    u.seed = rng.next();
    add(u);
  }
  return corpus;
}

GeneratorSpec random_spec(SplitMix64& rng, std::size_t length) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng.next() % n); };
  auto random_vector = [&](std::size_t d, double scale) {
    std::vector<double> v(d);
    for (double& c : v) c = scale * rng.symmetric();
    return Vector(std::move(v));
  };
  constexpr NormKind kNorms[] = {NormKind::l1, NormKind::l2, NormKind::linf};

  GeneratorSpec s;
  s.length = length;
  s.norm = kNorms[pick(3)];
  const std::size_t d = 1 + pick(3);
  switch (pick(6)) {
    case 0:
      s.kind = GeneratorKind::alternating;
      s.high = 2.0 * rng.symmetric();
      s.low = 2.0 * rng.symmetric();
      break;
    case 1: {
      s.kind = GeneratorKind::periodic;
      const std::size_t period = 1 + pick(7);
      for (std::size_t i = 0; i < period; ++i) s.pattern.push_back(random_vector(d, 1.0));
      break;
    }
    case 2:
      s.kind = GeneratorKind::convergent;
      s.limit = random_vector(d, 1.0);
      s.decay = random_vector(d, 1.0);
      break;
    case 3:
      s.kind = GeneratorKind::doubling_blocks;
      s.high = 1.0 + rng.uniform();
      s.low = -rng.uniform();
      break;
    case 4:
      s.kind = GeneratorKind::rotation;
      s.angle = 0.1 + 3.0 * rng.uniform();
      s.radius = 0.5 + rng.uniform();
      break;
    default:
      s.kind = GeneratorKind::random_bounded;
      s.dim = d;
      s.bound = 0.5 + 1.5 * rng.uniform();
      s.seed = rng.next();
      break;
  }
  return s;
}

namespace {

double oracle_window_residual(const SequenceSample& x, const Vector& v, std::size_t n,
                              std::size_t j) {
  std::vector<double> s(x.dim(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < x.dim(); ++c) s[c] += x[i + j][c];
  }
  for (std::size_t c = 0; c < x.dim(); ++c) s[c] = s[c] / static_cast<double>(n) - v[c];
  return norm(s, x.norm_kind());
}

}  // namespace

double oracle_residual(const SequenceSample& x, const Vector& v, std::size_t n) {
  require_same_dim(x.dim(), v.dim(), "oracle limit");
  if (n < 1 || n > x.size()) throw std::invalid_argument("oracle window outside 1..M");
  double worst = 0.0;
  for (std::size_t j = 1; j + n - 1 <= x.size(); ++j) {
    worst = std::max(worst, oracle_window_residual(x, v, n, j));
  }
  return worst;
}

double oracle_block_residual(const SequenceSample& x, const Vector& v, std::size_t n) {
  require_same_dim(x.dim(), v.dim(), "oracle limit");
  if (n < 1 || 2 * n - 1 > x.size()) throw std::invalid_argument("no oracle block fits");
  double worst = 0.0;
  for (std::size_t s = n; s + n - 1 <= x.size(); s += n) {
    worst = std::max(worst, oracle_window_residual(x, v, n, s));
  }
  return worst;
}

}  // namespace almostconv
