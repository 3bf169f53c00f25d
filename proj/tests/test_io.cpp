#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "almostconv/corpus.hpp"
#include "almostconv/io.hpp"

using namespace almostconv;

namespace {

SequenceSample parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_sequence(in);
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "almostconv_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("read sequence") {
  const auto x = parse("{\"dim\":2,\"bound\":3,\"norm\":\"l1\"}\n[1,2]\n\n[0.5,-0.5]\n");
  CHECK(x.size() == 2);
  CHECK(x.dim() == 2);
  CHECK(x.bound() == 3.0);
  CHECK(x.norm_kind() == NormKind::l1);
  CHECK(x.at(2) == Vector{0.5, -0.5});

  const auto scalar = parse("{\"dim\":1,\"bound\":1}\n1\n[0]\n-1\n");
  CHECK(scalar.size() == 3);
  CHECK(scalar.norm_kind() == NormKind::l2);
  CHECK(scalar.at(3)[0] == -1.0);
}

TEST_CASE("read sequence errors") {
  CHECK_THROWS_AS(parse(""), std::runtime_error);
  CHECK_THROWS_AS(parse("\n\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("{\"dim\":1,\"bound\":1}\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("{\"dim\":0,\"bound\":1}\n[]\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("{\"bound\":1}\n[1]\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("{\"dim\":2,\"bound\":1}\n[1]\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("{\"dim\":1,\"bound\":1}\n[\"a\"]\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("{\"dim\":1,\"bound\":1}\n[1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("[1,2]\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("{\"dim\":1,\"bound\":1,\"norm\":\"l7\"}\n[1]\n"), std::invalid_argument);
  // bound violation is the library's validation
  CHECK_THROWS_AS(parse("{\"dim\":1,\"bound\":1}\n[2]\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::read_sequence_file(scratch("missing.jsonl")), std::runtime_error);
}

TEST_CASE("sequence write/read round trip is exact") {
  SplitMix64 rng(88);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = generate_sequence(random_spec(rng, 64)).sample;
    std::ostringstream out;
    io::write_sequence(out, x, {{"note", "t"}});
    std::istringstream in(out.str());
    const auto y = io::read_sequence(in);
    CHECK(y.size() == x.size());
    CHECK(y.dim() == x.dim());
    CHECK(y.bound() == x.bound());
    CHECK(y.norm_kind() == x.norm_kind());
    for (std::size_t k = 1; k <= x.size(); ++k) CHECK(y.at(k) == x.at(k));
  }
}

TEST_CASE("function files") {
  const SampledFunction f(std::vector<double>{0.0, 0.5, 1.0}, 1, 0.25, 1.0, NormKind::l2);
  std::ostringstream out;
  io::write_function(out, f);
  std::istringstream in(out.str());
  const auto g = io::read_function(in);
  CHECK(g.step() == 0.25);
  CHECK(g.intervals() == 2);
  CHECK(g.value(1)[0] == 0.5);

  std::istringstream no_step("{\"dim\":1,\"bound\":1}\n0\n1\n");
  CHECK_THROWS_AS(io::read_function(no_step), std::runtime_error);
  std::istringstream override_step("{\"dim\":1,\"bound\":1,\"step\":2}\n0\n1\n0\n");
  CHECK(io::read_function(override_step, 0.5).duration() == 1.0);
}

TEST_CASE("curve csv") {
  std::vector<io::CurveRow> rows = {{1, 1.0, 1.0, 0.5, 0.5}, {2, 0.1 + 0.2, 0.0, 1.0 / 3, 0.0}};
  std::ostringstream out;
  io::write_curve_csv(out, rows);
  CHECK(out.str().rfind("n,c_sliding,c_block,residual_sliding,residual_block\n", 0) == 0);
  std::istringstream in(out.str());
  const auto back = io::read_curve_csv(in);
  REQUIRE(back.size() == 2);
  CHECK(back[1].c_sliding == 0.1 + 0.2);
  CHECK(back[1].residual_sliding == 1.0 / 3);

  const auto curve = io::sliding_curve_from_csv(back);
  CHECK(curve.max_window() == 2);
  CHECK(curve.bound == 1.0);

  std::istringstream bare("1,0.5\n2,0.25\n");
  CHECK(io::read_curve_csv(bare).size() == 2);
  std::istringstream bad("n,c\n1,x\n");
  CHECK_THROWS_AS(io::read_curve_csv(bad), std::runtime_error);
  std::istringstream empty("n,c_sliding\n");
  CHECK_THROWS_AS(io::read_curve_csv(empty), std::runtime_error);
  CHECK_THROWS_AS(io::sliding_curve_from_csv({{2, 1.0}}), std::runtime_error);
}

TEST_CASE("generator specs survive json") {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_spec(rng, 50);
    const auto back = io::spec_from_json(io::to_json(s));
    CHECK(io::to_json(back) == io::to_json(s));
    std::ostringstream a, b;
    io::write_sequence(a, generate_sequence(s).sample);
    io::write_sequence(b, generate_sequence(back).sample);
    CHECK(a.str() == b.str());
  }
  CHECK_THROWS_AS(io::spec_from_json(nlohmann::json::object()), std::runtime_error);
  CHECK(io::vector_from_json(2.5) == Vector{2.5});
  CHECK_THROWS_AS(io::vector_from_json("x"), std::runtime_error);
}

TEST_CASE("atomic write replaces content") {
  const auto path = scratch("atomic.txt");
  io::write_file_atomic(path, "first");
  io::write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text == "second");
  for (const auto& e : std::filesystem::directory_iterator(path.parent_path())) {
    CHECK(e.path().filename().string().find(".tmp.") == std::string::npos);
  }
  CHECK_THROWS_AS(io::write_file_atomic(scratch("no/such/dir.txt"), "x"), std::runtime_error);
}
