#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "recordkit/cli.hpp"
#include "recordkit/extract.hpp"
#include "recordkit/io.hpp"
#include "recordkit/verify.hpp"

using namespace recordkit;
using Catch::Approx;

namespace {

std::filesystem::path tmp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("recordkit_test_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"recordkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("distribution shorthand grammar") {
  const auto e = io::parse_distribution_text("exp:2.0");
  CHECK(std::get<Exponential>(e.variant()).theta == 2.0);
  const auto u = io::parse_distribution_text(" unif:0,1 ");
  CHECK(std::get<UniformCont>(u.variant()).b == 1.0);
  const auto g = io::parse_distribution_text("geometric:0.25");
  CHECK(std::get<Geometric>(g.variant()).p == 0.25);
  const auto f = io::parse_distribution_text("finite:1=0.5,3=0.5");
  CHECK(std::get<FiniteDiscrete>(f.variant()).support == std::vector<double>{1, 3});

  SECTION("JSON form") {
    const auto j = io::parse_distribution_text(R"({"dist":"exponential","theta":1.5})");
    CHECK(std::get<Exponential>(j.variant()).theta == 1.5);
  }
  SECTION("rejects malformed text") {
    CHECK_THROWS_AS(io::parse_distribution_text(""), ParseError);
    CHECK_THROWS_AS(io::parse_distribution_text("norm:0,1"), ParseError);
    CHECK_THROWS_AS(io::parse_distribution_text("exp:abc"), ParseError);
    CHECK_THROWS_AS(io::parse_distribution_text("exp:1,2"), ParseError);
    CHECK_THROWS_AS(io::parse_distribution_text("exponential"), ParseError);
    CHECK_THROWS_AS(io::parse_distribution_text("finite:1;0.5"), ParseError);
    CHECK_THROWS_AS(io::parse_distribution_text(R"({"dist":"norm"})"), ParseError);
    CHECK_THROWS_AS(io::parse_distribution_text(R"({"theta":1})"), ParseError);
    CHECK_THROWS_AS(io::parse_distribution_text("{not json"), ParseError);
  }
}

TEST_CASE("distribution JSON round trip") {
  const std::vector<DistributionSpec> specs{
      DistributionSpec::exponential(1.5), DistributionSpec::uniform(-1, 2),
      DistributionSpec::geometric(0.3), DistributionSpec::finite({1, 4}, {0.25, 0.75}),
      DistributionSpec::tabulated({0, 1, 2}, {0, 0.25, 1})};
  for (const auto& d : specs) {
    const auto back = io::parse_distribution(io::distribution_to_json(d));
    CHECK(io::distribution_to_json(back) == io::distribution_to_json(d));
  }
}

TEST_CASE("sequence readers") {
  SECTION("CSV with blanks and CRLF") {
    const auto rows = io::read_sequence("3\r\n1\n\n4\n \n\n1\n5\n");
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<double>{3});
    CHECK(rows[4] == std::vector<double>{5});
  }
  SECTION("CSV with two columns") {
    const auto rows = io::read_sequence("1,2\n3,4\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[1] == std::vector<double>{3, 4});
  }
  SECTION("JSON number array") {
    const auto rows = io::read_sequence(" [3, 1, 4]");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<double>{3});
  }
  SECTION("JSON nested arrays") {
    const auto rows = io::read_sequence("[[1,2],[3,4]]");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<double>{1, 2});
  }
  SECTION("rejects ragged or malformed input") {
    CHECK_THROWS_AS(io::read_sequence("1,2\n3\n"), ParseError);
    CHECK_THROWS_AS(io::read_sequence("[[1,2],[3]]"), ParseError);
    CHECK_THROWS_AS(io::read_sequence("[1,\"a\"]"), ParseError);
    CHECK_THROWS_AS(io::read_sequence("{\"a\":1}"), ParseError);
    CHECK_THROWS_AS(io::read_sequence("   "), ParseError);
    CHECK_THROWS_AS(io::read_sequence("1,x\n"), ParseError);
  }
}

TEST_CASE("record sequence serialization") {
  const auto rs = extract_all(std::vector<double>{3, 1, 4, 1, 5}, RecordKind::StrongUpper);
  SECTION("JSON shape") {
    const auto j = io::record_sequence_to_json(rs);
    CHECK(j["kind"] == "strong-upper");
    CHECK(j["count"] == 3);
    CHECK(j["deltas"] == io::json({2, 2}));
    REQUIRE(j["events"].size() == 3);
    CHECK(j["events"][0]["n"] == 1);
    CHECK(j["events"][0]["t"] == 1);
    CHECK(j["events"][0]["value"] == 3.0);
    CHECK(j["events"][2]["t"] == 5);
  }
  SECTION("CSV golden") {
    CHECK(io::record_sequence_to_csv(rs) == "n,t,value\n1,1,3\n2,3,4\n3,5,5\n");
  }
  SECTION("vector values widen the CSV header") {
    using Vec = std::vector<double>;
    const std::vector<Vec> xs{{1, 1}, {2, 2}};
    const auto vrs = extract_all(xs, RecordKind::StrongUpper, VectorSpace{2});
    const auto csv = io::record_sequence_to_csv(vrs);
    CHECK(csv.substr(0, csv.find('\n')) == "n,t,value_1,value_2");
    const auto j = io::record_sequence_to_json(vrs);
    CHECK(j["events"][1]["value"] == io::json({2.0, 2.0}));
  }
}

TEST_CASE("verification suite is a pure function of suite and seed") {
  const auto a = verify::run_suite("quick", 7);
  const auto b = verify::run_suite("quick", 7);
  CHECK(verify::suite_report_to_json(a).dump() == verify::suite_report_to_json(b).dump());
  CHECK_THROWS_AS(verify::run_suite("huge", 7), DomainError);
}

TEST_CASE("cli law evaluation") {
  const auto out = tmp_path("law.json");
  SECTION("closed-form value lands in the output file") {
    REQUIRE(run_cli({"law", "--formula", "interRecords", "--k", "1", "--output",
                     out.string()}) == 0);
    const auto j = io::json::parse(read_file(out));
    CHECK(j["formula"] == "interRecords");
    CHECK(j["value"] == Approx(0.5));
    CHECK(j["support"] == true);
    CHECK(j["inputs"]["k"] == io::json({1}));
  }
  SECTION("formula catalogue") {
    REQUIRE(run_cli({"law", "--list", "--output", out.string()}) == 0);
    const auto text = read_file(out);
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 13);
    CHECK(text.find("GRDMR") != std::string::npos);
  }
  SECTION("distribution-dependent law echoes the distribution") {
    REQUIRE(run_cli({"law", "--formula", "ADR3", "--dist", "exp:1.0", "--n", "3", "--x",
                     "2.0", "--output", out.string()}) == 0);
    const auto j = io::json::parse(read_file(out));
    CHECK(j["value"] == Approx(2.0 * std::exp(-2.0)));
    CHECK(j["inputs"]["dist"]["dist"] == "exponential");
  }
  SECTION("truncated sums report their mass") {
    REQUIRE(run_cli({"law", "--formula", "GRDMR", "--dist", "unif:0,1", "--y", "1.0,0.5",
                     "--horizon", "200", "--output", out.string()}) == 0);
    const auto j = io::json::parse(read_file(out));
    CHECK(j["value"] == Approx(0.5 + 0.5 * std::log(0.5)).margin(1e-9));
    CHECK(j["truncation_mass"] == Approx(0.005).margin(1e-6));
  }
  SECTION("bad invocations exit 2") {
    CHECK(run_cli({"law", "--formula", "bogus", "--k", "1"}) == 2);
    CHECK(run_cli({"law", "--formula", "interRecords"}) == 2);
    CHECK(run_cli({"law", "--formula", "interRecords", "--k", "1.5"}) == 2);
    CHECK(run_cli({"law"}) == 2);
    CHECK(run_cli({"law", "--formula", "ADR3", "--n", "2", "--x", "1.0"}) == 2);
  }
  std::filesystem::remove(out);
}

TEST_CASE("cli extract") {
  const auto in = tmp_path("seq.csv");
  const auto out = tmp_path("records.json");
  write_file(in, "3\n1\n4\n1\n5\n");
  SECTION("json output") {
    REQUIRE(run_cli({"extract", "--input", in.string(), "--output", out.string()}) == 0);
    const auto j = io::json::parse(read_file(out));
    CHECK(j["count"] == 3);
    CHECK(j["events"][0]["t"] == 1);
    CHECK(j["events"][1]["t"] == 3);
    CHECK(j["events"][2]["t"] == 5);
  }
  SECTION("csv output") {
    REQUIRE(run_cli({"extract", "--input", in.string(), "--format", "csv", "--output",
                     out.string()}) == 0);
    CHECK(read_file(out) == "n,t,value\n1,1,3\n2,3,4\n3,5,5\n");
  }
  SECTION("lower records of the same file") {
    REQUIRE(run_cli({"extract", "--input", in.string(), "--kind", "strong-lower",
                     "--output", out.string()}) == 0);
    const auto j = io::json::parse(read_file(out));
    CHECK(j["count"] == 2);  // 3 then 1
    CHECK(j["events"][1]["value"] == 1.0);
  }
  SECTION("multidimensional input routes through the product order") {
    const auto vin = tmp_path("seq2.csv");
    write_file(vin, "1,1\n2,0\n2,2\n");
    REQUIRE(run_cli({"extract", "--input", vin.string(), "--output", out.string()}) == 0);
    const auto j = io::json::parse(read_file(out));
    CHECK(j["count"] == 2);
    CHECK(j["events"][1]["value"] == io::json({2.0, 2.0}));
    std::filesystem::remove(vin);
  }
  SECTION("failure modes exit 2") {
    CHECK(run_cli({"extract", "--input", "/nonexistent/nowhere.csv"}) == 2);
    CHECK(run_cli({"extract", "--input", in.string(), "--kind", "sideways"}) == 2);
    CHECK(run_cli({"extract", "--input", in.string(), "--format", "xml"}) == 2);
    CHECK(run_cli({"extract"}) == 2);
  }
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST_CASE("cli simulate") {
  const auto out = tmp_path("sim.json");
  SECTION("at-least target") {
    REQUIRE(run_cli({"simulate", "--dist", "unif:0,1", "--target", "at-least", "--n", "2",
                     "--trials", "4000", "--horizon", "50", "--seed", "3", "--output",
                     out.string()}) == 0);
    const auto j = io::json::parse(read_file(out));
    const double est = j["estimate"].get<double>();
    // P(at least 2 records in 50 draws) = 1 - 1/50
    CHECK(est == Approx(0.98).margin(0.01));
    CHECK(j["trials_used"] == 4000);
  }
  SECTION("delta target matches the gap law") {
    REQUIRE(run_cli({"simulate", "--dist", "exp:1.0", "--target", "delta", "--k", "2",
                     "--trials", "4000", "--horizon", "10", "--seed", "4", "--output",
                     out.string()}) == 0);
    const auto j = io::json::parse(read_file(out));
    CHECK(j["estimate"].get<double>() == Approx(1.0 / 6.0).margin(0.025));
  }
  SECTION("seed is mandatory") {
    CHECK(run_cli({"simulate", "--dist", "unif:0,1", "--target", "at-least"}) == 2);
  }
  SECTION("unknown target exits 2") {
    CHECK(run_cli({"simulate", "--dist", "unif:0,1", "--target", "warp", "--seed", "1"}) ==
          2);
  }
  std::filesystem::remove(out);
}

TEST_CASE("cli rejects unknown verbs and empty invocations") {
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({}) == 2);
}
