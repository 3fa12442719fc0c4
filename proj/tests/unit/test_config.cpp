#include <doctest.h>

#include <random>
#include <sstream>

#include "airybvp/config.hpp"

using namespace airy;

namespace {

int error_line(const std::string& text) {
  try {
    parse_scenario(IniDocument::parse(text));
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("doubles survive a text round trip") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(mant(rng), expo(rng));
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1e-5) == "1e-05");
  CHECK_THROWS(parse_double("1.5x"));
  CHECK_THROWS(parse_double("inf"));
  CHECK(parse_complex("1,2") == Complex(1.0, 2.0));
  CHECK(parse_complex(" -0.5 ") == Complex(-0.5, 0.0));
  CHECK(parse_complex(format_complex(Complex(0.1, -3e-7))) == Complex(0.1, -3e-7));
}

TEST_CASE("ini documents") {
  const auto doc = IniDocument::parse("# header\n[a]\nx = 1\n; note\n[b]\ny=two words\n");
  REQUIRE(doc.find("a", "x") != nullptr);
  CHECK(doc.find("a", "x")->value == "1");
  CHECK(doc.find("a", "x")->line == 3);
  CHECK(doc.find("b", "y")->value == "two words");
  CHECK(doc.find("b", "x") == nullptr);
  CHECK(doc.section_line("b") == 5);
  const auto again = IniDocument::parse(doc.serialize());
  CHECK(again.find("b", "y")->value == "two words");

  CHECK_THROWS_AS(IniDocument::parse("x = 1\n"), ConfigError);
  CHECK_THROWS_AS(IniDocument::parse("[a\n"), ConfigError);
  CHECK_THROWS_AS(IniDocument::parse("[a]\nnovalue\n"), ConfigError);
  CHECK_THROWS_AS(IniDocument::parse("[a]\n[a]\n"), ConfigError);
}

TEST_CASE("scenario round trip") {
  ScenarioConfig cfg;
  cfg.bc = BoundarySpec(QuasiCoupled{0.3, Complex(2.0, 0.5), 1.0});
  cfg.datum.kind = "bump";
  cfg.datum.center = 0.45;
  cfg.datum.width = 0.2;
  cfg.datum.regularity = Regularity::SmoothNonmatching;
  cfg.numerics.N = 96;
  cfg.numerics.dt = 1e-4;
  cfg.numerics.T = 3e-3;
  cfg.numerics.substeps = 4;
  cfg.analysis.jump_factor = 7.25;
  const auto text = to_ini(cfg).serialize();
  const auto back = parse_scenario(IniDocument::parse(text));
  CHECK(back.bc == cfg.bc);
  CHECK(back.datum.center == cfg.datum.center);
  CHECK(back.datum.regularity == cfg.datum.regularity);
  CHECK(back.numerics.N == 96);
  CHECK(back.numerics.T == cfg.numerics.T);
  CHECK(back.numerics.substeps == 4);
  CHECK(back.analysis.jump_factor == 7.25);
  CHECK(to_ini(back).serialize() == text);
}

TEST_CASE("every catalog family parses with its example keys") {
  for (const auto& entry : family_catalog()) {
    std::string text = "[problem]\nbc.family = " + entry.family + "\n";
    for (const auto& [k, v] : entry.keys) text += k + " = " + v + "\n";
    CAPTURE(text);
    const auto cfg = parse_scenario(IniDocument::parse(text));
    CHECK(cfg.bc.name() == entry.family);
  }
  CHECK(family_catalog().size() == family_names().size());
  CHECK(std::find(datum_kinds().begin(), datum_kinds().end(), "samples_file") != datum_kinds().end());
}

TEST_CASE("errors point at the offending line") {
  CHECK(error_line("[problem]\nbc.family = periodic\nbc.colour = red\n") == 3);
  CHECK(error_line("[problem]\nbc.family = spiral\n") == 2);
  CHECK(error_line("[problem]\nbc.family = periodic\n[numerics]\nnumerics.N = 64\nnumerics.N = 65\n") == 5);
  CHECK(error_line("[problem]\nbc.family = periodic\nbc.gamma = 2\n") == 3);
  CHECK(error_line("[problem]\nbc.family = periodic\n[extras]\n") == 3);
  CHECK(error_line("[problem]\nbc.family = periodic\n[numerics]\nnumerics.P = 32\n") == 4);
  CHECK(error_line("[problem]\nbc.family = periodic\n[numerics]\nnumerics.dt = 3e-4\nnumerics.T = 1e-3\n") == 4);
  CHECK(error_line("[problem]\nbc.family = periodic\n[datum]\ndatum.kind = step\ndatum.lo = 0.6\n") > 0);
  CHECK(error_line("[problem]\nbc.family = periodic\n[datum]\ndatum.kind = samples_file\n") == 4);
  CHECK(error_line("[problem]\nbc.family = periodic\n[numerics]\nnumerics.N = abc\n") == 4);
  CHECK(error_line("[problem]\nbc.family = periodic\n[numerics]\nnumerics.dt = 1e-3\nnumerics.T = 0.05\n") == 4);
  CHECK(error_line("[problem]\nbc.family = periodic\n[numerics]\nnumerics.dt = 1e-3\nnumerics.T = 0.05\n"
                   "numerics.substeps = 2\n") == -1);
  CHECK(error_line("[problem]\nbc.family = mixed\n[numerics]\n\nnumerics.reference = false\n") == 5);
  CHECK(error_line("[problem]\nbc.family = quasi_periodic\n[numerics]\nnumerics.reference = false\n") == -1);
  CHECK(error_line("[datum]\ndatum.kind = poly\n") >= 0);
}

TEST_CASE("datum construction") {
  DatumConfig d;
  d.kind = "step";
  d.lo = 0.2;
  d.hi = 0.6;
  const auto f = make_datum(d, ".");
  CHECK(f(0.4) == Complex(1.0));
  CHECK(f.regularity() == Regularity::BoundedVariation);
  d.regularity = Regularity::SmoothNonmatching;
  CHECK(make_datum(d, ".").regularity() == Regularity::SmoothNonmatching);
  d.kind = "samples_file";
  d.path = "does/not/exist.txt";
  CHECK_THROWS_AS(make_datum(d, "."), ConfigError);
}

}
