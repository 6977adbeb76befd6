#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <filesystem>

#include "subplanck/error.hpp"
#include "subplanck/io.hpp"

namespace subplanck {
namespace {

TEST(Io, ComplexForms) {
  EXPECT_EQ(complex_from_json(Json(1.5), "x"), Complex(1.5, 0.0));
  EXPECT_EQ(complex_from_json(Json::array({0.5, -2.0}), "x"), Complex(0.5, -2.0));
  EXPECT_THROW(complex_from_json(Json::array({1.0}), "x"), Error);
  EXPECT_THROW(complex_from_json(Json("one"), "x"), Error);
  EXPECT_EQ(complex_from_json(complex_to_json(Complex(0.1, 0.2)), "x"), Complex(0.1, 0.2));
}

TEST(Io, StateSpecRoundTrip) {
  StateSpec s = StateSpec::ssd(0.3, Complex(1.0, -0.25)).with_added(2);
  EXPECT_EQ(state_spec_from_json(to_json(s)), s);
  const StateSpec k = StateSpec::ks_minus(Complex(0.0, 1.5), 1).with_subtracted(1);
  EXPECT_EQ(state_spec_from_json(to_json(k)), k);
}

TEST(Io, StateSpecRejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(state_spec_from_json(Json{{"family", "cat"}, {"beta", 1.0}, {"colour", 1}}), Error);
  EXPECT_THROW(state_spec_from_json(Json{{"family", "kitten"}}), Error);
  EXPECT_THROW(state_spec_from_json(Json{{"family", "ks_plus"}, {"beta", 1.2}, {"l", 5}}), Error);
  EXPECT_THROW(state_spec_from_json(Json{{"beta", 1.2}}), Error);
}

TEST(Io, FockVectorRoundTrip) {
  const FockVector psi = make_state(StateSpec::cat(Complex(1.0, 0.7), 1));
  const FockVector back = fock_vector_from_json(to_json(psi));
  EXPECT_EQ(back.cutoff(), psi.cutoff());
  for (int n = 0; n <= psi.cutoff(); ++n) EXPECT_EQ(back[n], psi[n]);
}

TEST(Io, LocusConfigOverlay) {
  const LocusConfig base = LocusConfig::defaults(PairLabel::prstrg2);
  const LocusConfig c = locus_config_from_json(
      Json{{"n_values", {1, 2}}, {"r", {{"max", 0.4}}}, {"convention", "intro"}}, base);
  EXPECT_EQ(c.n_values, (std::vector<int>{1, 2}));
  EXPECT_EQ(c.r.max, 0.4);
  EXPECT_EQ(c.r.step, base.r.step);
  EXPECT_EQ(c.convention, QfiConvention::intro);
  EXPECT_THROW(locus_config_from_json(Json{{"bogus", 1}}, base), Error);

  const LocusConfig switched = locus_config_from_json(Json{{"pair", "trgtrgn-1"}}, base);
  EXPECT_EQ(switched.pair.label, PairLabel::trgtrgn1);
  EXPECT_NEAR(std::arg(switched.beta_phase), std::acos(-1.0) / 4.0, 1e-15);

  const LocusConfig round = locus_config_from_json(to_json(c), base);
  EXPECT_EQ(round.n_values, c.n_values);
  EXPECT_EQ(round.r.max, c.r.max);
  EXPECT_EQ(round.convention, c.convention);
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(Io, GridCsvLayout) {
  PhaseGrid g;
  g.spec = GridSpec{-1.0, 1.0, 0.0, 1.0, 16, 16};
  g.values.assign(256, 0.25);
  const std::string csv = grid_csv(g);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,p,value");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 257);
}

TEST(Io, HashIsStable) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Io, WriteAndReadJson) {
  const auto dir = std::filesystem::temp_directory_path() / "subplanck_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_text(dir / "x.json", R"({"a": [1, 2]})");
  EXPECT_EQ(read_json(dir / "x.json")["a"][1], 2);
  write_text(dir / "bad.json", "{");
  EXPECT_THROW(read_json(dir / "bad.json"), Error);
  EXPECT_THROW(read_json(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir.parent_path());
}

}  // namespace
}  // namespace subplanck
