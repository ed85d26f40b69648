#include "doctest.h"

#include <algorithm>

#include "cli.hpp"
#include "weylchar/charformula.hpp"
#include "weylchar/error.hpp"

using namespace weylchar;

namespace {

const cli::Loader& loader() {
  static const cli::Loader l(WEYLCHAR_TEST_DATA_DIR);
  return l;
}

std::vector<long> as_longs(const std::vector<Cyclotomic>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.as_integer()->get_si());
  return out;
}

const std::vector<FiniteOrderClass>& g2_classes() {
  static const auto c = enumerate_finite_order_classes(AffineDatum::builtin("g2aff"), 12);
  return c;
}

G2Expected expected_table() { return loader().expected("g2_expected.json", nullptr); }

}  // namespace

TEST_CASE("shipped representations satisfy the Coxeter relations") {
  for (const std::string name : {"trivial", "sign", "reflection", "geometric", "geometric_sign"})
    CHECK_NOTHROW(loader().rep("reps/" + name + ".json"));
}

TEST_CASE("a broken representation names the failing relations") {
  const RepData good = loader().rep("reps/reflection.json");
  RepData bad = good;
  bad.generators[2] = CycMatrix::from_rows({{1, 0}, {2, -1}});
  const RepReport report = validate_rep(bad);
  std::vector<std::string> relations;
  for (const auto& v : report.violations) relations.push_back(v.relation);
  CHECK(relations == std::vector<std::string>{"(M0*M2)^2 = 1", "(M1*M2)^6 = 1"});
  CHECK_THROWS_AS(loader().rep("reps/broken.json"), DataError);

  RepData missing = good;
  missing.generators.erase(0);
  CHECK_FALSE(validate_rep(missing).valid());
  RepData not_involution = good;
  not_involution.generators[1] = CycMatrix::from_rows({{1, 1}, {0, 1}});
  CHECK_FALSE(validate_rep(not_involution).valid());
}

TEST_CASE("tau on the classes of affine G2") {
  // frozen from a direct evaluation of the reflection representation
  CHECK(as_longs(tau_vector(loader().rep("reps/reflection.json"), g2_classes()).values) ==
        std::vector<long>{2, 0, 0, -2, -2, -1, -1, 1});
  CHECK(as_longs(tau_vector(loader().rep("reps/sign.json"), g2_classes()).values) ==
        std::vector<long>{1, -1, -1, 1, 1, 1, 1, 1});
  CHECK(as_longs(tau_vector(loader().rep("reps/trivial.json"), g2_classes()).values) ==
        std::vector<long>(8, 1));
}

TEST_CASE("tau is a class function") {
  const AffineDatum g2 = AffineDatum::builtin("g2aff");
  const RepData refl = loader().rep("reps/reflection.json");
  const WeylElement g = g2.from_word({0, 1, 2, 0});
  for (const auto& c : g2_classes()) CHECK(tau(refl, g2.conjugate(g, c.anchor)) == tau(refl, c));
}

TEST_CASE("direct sums add traces") {
  const RepData sum = direct_sum(loader().rep("reps/trivial.json"), loader().rep("reps/reflection.json"));
  CHECK(sum.dimension == 3);
  CHECK(validate_rep(sum).valid());
  CHECK(as_longs(tau_vector(sum, g2_classes()).values) == as_longs(tau_vector(loader().rep("reps/geometric.json"), g2_classes()).values));
}

TEST_CASE("tau rejects other datums and infinite order") {
  const RepData refl = loader().rep("reps/reflection.json");
  const AffineDatum a2 = AffineDatum::builtin("a2aff");
  CHECK_THROWS_AS(tau(refl, a2.generator(0)), DataError);
  const AffineDatum g2 = AffineDatum::builtin("g2aff");
  CHECK_THROWS_AS(tau(refl, g2.from_word({0, 1, 2})), DataError);
}

TEST_CASE("phi for the trivial group is tau") {
  const SphericalAssignment sa = loader().assignment("assignments/g2_trivial_gamma.json");
  const auto phi = phi_fourier(sa, MPair{0, 0}, g2_classes());
  CHECK(phi.values == tau_vector(loader().rep("reps/reflection.json"), g2_classes()).values);
}

TEST_CASE("phi for the demonstration assignment") {
  const SphericalAssignment sa = loader().assignment("assignments/g2_demo.json");
  const auto name = [&](const char* p) { return *sa.gamma.parse_pair(p); };
  // frozen from an independent evaluation of the stand-in traces
  CHECK(as_longs(phi_fourier(sa, name("(1,1)"), g2_classes()).values) == std::vector<long>{3, 0, 0, -1, -1, 0, 0, 2});
  CHECK(as_longs(phi_fourier(sa, name("(1,r)"), g2_classes()).values) == std::vector<long>{2, 0, 0, -2, -2, -1, -1, 1});
  CHECK(as_longs(phi_fourier(sa, name("(g3,1)"), g2_classes()).values) == std::vector<long>(8, 1));
  CHECK(as_longs(phi_fourier(sa, name("(1,eps)"), g2_classes()).values) == std::vector<long>{0, 1, 1, 0, 0, 0, 0, 0});
  CHECK(as_longs(phi_fourier(sa, name("(g3,w)"), g2_classes()).values) == std::vector<long>(8, 0));
}

TEST_CASE("phi reports a non-integral value") {
  SphericalAssignment sa = loader().assignment("assignments/g2_demo.json");
  sa.reps.at(sa.mprime[1]) = loader().rep("reps/trivial.json");
  CHECK_THROWS_AS(phi_fourier(sa, *sa.gamma.parse_pair("(1,1)"), g2_classes()), MathError);
}

TEST_CASE("assignment validation") {
  SphericalAssignment sa = loader().assignment("assignments/g2_demo.json");
  sa.mprime.push_back(sa.mprime[0]);
  CHECK_THROWS_AS(validate_assignment(sa), DataError);
}

TEST_CASE("vanishing for affine G2 follows inclusion") {
  const AffineDatum g2 = AffineDatum::builtin("g2aff");
  for (std::uint32_t j = 0; j < 7; ++j)
    for (std::uint32_t h = 0; h < 7; ++h) {
      const NodeSet jj = NodeSet::from_mask(j);
      const NodeSet hh = NodeSet::from_mask(h);
      CHECK(vanishing_test(g2, jj, hh).vanishes == !jj.is_subset_of(hh));
    }
  CHECK_THROWS_AS(vanishing_test(g2, NodeSet{0, 1, 2}, NodeSet{}), DataError);
}

TEST_CASE("vanishing for affine A2 uses the rotations") {
  const AffineDatum a2 = AffineDatum::builtin("a2aff");
  const auto r = vanishing_test(a2, NodeSet{0, 1}, NodeSet{1, 2});
  CHECK_FALSE(r.vanishes);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].image == NodeSet{0, 1});
  CHECK(vanishing_test(a2, NodeSet{0, 1}, NodeSet{2}).vanishes);
}

TEST_CASE("phi_multiplicity sums over a set of irreducibles") {
  const FamilyData fd = loader().family("families/g2_families.json");
  const WeylElement e = fd.weyl.datum.identity();
  CHECK(phi_multiplicity({4, 5}, e, fd) == Cyclotomic(4));
  CHECK(phi_multiplicity({0, 3}, fd.weyl.datum.from_word({1, 2}), fd) == Cyclotomic(2));
}

TEST_CASE("the G2 table is matched") {
  const MSet s3 = loader().group("groups/s3.json");
  const G2Report report = verify_g2(s3, expected_table());
  REQUIRE(report.chosen.has_value());
  CHECK(report.ok());
  CHECK(report.solutions.size() == 48);
  CHECK(report.mprime_choices == 24);
  CHECK(report.unique_up_to_swap);
  CHECK(report.swappable_rows_equal);
  CHECK(report.automorphism_count == 48);
  CHECK(report.single_orbit);

  const auto p = [&](const char* t) { return *s3.parse_pair(t); };
  const G2Solution& chosen = *report.chosen;
  CHECK(chosen.mprime == std::vector<MPair>{p("(1,1)"), p("(g2,1)"), p("(1,r)"), p("(g3,1)")});
  CHECK(chosen.assignment == std::vector<MPair>{p("(1,1)"), p("(g2,1)"), p("(1,r)"), p("(g3,1)"), p("(1,eps)"),
                                                p("(g2,eps)"), p("(g3,w)"), p("(g3,wb)")});

  // the labelling V'' = (g3,1), V''' = (g3,w) is one of the matches
  const bool other_found = std::any_of(report.solutions.begin(), report.solutions.end(), [&](const G2Solution& s) {
    return s.assignment[2] == p("(g3,1)") && s.assignment[3] == p("(g3,w)") && s.assignment[0] == p("(1,1)");
  });
  CHECK(other_found);
}

TEST_CASE("a perturbed table is not matched") {
  const MSet s3 = loader().group("groups/s3.json");
  G2Expected e = expected_table();
  e.rows[1][0] = make_rational(1, 3);
  const G2Report report = verify_g2(s3, e);
  CHECK_FALSE(report.chosen.has_value());
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.diff.empty());
}

TEST_CASE("integrality of the demonstration reps") {
  const MSet s3 = loader().group("groups/s3.json");
  std::map<std::string, RepData> reps = {{"A", loader().rep("reps/geometric.json")},
                                         {"A'", loader().rep("reps/geometric_sign.json")},
                                         {"A''", loader().rep("reps/reflection.json")},
                                         {"A'''", loader().rep("reps/trivial.json")}};
  const G2Report report = verify_g2(s3, expected_table(), &reps, &g2_classes());
  CHECK(report.integral == std::optional<bool>(true));
  CHECK(report.phi_values.at("S''") == report.phi_values.at("S'''"));

  reps.at("A") = loader().rep("reps/trivial.json");
  const G2Report bad = verify_g2(s3, expected_table(), &reps, &g2_classes());
  CHECK(bad.integral == std::optional<bool>(false));
  CHECK_FALSE(bad.integrality_failures.empty());
  CHECK_FALSE(bad.ok());
}
