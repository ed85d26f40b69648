#include "doctest.h"

#include "cli.hpp"
#include "weylchar/error.hpp"
#include "weylchar/fourier.hpp"

using namespace weylchar;

namespace {

Cyclotomic q(long n, long d) { return Cyclotomic(make_rational(n, d)); }

MSet load(const std::string& name) {
  return cli::Loader(WEYLCHAR_TEST_DATA_DIR).group("groups/" + name);
}

Matrix<Cyclotomic> adjoint(const Matrix<Cyclotomic>& m) {
  Matrix<Cyclotomic> c(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(j, i) = m(i, j).conjugate();
  return c;
}

Matrix<Cyclotomic> conj(const Matrix<Cyclotomic>& m) {
  Matrix<Cyclotomic> c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).conjugate();
  return c;
}

}  // namespace

TEST_CASE("M(S3) has eight named pairs") {
  const MSet m = load("s3.json");
  REQUIRE(m.size() == 8);
  std::vector<std::string> names;
  for (const auto& p : m.pairs()) names.push_back(m.pair_name(p));
  CHECK(names == std::vector<std::string>{"(1,1)", "(1,eps)", "(1,r)", "(g2,1)", "(g2,eps)", "(g3,1)", "(g3,w)",
                                          "(g3,wb)"});
  CHECK(m.parse_pair("(g3,wb)") == MPair{2, 2});
  CHECK(m.parse_pair("g2,1") == MPair{1, 0});
  CHECK(m.parse_pair("(2,2)") == MPair{2, 2});
  // names win over indices: character "1" of g3 is the trivial one
  CHECK(m.parse_pair("(2,1)") == MPair{2, 0});
  CHECK_FALSE(m.parse_pair("(g2,r)").has_value());
  CHECK(m.index_of(MPair{1, 1}) == 4);
}

TEST_CASE("Fourier matrix of S3") {
  const MSet m = load("s3.json");
  const auto f = fourier_matrix(m);
  // frozen from an independent evaluation of the defining sum
  const std::vector<std::vector<Cyclotomic>> expected = {
      {q(1, 6), q(1, 6), q(1, 3), q(1, 2), q(1, 2), q(1, 3), q(1, 3), q(1, 3)},
      {q(1, 6), q(1, 6), q(1, 3), q(-1, 2), q(-1, 2), q(1, 3), q(1, 3), q(1, 3)},
      {q(1, 3), q(1, 3), q(2, 3), 0, 0, q(-1, 3), q(-1, 3), q(-1, 3)},
      {q(1, 2), q(-1, 2), 0, q(1, 2), q(-1, 2), 0, 0, 0},
      {q(1, 2), q(-1, 2), 0, q(-1, 2), q(1, 2), 0, 0, 0},
      {q(1, 3), q(1, 3), q(-1, 3), 0, 0, q(2, 3), q(-1, 3), q(-1, 3)},
      {q(1, 3), q(1, 3), q(-1, 3), 0, 0, q(-1, 3), q(2, 3), q(-1, 3)},
      {q(1, 3), q(1, 3), q(-1, 3), 0, 0, q(-1, 3), q(-1, 3), q(2, 3)},
  };
  CHECK(f == Matrix<Cyclotomic>::from_rows(expected));
}

TEST_CASE("Fourier matrices are unitary and conjugate-symmetric") {
  for (const std::string name : {"trivial.json", "z2.json", "z3.json", "s3.json", "z4.json", "v4.json", "d8.json",
                                 "q8.json"}) {
    CAPTURE(name);
    const MSet m = load(name);
    const auto f = fourier_matrix(m);
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b) REQUIRE(f(a, b) == f(b, a).conjugate());
    CHECK(f * adjoint(f) == Matrix<Cyclotomic>::identity(m.size()));
    CHECK(f * f == Matrix<Cyclotomic>::identity(m.size()));
  }
}

TEST_CASE("entrywise conjugation gives the inversion permutation") {
  // M is hermitian, so M * conj(M) = M * M^T, which sends (x, s) to (x^-1, conj s)
  for (const std::string name : {"z3.json", "s3.json", "q8.json"}) {
    CAPTURE(name);
    const MSet m = load(name);
    const auto f = fourier_matrix(m);
    const auto p = f * conj(f);
    const auto& g = m.gamma();
    for (std::size_t a = 0; a < m.size(); ++a) {
      const int x = g.conjugacy_classes()[static_cast<std::size_t>(m.pairs()[a].y)].representative;
      const int yinv = g.class_of()[static_cast<std::size_t>(g.inverse(x))];
      int ones = 0;
      for (std::size_t b = 0; b < m.size(); ++b) {
        if (p(a, b) == Cyclotomic(1) && m.pairs()[b].y == yinv) ++ones;
        else REQUIRE(p(a, b).is_zero());
      }
      CHECK(ones == 1);
    }
    CHECK((p == Matrix<Cyclotomic>::identity(m.size())) == (name != "z3.json"));
  }
}

TEST_CASE("the row of (1,1)") {
  for (const std::string name : {"z3.json", "s3.json", "d8.json"}) {
    const MSet m = load(name);
    const MPair one{0, 0};
    for (const auto& p : m.pairs()) {
      const auto& z = m.centralizer(p.y);
      const Cyclotomic expected = z.table.degree(static_cast<std::size_t>(p.r)) *
                                  Cyclotomic(make_rational(1, z.subgroup.group.order()));
      CHECK(fourier_entry(m, one, p) == expected);
    }
  }
}

TEST_CASE("M(Z/n) has n^2 pairs") {
  CHECK(MSet::build(FiniteGroup::cyclic(4)).size() == 16);
  CHECK(MSet::build(FiniteGroup::cyclic(1)).size() == 1);
  CHECK(fourier_entry(MSet::build(FiniteGroup::cyclic(1)), {0, 0}, {0, 0}) == Cyclotomic(1));
}

TEST_CASE("multiplicities in R_w for W(G2)") {
  const cli::Loader loader(WEYLCHAR_TEST_DATA_DIR);
  const FamilyData fd = loader.family("families/g2_families.json");
  const auto& elements = fd.weyl.elements;
  // at w = 1 the multiplicity is the degree of the matching unipotent
  const std::vector<long> at_identity = {1, 1, 1, 1, 2, 2};
  for (int irr = 0; irr < 6; ++irr)
    CHECK(multiplicity_in_RW(irr, fd.weyl.datum.identity(), fd) == Cyclotomic(at_identity[static_cast<std::size_t>(irr)]));
  for (const auto& w : elements)
    for (int irr = 0; irr < 6; ++irr) REQUIRE(multiplicity_in_RW(irr, w, fd) == multiplicity_by_matrix(irr, w, fd));
  CHECK_THROWS_AS(multiplicity_in_RW(0, fd.weyl.datum.generator(0), fd), DataError);
}

TEST_CASE("family validation") {
  const cli::Loader loader(WEYLCHAR_TEST_DATA_DIR);
  FamilyData fd = loader.family("families/g2_families.json");
  fd.families[0].members.emplace(4, FamilyMember{{0, 0}, 1});
  CHECK_THROWS_AS(validate_family_data(fd), DataError);
}
