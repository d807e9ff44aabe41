#include <gtest/gtest.h>

#include <set>

#include "kmarith.hpp"

using namespace kmarith;

namespace {

QuotientLattice lorentz() { return QuotientLattice::from_gram(int_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})); }

const std::vector<IntVector> kTriangle{int_vector({1, -1, 0}), int_vector({0, 1, 0}), int_vector({-1, -1, 1})};

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Parse;
}

void expect_chamber_properties(const QuotientLattice& lat, const IntVector& v0, const std::vector<IntVector>& facets) {
  for (std::size_t i = 0; i < facets.size(); ++i) {
    EXPECT_EQ(content(facets[i]), 1);
    EXPECT_TRUE(is_crystallographic_root(lat, facets[i]));
    EXPECT_LE(lat.form(v0, facets[i]), 0);
    for (std::size_t j = 0; j < i; ++j) EXPECT_LE(lat.form(facets[i], facets[j]), 0);
  }
}

}  // namespace

TEST(Vinberg, LorentzTriangle) {
  auto lat = lorentz();
  auto r = vinberg_search(lat, int_vector({0, 0, 1}), std::nullopt, SearchBudget{});
  EXPECT_EQ(r.status, SearchStatus::Complete);
  EXPECT_EQ(r.polyhedron.volume_status, VolumeStatus::Finite);
  EXPECT_EQ(r.polyhedron.facets, kTriangle);
  EXPECT_EQ(r.polyhedron.stabilizer_facets, 2u);
  EXPECT_EQ(r.polyhedron.coxeter_gram, int_matrix({{2, -1, 0}, {-1, 1, -1}, {0, -1, 1}}));
  // one ideal vertex, two finite ones
  int ideal = 0;
  for (const auto& ray : r.polyhedron.extreme_rays) {
    EXPECT_LE(lat.norm(ray), 0);
    ideal += lat.norm(ray) == 0;
  }
  EXPECT_EQ(ideal, 1);
}

TEST(Vinberg, ZeroBudgetIsInconclusive) {
  SearchBudget b;
  b.max_iter = 0;
  auto r = vinberg_search(lorentz(), int_vector({0, 0, 1}), std::nullopt, b);
  EXPECT_EQ(r.status, SearchStatus::Inconclusive);
  EXPECT_EQ(r.polyhedron.facets.size(), r.polyhedron.stabilizer_facets);
}

TEST(Vinberg, Preconditions) {
  EXPECT_EQ(code_of([] { vinberg_search(lorentz(), int_vector({1, 0, 0}), std::nullopt, SearchBudget{}); }),
            Errc::BadBasePoint);
  auto split = QuotientLattice::from_gram(int_matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}));
  EXPECT_EQ(code_of([&] { is_reflective(split, SearchBudget{}); }), Errc::NotHyperbolic);
  EXPECT_EQ(code_of([&] { vinberg_search(split, int_vector({0, 0, 1, 0}), std::nullopt, SearchBudget{}); }),
            Errc::NotHyperbolic);
}

TEST(Vinberg, OutputProperties) {
  const std::vector<IntMatrix> grams{
      int_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), int_matrix({{2, 0, 0}, {0, 2, 0}, {0, 0, -1}}),
      int_matrix({{4, 0, 0}, {0, 1, 0}, {0, 0, -1}}), int_matrix({{2, -1, 0}, {-1, 2, -1}, {0, -1, -2}}),
      int_matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}})};
  for (const auto& g : grams) {
    auto lat = QuotientLattice::from_gram(g);
    IntVector v0 = choose_base_point(lat);
    ASSERT_LT(lat.norm(v0), 0);
    auto r = vinberg_search(lat, v0, std::nullopt, SearchBudget{});
    expect_chamber_properties(lat, v0, r.polyhedron.facets);
    if (r.status == SearchStatus::Complete) {
      auto ver = verify_fundamental_polyhedron(lat, r.polyhedron.facets);
      EXPECT_TRUE(ver.valid) << ver.reason;
    }
    auto again = vinberg_search(lat, v0, std::nullopt, SearchBudget{});
    EXPECT_EQ(again.polyhedron.facets, r.polyhedron.facets);
  }
}

TEST(FiniteVolume, Examples) {
  auto lat = lorentz();
  EXPECT_EQ(finite_volume(lat, kTriangle), VolumeStatus::Finite);
  auto cert = finite_volume_certificate(lat, {int_vector({1, -1, 0})});
  EXPECT_EQ(cert.status, VolumeStatus::Infinite);
  ASSERT_TRUE(cert.spacelike_witness);
  // two facets of the stabilizer chamber leave a spacelike direction
  EXPECT_EQ(finite_volume(lat, {int_vector({1, -1, 0}), int_vector({0, 1, 0})}), VolumeStatus::Infinite);
}

TEST(FiniteVolume, MonotoneUnderAddedFacets) {
  auto lat = lorentz();
  std::vector<IntVector> roots;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) {
        IntVector x = int_vector({a, b, c});
        if (is_zero(x) || content(x) != 1 || lat.norm(x) <= 0) continue;
        if (is_crystallographic_root(lat, x)) roots.push_back(x);
      }
  // every superset of the triangle that stays a chamber is still finite
  for (const auto& x : roots) {
    auto facets = kTriangle;
    bool ok = true;
    for (const auto& f : facets) ok = ok && lat.form(x, f) <= 0;
    if (!ok) continue;
    facets.push_back(x);
    EXPECT_EQ(finite_volume(lat, facets), VolumeStatus::Finite);
  }
}

TEST(FiniteVolume, EmptyInterior) {
  auto lat = lorentz();
  EXPECT_EQ(code_of([&] { finite_volume(lat, {int_vector({1, 0, 0}), int_vector({-1, 0, 0})}); }), Errc::EmptyInterior);
}

TEST(Reflectivity, LorentzIsReflective) {
  auto rep = is_reflective(lorentz(), SearchBudget{});
  EXPECT_EQ(rep.verdict, Verdict::Reflective);
  EXPECT_TRUE(rep.generates_lattice);
  EXPECT_EQ(rep.polyhedron.facets, kTriangle);
  EXPECT_EQ(rep.base_point, int_vector({0, 0, 1}));
}

TEST(Reflectivity, SmallBudgetIsInconclusive) {
  SearchBudget b;
  b.max_iter = 0;
  EXPECT_EQ(is_reflective(lorentz(), b).verdict, Verdict::Inconclusive);
}

TEST(Reflectivity, TwoReflectiveLorentz) {
  // norm-2 roots alone do not close up within the default budget
  auto rep = is_two_reflective(lorentz(), SearchBudget{});
  EXPECT_EQ(rep.verdict, Verdict::Inconclusive);
  EXPECT_EQ(rep.candidate_norms, (std::vector<Int>{2}));
  for (const auto& f : rep.polyhedron.facets) EXPECT_EQ(lorentz().norm(f), 2);
}

TEST(Reflectivity, TwoReflectiveAgreesWhenAllFacetsHaveNormTwo) {
  auto lat = QuotientLattice::from_gram(int_matrix({{2, 0, 0}, {0, 2, 0}, {0, 0, -1}}));
  auto full = is_reflective(lat, SearchBudget{});
  ASSERT_EQ(full.verdict, Verdict::Reflective);
  bool all_two = true;
  for (const auto& f : full.polyhedron.facets) all_two = all_two && lat.norm(f) == 2;
  if (all_two) {
    auto two = is_two_reflective(lat, SearchBudget{});
    EXPECT_EQ(two.verdict, Verdict::Reflective);
    EXPECT_EQ(two.polyhedron.facets, full.polyhedron.facets);
  }
}

TEST(Verify, Examples) {
  auto lat = lorentz();
  auto ok = verify_fundamental_polyhedron(lat, kTriangle);
  EXPECT_TRUE(ok.valid);
  EXPECT_TRUE(ok.generates_lattice);

  auto flipped = kTriangle;
  flipped[1] = negated(flipped[1]);
  auto bad = verify_fundamental_polyhedron(lat, flipped);
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.reason, "positive-pairing");

  auto lat4 = QuotientLattice::from_gram(int_matrix({{4, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  auto sparse = verify_fundamental_polyhedron(lat4, {int_vector({1, 0, 0}), int_vector({0, 1, 0}), int_vector({-1, -2, 2})});
  EXPECT_TRUE(sparse.valid) << sparse.reason;
  EXPECT_FALSE(sparse.generates_lattice);
}

TEST(Verify, FailureReasons) {
  auto lat = lorentz();
  EXPECT_EQ(verify_fundamental_polyhedron(lat, {}).reason, "no-facets");
  EXPECT_EQ(verify_fundamental_polyhedron(lat, {int_vector({1, 0})}).reason, "wrong-dimension");
  EXPECT_EQ(verify_fundamental_polyhedron(lat, {int_vector({2, 0, 0})}).reason, "not-primitive");
  EXPECT_EQ(verify_fundamental_polyhedron(lat, {int_vector({0, 0, 1})}).reason, "non-positive-norm");
  auto lat2 = QuotientLattice::from_gram(int_matrix({{2, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  EXPECT_EQ(verify_fundamental_polyhedron(lat2, {int_vector({1, 1, 0})}).reason, "not-crystallographic");
  EXPECT_EQ(verify_fundamental_polyhedron(lat, {int_vector({1, -1, 0})}).reason, "infinite-volume");
  auto redundant = kTriangle;
  redundant.push_back(int_vector({1, -1, 0}));
  auto r = verify_fundamental_polyhedron(lat, redundant);
  EXPECT_FALSE(r.valid);
}

TEST(Verify, ArithmeticCorpusChambersAreValid) {
  int checked = 0;
  for (const auto& a : small_gcms()) {
    auto tc = classify(a, SearchBudget{});
    if (tc.kind != TypeKind::ArithmeticHyperbolic || a.size() < 3) continue;
    auto lat = kernel_quotient(symmetrize(a).b);
    std::set<IntVector> prim;
    for (const auto& f : simple_root_chamber(lat)) prim.insert(primitive_part(f));
    auto ver = verify_fundamental_polyhedron(lat, {prim.begin(), prim.end()});
    EXPECT_TRUE(ver.valid) << ver.reason;
    ++checked;
  }
  EXPECT_GT(checked, 0);
}
