#include <gtest/gtest.h>

#include <random>

#include "kmarith.hpp"

using namespace kmarith;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

const IntMatrix kDegenerate = int_matrix({{2, 0, 0, -2}, {0, 2, -2, 0}, {0, -2, 1, -1}, {-2, 0, -1, 1}});

}  // namespace

TEST(Hermite, ColumnTransformIsUnimodular) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix x = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 5, -6, 6);
    ColumnEchelon ce = column_hermite(x);
    EXPECT_EQ(x * ce.transform, ce.echelon);
    Int det = determinant(ce.transform);
    EXPECT_TRUE(det == 1 || det == -1);
    EXPECT_EQ(ce.rank, rank(x));
    for (std::size_t j = ce.rank; j < x.cols(); ++j)
      for (std::size_t i = 0; i < x.rows(); ++i) EXPECT_EQ(ce.echelon(i, j), 0);
  }
}

TEST(Hermite, KernelIsSaturated) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix x = random_matrix(rng, 1 + rng() % 3, 2 + rng() % 4, -5, 5);
    IntMatrix k = integer_kernel(x);
    EXPECT_EQ(k.rows(), x.cols() - rank(x));
    for (std::size_t i = 0; i < k.rows(); ++i) EXPECT_TRUE(is_zero(mat_vec(x, k.row(i))));
    if (k.rows() == 0) continue;
    // saturated: a primitive kernel vector has integer coordinates in the basis
    std::vector<IntVector> rows = k.to_rows();
    std::uniform_int_distribution<int> c(-3, 3);
    for (int s = 0; s < 5; ++s) {
      IntVector y(x.cols(), Int(0));
      for (const auto& r : rows) y = add(y, scaled(r, Int(c(rng))));
      if (is_zero(y)) continue;
      y = primitive_part(std::move(y));
      auto coef = express_in_span(rows, y);
      ASSERT_TRUE(coef);
      for (const auto& v : *coef) EXPECT_EQ(v.get_den(), 1);
    }
  }
}

TEST(Hermite, SpanIndex) {
  EXPECT_EQ(span_index({int_vector({2, 0}), int_vector({0, 1})}, 2), Int(2));
  EXPECT_EQ(span_index({int_vector({1, 1}), int_vector({1, -1})}, 2), Int(2));
  EXPECT_EQ(span_index({int_vector({1, 0}), int_vector({0, 1}), int_vector({5, 7})}, 2), Int(1));
  EXPECT_FALSE(span_index({int_vector({1, 2}), int_vector({2, 4})}, 2));
}

TEST(Hermite, ExpressInSpan) {
  auto c = express_in_span({int_vector({1, 0, 1}), int_vector({0, 1, 1})}, int_vector({2, 3, 5}));
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (RatVector{2, 3}));
  EXPECT_FALSE(express_in_span({int_vector({1, 0, 1}), int_vector({0, 1, 1})}, int_vector({2, 3, 4})));
}

TEST(Diagonalize, CongruenceReproducesDiagonal) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, n, n, -3, 3);
    IntMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) = a(i, j) + a(j, i);
    if (trial % 3 == 0)
      for (std::size_t i = 0; i < n; ++i) s(i, i) = 0;
    auto cd = congruence_diagonalize(s);
    RatMatrix d = cd.transform.transpose() * to_rational(s) * cd.transform;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(d(i, j), i == j ? cd.diagonal[i] : Rat(0));
    EXPECT_NE(determinant(cd.transform), 0);
  }
}

TEST(Quotient, DegenerateFormProjection) {
  QuotientLattice q = kernel_quotient(kDegenerate);
  EXPECT_EQ(q.rank(), 3u);
  EXPECT_EQ(q.ambient_rank(), 4u);
  EXPECT_EQ(q.projection * q.section, IntMatrix::identity(3));
  EXPECT_EQ(q.kernel_basis.rows(), 1u);
  EXPECT_TRUE(is_zero(mat_vec(q.projection, q.kernel_basis.row(0))));
  EXPECT_TRUE(is_hyperbolic(q.gram));
  std::mt19937 rng(14);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    IntVector x(4), y(4);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    EXPECT_EQ(q.form(q.project(x), q.project(y)), bilinear(kDegenerate, x, y));
  }
}

TEST(Quotient, NondegenerateIsIdentity) {
  IntMatrix b = int_matrix({{2, -1, 0}, {-1, 1, -1}, {0, -1, 1}});
  QuotientLattice q = kernel_quotient(b);
  EXPECT_EQ(q.projection, IntMatrix::identity(3));
  EXPECT_EQ(q.gram, b);
}

TEST(Quotient, AffineHasRankOneLess) {
  QuotientLattice q = kernel_quotient(int_matrix({{2, -2}, {-2, 2}}));
  EXPECT_EQ(q.rank(), 1u);
  EXPECT_EQ(q.gram, int_matrix({{2}}));
}

TEST(Quotient, FromGramRejectsBadInput) {
  EXPECT_THROW(QuotientLattice::from_gram(int_matrix({{1, 2}, {3, 4}})), Error);
  EXPECT_THROW(QuotientLattice::from_gram(int_matrix({{1, 1}, {1, 1}})), Error);
}

TEST(Lattice, Primitivity) {
  EXPECT_TRUE(primitivity(int_matrix({{1, 0}, {0, -1}})).is_primitive);
  auto p = primitivity(int_matrix({{2, 4}, {4, -6}}));
  EXPECT_FALSE(p.is_primitive);
  EXPECT_EQ(p.content, 2);
}

TEST(Lattice, DiscriminantExponent) {
  EXPECT_EQ(discriminant_exponent(int_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})), 1);
  EXPECT_EQ(discriminant_exponent(int_matrix({{2, 0, 0}, {0, 1, 0}, {0, 0, -3}})), 6);
  EXPECT_EQ(discriminant_exponent(int_matrix({{2, -1}, {-1, 2}})), 3);
  EXPECT_EQ(discriminant_exponent(int_matrix({{2, 0}, {0, 2}})), 2);
}

TEST(Lattice, CrystallographicRoots) {
  auto lat = QuotientLattice::from_gram(int_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  EXPECT_TRUE(is_crystallographic_root(lat, int_vector({1, -1, 0})));
  EXPECT_TRUE(is_crystallographic_root(lat, int_vector({-1, -1, 1})));
  auto lat2 = QuotientLattice::from_gram(int_matrix({{2, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  // norm 3 does not divide 2 S(e_1, d) = 4
  EXPECT_FALSE(is_crystallographic_root(lat2, int_vector({1, 1, 0})));
  EXPECT_TRUE(is_crystallographic_root(lat2, int_vector({1, 0, 0})));
  EXPECT_THROW(is_crystallographic_root(lat, int_vector({1, 0, 1})), Error);
}

TEST(Lattice, ReflectionsPreserveForm) {
  auto lat = QuotientLattice::from_gram(int_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  for (const auto& d : {int_vector({1, -1, 0}), int_vector({0, 1, 0}), int_vector({-1, -1, 1})}) {
    IntMatrix r = reflection_matrix(lat, d);
    EXPECT_EQ(r.transpose() * lat.gram * r, lat.gram);
    EXPECT_EQ(r * r, IntMatrix::identity(3));
    EXPECT_EQ(reflect_vector(lat, d, d), negated(d));
  }
  auto lat2 = QuotientLattice::from_gram(int_matrix({{2, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  try {
    reflect_vector(lat2, int_vector({1, 1, 0}), int_vector({0, 1, 0}));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonIntegralImage);
  }
}

TEST(Lattice, ConeSides) {
  auto lat = QuotientLattice::from_gram(int_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  ConeOrientation o{int_vector({0, 0, 1})};
  EXPECT_EQ(cone_side(lat, o, int_vector({0, 0, 2})), ConeSide::InteriorPositive);
  EXPECT_EQ(cone_side(lat, o, int_vector({1, 0, -2})), ConeSide::InteriorNegative);
  EXPECT_EQ(cone_side(lat, o, int_vector({1, 0, 1})), ConeSide::Boundary);
  EXPECT_EQ(cone_side(lat, o, int_vector({2, 0, 1})), ConeSide::Outside);
  auto lat22 = QuotientLattice::from_gram(int_matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}));
  EXPECT_THROW(cone_side(lat22, o, int_vector({0, 0, 1, 0})), Error);
  auto ref = default_orientation(lat, int_vector({0, 0, 1})).reference;
  EXPECT_LT(lat.norm(ref), 0);
  EXPECT_LT(lat.form(ref, int_vector({0, 0, 1})), 0);
}
