#include "doctest.h"
#include "stab/linalg.hpp"

using namespace stab;

TEST_CASE("rank of small matrices") {
  CHECK(rank(Matrix::identity(2, 2)) == 2);
  CHECK(rank(Matrix::zero(2, 3, 4)) == 0);
  CHECK(rank(Matrix::from_rows(2, {{1, 1}, {1, 1}})) == 1);
  CHECK(rank(Matrix::from_rows(3, {{1, 2, 0}, {2, 1, 0}})) == 1);
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(Matrix::identity(2, 2)).empty());
  CHECK(kernel_basis(Matrix::zero(2, 2, 2)).size() == 2);
  auto k = kernel_basis(Matrix::from_rows(3, {{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0](0, 0) == 2);
  CHECK(k[0](1, 0) == 1);
}

TEST_CASE("rank-nullity and kernel vectors on random matrices") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t r = rng() % 6, c = rng() % 6;
      Matrix m = random_matrix(p, r, c, rng);
      auto ker = kernel_basis(m);
      CHECK(rank(m) + ker.size() == c);
      for (const auto& v : ker) CHECK((m * v).is_zero());
    }
  }
}

TEST_CASE("solve and inverses") {
  Matrix a = Matrix::from_rows(3, {{1, 2}, {0, 1}});
  Matrix inv = inverse(a);
  CHECK((a * inv).is_identity());
  CHECK(!solve(Matrix::zero(2, 2, 2), Matrix::identity(2, 2)).has_value());
  Matrix q = cokernel_projection(Matrix::from_rows(2, {{1}, {1}, {0}}));
  CHECK(q.rows() == 2);
  CHECK((q * Matrix::from_rows(2, {{1}, {1}, {0}})).is_zero());
}

TEST_CASE("matrix equation solver") {
  SUBCASE("H * I = I") {
    LinearSystem sys(2);
    auto h = sys.add_unknown(2, 2);
    sys.add_equation({{Matrix::identity(2, 2), h, Matrix::identity(2, 2)}}, Matrix::identity(2, 2));
    auto sol = sys.solve();
    REQUIRE(sol);
    CHECK((*sol)[0].is_identity());
  }
  SUBCASE("0 * H = I has no solution") {
    LinearSystem sys(2);
    auto h = sys.add_unknown(2, 2);
    sys.add_equation({{Matrix::zero(2, 2, 2), h, Matrix::identity(2, 2)}}, Matrix::identity(2, 2));
    CHECK(!sys.solve());
  }
  SUBCASE("column constraint") {
    LinearSystem sys(2);
    auto h = sys.add_unknown(2, 2);
    sys.add_equation({{Matrix::identity(2, 2), h, Matrix::from_rows(2, {{1}, {0}})}},
                     Matrix::from_rows(2, {{1}, {1}}));
    auto space = sys.solution_space();
    REQUIRE(space);
    CHECK(space->homogeneous.size() == 2);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 8; ++i) {
      auto s = sample(*space, rng);
      CHECK(s[0](0, 0) == 1);
      CHECK(s[0](1, 0) == 1);
      CHECK(sys.satisfied_by(s));
    }
  }
}
