#include <gtest/gtest.h>

#include <random>

#include "ppg/matrix.hpp"

using namespace ppg;

namespace {

IntMatrix mod_mul(const IntMatrix& a, const IntMatrix& b, i64 q) {
  IntMatrix r(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      i128 acc = 0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += static_cast<i128>(a(i, k)) * b(k, j);
      r(i, j) = mod(acc, q);
    }
  return r;
}

}  // namespace

TEST(Diagonalize, ReproducesDiagonal) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-8, 8);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix a(3, 2);
    for (auto& x : a.data) x = d(rng);
    auto f = diagonalize(a);
    IntMatrix prod = multiply(multiply(f.U, a), f.V);
    EXPECT_EQ(prod, f.D);
    for (std::size_t i = 0; i < f.D.rows; ++i)
      for (std::size_t j = 0; j < f.D.cols; ++j)
        if (i != j) {
          EXPECT_EQ(f.D(i, j), 0);
        }
  }
}

TEST(ModSmith, ReproducesDiagonal) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix a(3, 4);
    for (auto& x : a.data) x = d(rng);
    auto s = mod_smith(a, 2, 5);
    IntMatrix prod = mod_mul(mod_mul(s.U, a, s.modulus), s.V, s.modulus);
    for (std::size_t i = 0; i < prod.rows; ++i)
      for (std::size_t j = 0; j < prod.cols; ++j) {
        i64 expect = (i == j && s.val[i] < 5) ? ipow(2, s.val[i]) : 0;
        EXPECT_EQ(prod(i, j), expect);
      }
  }
}

TEST(SolveMod, FindsSolutionsAndRejectsInconsistent) {
  IntMatrix a(1, 1);
  a(0, 0) = 2;
  auto x = solve_mod(a, {2}, 2, 2);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(mod(2 * (*x)[0], 4), 2);
  EXPECT_FALSE(solve_mod(a, {1}, 2, 2).has_value());

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(0, 26);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m(3, 3);
    for (auto& v : m.data) v = d(rng);
    std::vector<i64> x0 = {d(rng), d(rng), d(rng)};
    std::vector<i64> b(3, 0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) b[i] = mod(b[i] + m(i, j) * x0[j], 27);
    auto sol = solve_mod(m, b, 3, 3);
    ASSERT_TRUE(sol.has_value());
    for (std::size_t i = 0; i < 3; ++i) {
      i64 acc = 0;
      for (std::size_t j = 0; j < 3; ++j) acc = mod(acc + m(i, j) * (*sol)[j], 27);
      EXPECT_EQ(acc, b[i]);
    }
  }
}
