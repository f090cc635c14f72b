#include <random>
#include <set>

#include "doctest.h"
#include "dgkit/error.hpp"
#include "dgkit/linalg.hpp"

using namespace dgkit;

namespace {

SparseMatrix dense(const Field& k, const std::vector<std::vector<long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  SparseMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.add(i, j, k.from_int(rows[i][j]));
  return m;
}

// Rank by brute force over F_p: count vectors in the row space.
int brute_rank_mod(const std::vector<std::vector<long>>& rows, long p) {
  std::size_t n = rows.size();
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  std::set<std::vector<long>> span;
  std::vector<long> coeff(n, 0);
  while (true) {
    std::vector<long> v(cols, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < cols; ++j) v[j] = ((v[j] + coeff[i] * rows[i][j]) % p + p) % p;
    span.insert(v);
    std::size_t i = 0;
    while (i < n && ++coeff[i] == p) coeff[i++] = 0;
    if (i == n) break;
  }
  std::size_t size = span.size();
  int rank = 0;
  while (size > 1) {
    size /= static_cast<std::size_t>(p);
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("scalars are exact in both characteristics") {
  Field q(0);
  CHECK((q.parse("1/3") + q.parse("2/3")).is_one());
  CHECK(q.parse("-4/6") == q.parse("-2/3"));
  Field f5(5);
  CHECK((f5.from_int(3) * f5.from_int(2)).is_one());
  CHECK(f5.parse("1/2") == f5.from_int(3));
  CHECK(f5.from_int(-1).to_string() == "4");
  CHECK_THROWS_AS(Field(4), Error);
  CHECK_THROWS_AS(f5.parse("1/5"), Error);
  CHECK_THROWS_AS(q.one() + f5.one(), Error);
}

TEST_CASE("kernel_image on small matrices") {
  Field k(0);
  auto id = kernel_image(dense(k, {{1, 0}, {0, 1}}), k);
  CHECK(id.rank == 2);
  CHECK(id.kernel_basis.empty());

  auto m = dense(k, {{1, 1}});
  auto ones = kernel_image(m, k);
  CHECK(ones.rank == 1);
  REQUIRE(ones.kernel_basis.size() == 1);
  CHECK(m.apply(ones.kernel_basis[0], k).empty());
  CHECK(ones.kernel_basis[0].at(0, k) == -ones.kernel_basis[0].at(1, k));

  auto zero = kernel_image(SparseMatrix(2, 2), k);
  CHECK(zero.rank == 0);
  CHECK(zero.kernel_basis.size() == 2);

  auto empty = kernel_image(SparseMatrix(0, 0), k);
  CHECK(empty.rank == 0);
  CHECK(empty.kernel_basis.empty());
}

TEST_CASE("rank-nullity and brute-force rank over F_3") {
  std::mt19937 rng(7);
  Field f3(3);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + static_cast<int>(rng() % 4);
    int c = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    for (auto& row : rows)
      for (auto& x : row) x = static_cast<long>(rng() % 3);
    auto m = dense(f3, rows);
    auto ki = kernel_image(m, f3);
    CHECK(ki.rank + static_cast<int>(ki.kernel_basis.size()) == c);
    CHECK(ki.rank == brute_rank_mod(rows, 3));
    for (const auto& v : ki.kernel_basis) CHECK(m.apply(v, f3).empty());
  }
}

TEST_CASE("cohomology of tiny complexes") {
  Field k(0);
  ChainComplex point;
  point.spaces.set_degree(0, {"1"});
  auto h = cohomology_of_complex(point, -1, 1, k);
  CHECK(h.classes.dims() == std::map<int, int>{{0, 1}});

  ChainComplex iso;
  iso.spaces.set_degree(0, {"x"});
  iso.spaces.set_degree(1, {"y"});
  iso.differentials.emplace(0, dense(k, {{1}}));
  CHECK(cohomology_of_complex(iso, -1, 2, k).classes.total_dim() == 0);

  ChainComplex bad;
  bad.spaces.set_degree(0, {"x"});
  bad.spaces.set_degree(1, {"y"});
  bad.spaces.set_degree(2, {"z"});
  bad.differentials.emplace(0, dense(k, {{1}}));
  bad.differentials.emplace(1, dense(k, {{1}}));
  try {
    cohomology_of_complex(bad, 0, 1, k);
    FAIL("expected DSquaredNonzero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DSquaredNonzero);
  }
}

TEST_CASE("zero differential returns input dims; permuted bases agree") {
  Field k(0);
  ChainComplex c;
  c.spaces.set_degree(-1, {"a", "b"});
  c.spaces.set_degree(0, {"c", "d", "e"});
  c.spaces.set_degree(2, {"f"});
  CHECK(cohomology_of_complex(c, -2, 3, k).classes.dims() == c.spaces.dims());

  // d: C^0 -> C^1 of rank 1, written in two basis orders.
  ChainComplex p1, p2;
  p1.spaces.set_degree(0, {"x", "y", "z"});
  p1.spaces.set_degree(1, {"u", "v"});
  p1.differentials.emplace(0, dense(k, {{1, 2, 0}, {2, 4, 0}}));
  p2.spaces.set_degree(0, {"z", "y", "x"});
  p2.spaces.set_degree(1, {"v", "u"});
  p2.differentials.emplace(0, dense(k, {{0, 4, 2}, {0, 2, 1}}));
  auto h1 = cohomology_of_complex(p1, 0, 1, k);
  auto h2 = cohomology_of_complex(p2, 0, 1, k);
  CHECK(h1.classes.dims() == h2.classes.dims());
  CHECK(h1.classes.dim(0) == 2);
  CHECK(h1.classes.dim(1) == 1);
  for (const auto& z : h1.representatives.at(0)) CHECK(p1.differentials.at(0).apply(z, k).empty());
}

TEST_CASE("duplicate labels are rejected") {
  GradedVectorSpace v;
  CHECK_THROWS_AS(v.set_degree(0, {"a", "a"}), Error);
}
