#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "bnet/delta_io.hpp"
#include "bnet/dense_matrix.hpp"
#include "bnet/errors.hpp"
#include "bnet/logical_matrix.hpp"
#include "test_util.hpp"

using namespace bnet;
using testutil::rng_t;

TEST_CASE("rational arithmetic is reduced and exact") {
  CHECK(rational(2, 4) == rational(1, 2));
  CHECK(rational(-2, -4) == rational(1, 2));
  CHECK(rational(1, -2) == rational(-1, 2));
  CHECK(rational(1, 3) + rational(1, 6) == rational(1, 2));
  CHECK(rational(2, 3) * rational(3, 2) == rational(1));
  CHECK((rational(5, 7) / rational(5, 7)).is_one());
  CHECK_THROWS_AS(rational(1, 0), std::domain_error);
  int64_t big = int64_t{1} << 40;
  CHECK_THROWS_AS(rational(big) * rational(big), std::overflow_error);
}

TEST_CASE("stp of identities is the conventional product") {
  dense_matrix i2 = dense_matrix::identity(2);
  CHECK(stp(i2, i2) == i2);
}

TEST_CASE("stp of basis columns is their Kronecker product") {
  delta_vector x{2, 1}, y{2, 2};
  // Kronecker oracle: (1,0)^T (x) (0,1)^T = (0,1,0,0)^T = delta_4^2.
  dense_matrix oracle = kron(x.to_dense(), y.to_dense());
  CHECK(stp(x.to_dense(), y.to_dense()) == oracle);
  CHECK(oracle == delta_vector{4, 2}.to_dense());
  CHECK(stp(x, y) == delta_vector{4, 2});
}

TEST_CASE("stp dimension law") {
  rng_t rng(7);
  dense_matrix a = testutil::random_dense(rng, 2, 2);
  dense_matrix b = testutil::random_dense(rng, 4, 4);
  dense_matrix r = stp(a, b);  // t = lcm(2,4) = 4
  CHECK(r.rows() == 4);
  CHECK(r.cols() == 4);
}

TEST_CASE("kron basics") {
  rng_t rng(8);
  dense_matrix b = testutil::random_dense(rng, 3, 4);
  CHECK(kron(dense_matrix::identity(1), b) == b);
  CHECK(kron(delta_vector{2, 1}.to_dense(), delta_vector{2, 2}.to_dense()) ==
        delta_vector{4, 2}.to_dense());
  // logical kron agrees with the dense path
  for (int it = 0; it < 50; ++it) {
    logical_matrix x = testutil::random_logical(rng, 3, 2);
    logical_matrix y = testutil::random_logical(rng, 2, 4);
    CHECK(kron(x, y).to_dense() == kron(x.to_dense(), y.to_dense()));
  }
}

TEST_CASE("swap matrix construction") {
  CHECK(swap_matrix(1, 5) == logical_matrix::identity(5));
  CHECK(swap_matrix(5, 1) == logical_matrix::identity(5));
  // expanding W_[2,2] columnwise: col(i,j) = delta_4^{(j-1)2+i}
  CHECK(swap_matrix(2, 2) == logical_matrix::delta(4, {1, 3, 2, 4}));
  CHECK(swap_matrix(3, 2).is_permutation());
}

TEST_CASE("swap law W[m,n] x y = y x, exhaustive for m,n <= 8") {
  for (int64_t m = 1; m <= 8; ++m)
    for (int64_t n = 1; n <= 8; ++n) {
      logical_matrix w = swap_matrix(m, n);
      for (int64_t a = 1; a <= m; ++a)
        for (int64_t b = 1; b <= n; ++b) {
          delta_vector xy = stp(delta_vector{m, a}, delta_vector{n, b});
          delta_vector yx = stp(delta_vector{n, b}, delta_vector{m, a});
          CHECK(apply(w, xy) == yx);
        }
    }
}

TEST_CASE("khatri-rao on delta representation") {
  CHECK(khatri_rao(logical_matrix::delta(2, {1, 2}), logical_matrix::delta(2, {1, 1})) ==
        logical_matrix::delta(4, {1, 3}));
  // neutral factor: a 1-row all-ones selector leaves the matrix unchanged
  logical_matrix a = logical_matrix::delta(2, {2, 1, 2});
  CHECK(khatri_rao(a, logical_matrix::constant(1, 3, 1)) == a);
  CHECK_THROWS_AS(khatri_rao(a, logical_matrix::delta(2, {1, 1})), dimension_error);
}

TEST_CASE("khatri-rao columns are columnwise stp (dense oracle)") {
  rng_t rng(11);
  for (int it = 0; it < 100; ++it) {
    logical_matrix a = testutil::random_logical(rng, 4, 6);
    logical_matrix b = testutil::random_logical(rng, 3, 6);
    dense_matrix kr = khatri_rao(a, b).to_dense();
    for (int64_t j = 1; j <= 6; ++j) {
      dense_matrix col = stp(a.column(j).to_dense(), b.column(j).to_dense());
      for (int64_t r = 0; r < kr.rows(); ++r) CHECK(kr.at(r, j - 1) == col.at(r, 0));
    }
  }
}

TEST_CASE("(A*B)T = (AT)*(BT) for logical and dense operands") {
  rng_t rng(12);
  for (int it = 0; it < 200; ++it) {
    logical_matrix a = testutil::random_logical(rng, 3, 5);
    logical_matrix b = testutil::random_logical(rng, 4, 5);
    logical_matrix t = testutil::random_logical(rng, 5, 7);
    CHECK(compose(khatri_rao(a, b), t) == khatri_rao(compose(a, t), compose(b, t)));
  }
  for (int it = 0; it < 100; ++it) {
    dense_matrix a = testutil::random_dense(rng, 2, 5);
    dense_matrix b = testutil::random_dense(rng, 3, 5);
    logical_matrix t = testutil::random_logical(rng, 5, 4);
    CHECK(khatri_rao(a, b) * t.to_dense() ==
          khatri_rao(a * t.to_dense(), b * t.to_dense()));
  }
}

TEST_CASE("logical compose equals dense product") {
  rng_t rng(13);
  logical_matrix b = testutil::random_logical(rng, 4, 6);
  CHECK(compose(logical_matrix::identity(4), b) == b);
  for (int it = 0; it < 200; ++it) {
    logical_matrix x = testutil::random_logical(rng, 5, 4);
    logical_matrix y = testutil::random_logical(rng, 4, 6);
    CHECK(compose(x, y).to_dense() == stp(x.to_dense(), y.to_dense()));
  }
  CHECK_THROWS_AS(compose(b, b), dimension_error);
}

TEST_CASE("zero-extended compose propagates zero columns") {
  logical_matrix a = logical_matrix::delta(3, {2, 3, 1});
  zero_extended_matrix z(3, {1, 0, 3, 0});
  zero_extended_matrix r = compose(a, z);
  CHECK(r == zero_extended_matrix(3, {2, 0, 1, 0}));
  CHECK(r.has_zero_column());
}

TEST_CASE("transpose laws") {
  CHECK(dense_matrix::identity(3).transpose() == dense_matrix::identity(3));
  rng_t rng(14);
  for (int it = 0; it < 100; ++it) {
    dense_matrix a = testutil::random_dense(rng, 2, 3);
    dense_matrix b = testutil::random_dense(rng, 6, 2);
    CHECK(stp(a, b).transpose() == stp(b.transpose(), a.transpose()));
  }
  logical_matrix t = testutil::random_permutation(rng, 8);
  CHECK(compose(t, t.permutation_transpose()) == logical_matrix::identity(8));
  CHECK(t.to_dense().transpose() == t.permutation_transpose().to_dense());
}

TEST_CASE("stp associativity and distributivity on rationals") {
  rng_t rng(15);
  for (int it = 0; it < 100; ++it) {
    dense_matrix f = testutil::random_dense(rng, 2, 3);
    dense_matrix g = testutil::random_dense(rng, 2, 2);
    dense_matrix h = testutil::random_dense(rng, 4, 3);
    CHECK(stp(stp(f, g), h) == stp(f, stp(g, h)));
  }
  for (int it = 0; it < 100; ++it) {
    dense_matrix f = testutil::random_dense(rng, 3, 4);
    dense_matrix g = testutil::random_dense(rng, 2, 2);
    dense_matrix h = testutil::random_dense(rng, 2, 2);
    rational a = testutil::random_rational(rng), b = testutil::random_rational(rng);
    dense_matrix lhs = stp(f, (a * g) + (-b * h));
    dense_matrix rhs = (a * stp(f, g)) + (-b * stp(f, h));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("stp inverse law (A B)^-1 = B^-1 A^-1") {
  rng_t rng(16);
  for (int it = 0; it < 50; ++it) {
    dense_matrix a = testutil::random_invertible(rng, 2);
    dense_matrix b = testutil::random_invertible(rng, 4);
    dense_matrix lhs = *stp(a, b).inverse();
    dense_matrix rhs = stp(*b.inverse(), *a.inverse());
    CHECK(lhs == rhs);
  }
}

TEST_CASE("pseudo-commutativity x M = (I_m (x) M) x") {
  rng_t rng(17);
  for (int it = 0; it < 100; ++it) {
    dense_matrix x = testutil::random_dense(rng, 3, 1);
    dense_matrix m = testutil::random_dense(rng, 2, 4);
    CHECK(stp(x, m) == stp(kron(dense_matrix::identity(3), m), x));
  }
}

TEST_CASE("column and row kron laws, exhaustive basis pairs up to dim 8") {
  for (int64_t m = 1; m <= 8; ++m)
    for (int64_t n = 1; n <= 8; ++n)
      for (int64_t a = 1; a <= m; ++a)
        for (int64_t b = 1; b <= n; ++b) {
          dense_matrix x = delta_vector{m, a}.to_dense();
          dense_matrix y = delta_vector{n, b}.to_dense();
          CHECK(stp(x, y) == kron(x, y));
          dense_matrix xr = x.transpose(), yr = y.transpose();
          CHECK(stp(xr, yr) == kron(yr, xr));
        }
}

TEST_CASE("ones row eliminates a delta factor") {
  ones_vector j{4};
  for (int64_t i = 1; i <= 4; ++i) {
    dense_matrix r = j.transpose() * delta_vector{4, i}.to_dense();
    CHECK(r.at(0, 0) == rational(1));
  }
}

TEST_CASE("state index encode/decode") {
  std::vector<int> all_true{1, 1, 1, 1, 1};
  CHECK(state_index_encode(all_true) == delta_vector{32, 1});
  std::vector<int> one_zero{1, 0};
  CHECK(state_index_encode(one_zero) == delta_vector{4, 2});
  // published walkthrough state: x^3 = delta_512^165
  std::vector<int> grid_state{1, 0, 1, 0, 1, 1, 0, 1, 1};
  CHECK(state_index_encode(grid_state) == delta_vector{512, 165});

  for (int64_t n = 1; n <= 10; ++n)
    for (int64_t idx = 1; idx <= (int64_t{1} << n); ++idx) {
      auto bits = state_index_decode(n, idx);
      CHECK(state_index_encode(bits).index == idx);
    }
}

TEST_CASE("encode matches iterated stp of delta_2 factors") {
  rng_t rng(18);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int it = 0; it < 50; ++it) {
    std::vector<int> bits(6);
    for (auto& b : bits) b = bit(rng);
    delta_vector acc{2, bits[0] ? 1 : 2};
    for (size_t i = 1; i < bits.size(); ++i) acc = stp(acc, delta_vector{2, bits[i] ? 1 : 2});
    CHECK(acc == state_index_encode(bits));
  }
}

TEST_CASE("logical matrix validates column indices") {
  CHECK_THROWS_AS(logical_matrix(2, {1, 3}), dimension_error);
  CHECK_THROWS_AS(logical_matrix(2, {0}), dimension_error);
  CHECK_NOTHROW(zero_extended_matrix(2, {0, 1, 2}));
  CHECK_THROWS_AS(zero_extended_matrix(2, {-1}), dimension_error);
}

TEST_CASE("delta text format round trips") {
  rng_t rng(19);
  for (int it = 0; it < 100; ++it) {
    logical_matrix m = testutil::random_logical(rng, 1 + static_cast<int64_t>(rng() % 40),
                                                1 + static_cast<int64_t>(rng() % 50));
    std::ostringstream os;
    write_stanza(os, m, "f");
    auto stanzas = parse_stanzas(os.str());
    REQUIRE(stanzas.size() == 1);
    CHECK(stanzas[0].name == "f");
    CHECK(stanzas[0].logical() == m);
  }
  zero_extended_matrix z(3, {0, 2, 0, 1});
  std::ostringstream os;
  write_stanza(os, z);
  auto stanzas = parse_stanzas(os.str());
  REQUIRE(stanzas.size() == 1);
  CHECK(stanzas[0].zero_extended() == z);

  dense_matrix d(2, 2, {rational(1, 2), rational(-3), rational(0), rational(7, 5)});
  std::ostringstream ds;
  write_stanza(ds, d, "dense1");
  auto dst = parse_stanzas(ds.str());
  REQUIRE(dst.size() == 1);
  CHECK(dst[0].dense() == d);

  CHECK_THROWS_AS(parse_stanzas("delta 2 2\n1 3\n"), parse_error);
  CHECK_THROWS_AS(parse_stanzas("delta 2 2\n1 0\n"), parse_error);  // zero needs zeroext
  CHECK_NOTHROW(parse_stanzas("delta 2 2 zeroext\n1 0\n"));
  CHECK_THROWS_AS(parse_stanzas("bogus 1 1\n"), parse_error);
}
