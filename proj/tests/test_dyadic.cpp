#include <doctest.h>

#include <random>

#include "maxleak/dyadic.hpp"
#include "maxleak/errors.hpp"

using namespace maxleak;

TEST_CASE("canonical form keeps the mantissa odd or zero") {
  Dyadic d = Dyadic::scaled(mpz_class(4), 3);  // 4/8 = 1/2
  CHECK(d.mantissa() == 1);
  CHECK(d.exponent() == 1);
  Dyadic z = Dyadic::scaled(mpz_class(0), 5);
  CHECK(z.is_zero());
  CHECK(z.exponent() == 0);
  Dyadic even = Dyadic::scaled(mpz_class(6), 0);  // integers stay put
  CHECK(even.mantissa() == 6);
  CHECK(even.exponent() == 0);
}

TEST_CASE("addition is exact") {
  Dyadic half = Dyadic::pow2_neg(1);
  Dyadic quarter = Dyadic::pow2_neg(2);
  Dyadic sum = half + quarter + quarter;
  CHECK(sum.is_one());
  CHECK(sum == Dyadic::one());

  // 2^-60 added 2^60 times is exactly one
  Dyadic tiny = Dyadic::pow2_neg(60);
  Dyadic acc;
  for (int i = 0; i < 1024; ++i) acc += tiny;
  CHECK(acc == Dyadic::pow2_neg(50));
}

TEST_CASE("ordering crosses exponents") {
  CHECK(Dyadic::pow2_neg(3) < Dyadic::pow2_neg(2));
  CHECK(Dyadic::scaled(mpz_class(3), 2) > Dyadic::pow2_neg(1));  // 3/4 > 1/2
  CHECK(Dyadic::scaled(mpz_class(2), 1) == Dyadic::one());
  CHECK(Dyadic::zero() < Dyadic::pow2_neg(62));
}

TEST_CASE("log2 is exact on powers of two") {
  CHECK(Dyadic::one().log2() == 0.0);
  CHECK(Dyadic::pow2_neg(17).log2() == -17.0);
  CHECK(Dyadic::scaled(mpz_class(1) << 40, 0).log2() == 40.0);
  CHECK(Dyadic::scaled(mpz_class(3), 0).log2() ==
        doctest::Approx(1.584962500721156).epsilon(1e-12));
  CHECK_THROWS_AS(Dyadic::zero().log2(), Error);
}

TEST_CASE("mpq conversion agrees") {
  Dyadic d = Dyadic::scaled(mpz_class(5), 4);  // 5/16
  mpq_class q = d.to_mpq();
  CHECK(q == mpq_class(5, 16));
}

TEST_CASE("random sums match double arithmetic approximately") {
  std::mt19937_64 rng(11);
  Dyadic sum;
  double ref = 0;
  for (int i = 0; i < 500; ++i) {
    unsigned long e = rng() % 30;
    unsigned long m = rng() % 1000;
    sum += Dyadic::scaled(mpz_class(m), e);
    ref += double(m) / double(1ull << e);
  }
  CHECK(sum.to_double() == doctest::Approx(ref).epsilon(1e-12));
}
