#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace maxleak {

/// Exact nonnegative dyadic rational: mantissa * 2^-exponent, with an
/// unbounded integer mantissa. Canonical form keeps the mantissa odd (or
/// zero) whenever the exponent can still be reduced, so equality and
/// ordering are plain field comparisons after alignment.
///
/// All channel probabilities under uniform i.i.d. key bits have this shape,
/// which is why sums, maxima, and equality tests in the leakage oracle never
/// touch floating point.
class Dyadic {
public:
  Dyadic() : mant_(0), exp_(0) {}

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return scaled(1, 0); }
  // count * 2^-exp
  static Dyadic scaled(mpz_class count, unsigned long exp);
  static Dyadic pow2_neg(unsigned long k) { return scaled(1, k); }
  static Dyadic from_uint(unsigned long v) { return scaled(mpz_class(v), 0); }

  const mpz_class& mantissa() const { return mant_; }
  unsigned long exponent() const { return exp_; }

  bool is_zero() const { return mant_ == 0; }
  bool is_one() const { return exp_ == 0 && mant_ == 1; }

  Dyadic& operator+=(const Dyadic& o);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) {
    a += b;
    return a;
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.mant_ == b.mant_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  double to_double() const;
  /// log2 of the value; exact (an integer double) when the value is a power
  /// of two. Requires a positive value.
  double log2() const;
  mpq_class to_mpq() const;
  std::string to_string() const;  // "m/2^e"

private:
  void canonicalize();

  mpz_class mant_;
  unsigned long exp_;
};

/// log2 of a positive big integer, good to double precision.
double log2_mpz(const mpz_class& v);

}  // namespace maxleak
