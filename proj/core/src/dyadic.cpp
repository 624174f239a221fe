#include "maxleak/dyadic.hpp"

#include <cassert>
#include <cmath>

#include "maxleak/errors.hpp"

namespace maxleak {

Dyadic Dyadic::scaled(mpz_class count, unsigned long exp) {
  if (count < 0) fail(Errc::bad_channel, "dyadic mantissa must be nonnegative");
  Dyadic d;
  d.mant_ = std::move(count);
  d.exp_ = exp;
  d.canonicalize();
  return d;
}

void Dyadic::canonicalize() {
  if (mant_ == 0) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  unsigned long tz = mpz_scan1(mant_.get_mpz_t(), 0);
  unsigned long shift = tz < exp_ ? tz : exp_;
  if (shift > 0) {
    mant_ >>= shift;
    exp_ -= shift;
  }
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  unsigned long e = exp_ > o.exp_ ? exp_ : o.exp_;
  mpz_class a = mant_ << (e - exp_);
  mpz_class b = o.mant_ << (e - o.exp_);
  mant_ = a + b;
  exp_ = e;
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  unsigned long e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
  mpz_class x = a.mant_ << (e - a.exp_);
  mpz_class y = b.mant_ << (e - b.exp_);
  int c = cmp(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double log2_mpz(const mpz_class& v) {
  assert(v > 0);
  // Exact when v is a power of two.
  size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
  if (mpz_scan1(v.get_mpz_t(), 0) == bits - 1) {
    return double(bits - 1);
  }
  signed long e;
  double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return double(e) + std::log2(d);
}

double Dyadic::to_double() const {
  if (mant_ == 0) return 0.0;
  signed long e;
  double d = mpz_get_d_2exp(&e, mant_.get_mpz_t());
  return std::ldexp(d, int(e - long(exp_)));
}

double Dyadic::log2() const {
  if (mant_ == 0) fail(Errc::bad_channel, "log2 of zero");
  return log2_mpz(mant_) - double(exp_);
}

mpq_class Dyadic::to_mpq() const {
  mpz_class den = 1;
  den <<= exp_;
  mpq_class q(mant_, den);
  q.canonicalize();
  return q;
}

std::string Dyadic::to_string() const {
  return mant_.get_str() + "/2^" + std::to_string(exp_);
}

}  // namespace maxleak
