#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qline {

// Exact rational, always in lowest terms with positive denominator.
class BigRat {
public:
  BigRat() = default;
  BigRat(long v) : v_(v) {}
  BigRat(int v) : v_(v) {}
  BigRat(long num, long den);
  explicit BigRat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  static BigRat parse(std::string_view text);
  // Exact value of a binary64 number.
  static BigRat from_double(double d) { return BigRat(mpq_class(d)); }
  std::string str() const;

  const mpq_class& raw() const { return v_; }
  std::string numerator() const { return v_.get_num().get_str(); }
  std::string denominator() const { return v_.get_den().get_str(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  BigRat operator-() const { return BigRat(mpq_class(-v_)); }
  BigRat& operator+=(const BigRat& o) { v_ += o.v_; return *this; }
  BigRat& operator-=(const BigRat& o) { v_ -= o.v_; return *this; }
  BigRat& operator*=(const BigRat& o) { v_ *= o.v_; return *this; }
  BigRat& operator/=(const BigRat& o);

  friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
  friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
  friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
  friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }

  friend bool operator==(const BigRat& a, const BigRat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  BigRat inverse() const { return BigRat(1) / *this; }

private:
  mpq_class v_;
};

// Exact Gaussian rational re + im*i.
class CplxRat {
public:
  CplxRat() = default;
  CplxRat(const BigRat& re) : re_(re) {}
  CplxRat(long re) : re_(re) {}
  CplxRat(int re) : re_(re) {}
  CplxRat(const BigRat& re, const BigRat& im) : re_(re), im_(im) {}

  static CplxRat i() { return CplxRat(BigRat(0), BigRat(1)); }
  static CplxRat parse(std::string_view text);
  std::string str() const;

  const BigRat& re() const { return re_; }
  const BigRat& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  CplxRat conj() const { return CplxRat(re_, -im_); }
  BigRat norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  CplxRat operator-() const { return CplxRat(-re_, -im_); }
  CplxRat& operator+=(const CplxRat& o) { re_ += o.re_; im_ += o.im_; return *this; }
  CplxRat& operator-=(const CplxRat& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  CplxRat& operator*=(const CplxRat& o);
  CplxRat& operator/=(const CplxRat& o);

  friend CplxRat operator+(CplxRat a, const CplxRat& b) { return a += b; }
  friend CplxRat operator-(CplxRat a, const CplxRat& b) { return a -= b; }
  friend CplxRat operator*(CplxRat a, const CplxRat& b) { return a *= b; }
  friend CplxRat operator/(CplxRat a, const CplxRat& b) { return a /= b; }
  friend bool operator==(const CplxRat& a, const CplxRat& b) = default;

  CplxRat inverse() const { return CplxRat(1) / *this; }

private:
  BigRat re_, im_;
};

BigRat make_q(long numer, long denom);
BigRat make_q(const BigRat& q);
BigRat z_of(const BigRat& q);
BigRat qpow(const BigRat& q, long n);
CplxRat cpow(const CplxRat& c, long n);

}  // namespace qline
