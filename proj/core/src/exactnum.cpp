#include "qline/exactnum.hpp"

#include <cctype>
#include <stdexcept>

namespace qline {

namespace {

bool is_int_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

BigRat::BigRat(long num, long den) {
  if (den == 0) throw std::domain_error("BigRat: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

BigRat& BigRat::operator/=(const BigRat& o) {
  if (o.is_zero()) throw std::domain_error("BigRat: division by zero");
  v_ /= o.v_;
  return *this;
}

BigRat BigRat::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_int_literal(num) || !is_int_literal(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  std::string n(num[0] == '+' ? num.substr(1) : num);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
  mpq_class v(zn, zd);
  v.canonicalize();
  return BigRat(v);
}

std::string BigRat::str() const { return v_.get_str(10); }

CplxRat& CplxRat::operator*=(const CplxRat& o) {
  BigRat r = re_ * o.re_ - im_ * o.im_;
  BigRat i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

CplxRat& CplxRat::operator/=(const CplxRat& o) {
  BigRat n = o.norm2();
  if (n.is_zero()) throw std::domain_error("CplxRat: division by zero");
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

// Accepts "p/q", "r/s*i", "i", "-i", "p/q+r/s*i", "p/q-i".
CplxRat CplxRat::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i') return CplxRat(BigRat::parse(s));

  // split at the last sign that is not leading
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if (s[k] == '+' || s[k] == '-') { split = k; break; }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  im_part.pop_back();  // drop 'i'
  if (!im_part.empty() && im_part.back() == '*') im_part.pop_back();
  BigRat im;
  if (im_part.empty() || im_part == "+") im = BigRat(1);
  else if (im_part == "-") im = BigRat(-1);
  else im = BigRat::parse(im_part);
  BigRat re = re_part.empty() ? BigRat(0) : BigRat::parse(re_part);
  return CplxRat(re, im);
}

std::string CplxRat::str() const {
  if (im_.is_zero()) return re_.str();
  std::string out;
  if (!re_.is_zero()) out = re_.str();
  if (im_.sign() > 0 && !out.empty()) out += "+";
  out += im_.str() + "*i";
  return out;
}

BigRat make_q(long numer, long denom) {
  if (denom == 0) throw std::invalid_argument("q: zero denominator");
  return make_q(BigRat(numer, denom));
}

BigRat make_q(const BigRat& q) {
  if (q <= BigRat(1)) throw std::invalid_argument("q must exceed 1, got " + q.str());
  return q;
}

BigRat z_of(const BigRat& q) {
  if (q <= BigRat(1)) throw std::invalid_argument("z_of: q must exceed 1, got " + q.str());
  return (q - BigRat(1)) / q;
}

BigRat qpow(const BigRat& q, long n) {
  if (n < 0) return qpow(q.inverse(), -n);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.raw().get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), q.raw().get_den_mpz_t(), static_cast<unsigned long>(n));
  return BigRat(mpq_class(num, den));
}

CplxRat cpow(const CplxRat& c, long n) {
  if (n < 0) return cpow(c.inverse(), -n);
  CplxRat r(1), base = c;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

}  // namespace qline
