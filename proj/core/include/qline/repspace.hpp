#pragma once

#include "qline/algebra.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace qline {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

enum class Boundary { Open, Cyclic };
enum class Units { Planck, Laboratory };

// Basis window |kmin> .. |kmax>.
struct Window {
  long kmin = -16, kmax = 16;
  Boundary mode = Boundary::Open;
  BigRat q = BigRat(3, 2);
  Units units = Units::Planck;

  static Window make(long kmin, long kmax, Boundary mode, const BigRat& q, Units units = Units::Planck);

  long dim() const { return kmax - kmin + 1; }
  long index(long k) const { return k - kmin; }
  long k_at(long i) const { return kmin + i; }
  bool contains(long k) const { return k >= kmin && k <= kmax; }
  double qd() const { return q.to_double(); }
  // Eigenvalue spacing of y: 1 in Planck units, z in laboratory units.
  double spacing() const;
  bool same_as(const Window& o) const;
};

struct TruncatedRep {
  Window w;
  Mat m;
  long lower = 0;   // max (row - col): reach towards higher k
  long upper = 0;   // max (col - row)
  long margin = 0;  // rows within margin of the boundary are not trusted

  static TruncatedRep zero(const Window& w);
  static TruncatedRep identity(const Window& w);

  long valid_kmin() const { return w.kmin + margin; }
  long valid_kmax() const { return w.kmax - margin; }
  bool has_valid_rows() const { return valid_kmin() <= valid_kmax(); }

  TruncatedRep adjoint() const;
  TruncatedRep operator-() const;
  TruncatedRep& operator+=(const TruncatedRep& o);
  TruncatedRep& operator-=(const TruncatedRep& o);
  TruncatedRep& operator*=(cplx s);
  friend TruncatedRep operator+(TruncatedRep a, const TruncatedRep& b) { return a += b; }
  friend TruncatedRep operator-(TruncatedRep a, const TruncatedRep& b) { return a -= b; }
  friend TruncatedRep operator*(cplx s, TruncatedRep a) { return a *= s; }
  friend TruncatedRep operator*(const TruncatedRep& a, const TruncatedRep& b);

  cplx at(long krow, long kcol) const { return m(w.index(krow), w.index(kcol)); }
};

TruncatedRep commutator(const TruncatedRep& a, const TruncatedRep& b);

struct DoubledRep {
  TruncatedRep first, second;

  static DoubledRep identity(const Window& w) { return {TruncatedRep::identity(w), TruncatedRep::identity(w)}; }
  static DoubledRep embed(const TruncatedRep& r) { return {r, r}; }
  // (A1, A2)* = (A2^dagger, A1^dagger)
  DoubledRep twisted_adjoint() const { return {second.adjoint(), first.adjoint()}; }
  // Same operator as one block-diagonal matrix on the direct sum.
  Mat block_matrix() const;

  DoubledRep operator-() const { return {-first, -second}; }
  DoubledRep& operator+=(const DoubledRep& o) { first += o.first; second += o.second; return *this; }
  DoubledRep& operator-=(const DoubledRep& o) { first -= o.first; second -= o.second; return *this; }
  friend DoubledRep operator+(DoubledRep a, const DoubledRep& b) { return a += b; }
  friend DoubledRep operator-(DoubledRep a, const DoubledRep& b) { return a -= b; }
  friend DoubledRep operator*(cplx s, const DoubledRep& a) { return {s * a.first, s * a.second}; }
  friend DoubledRep operator*(const DoubledRep& a, const DoubledRep& b) {
    return {a.first * b.first, a.second * b.second};
  }
};

DoubledRep commutator(const DoubledRep& a, const DoubledRep& b);

enum class RepGen { X, XInv, Lambda, LambdaInv, Y, Dx, Dxbar, D1, Db1, PlaneWave };

TruncatedRep rep_generator(RepGen g, const Window& w, const Params& p,
                           std::optional<double> wavenumber = std::nullopt);
TruncatedRep rep_of(const AlgebraElement& f, const Window& w, const Params& p);
DoubledRep rep_of(const DoubledElement& f, const Window& w, const Params& p);
// Product of generator matrices in word order, without normal ordering.
TruncatedRep rep_of_word(const Word& word, const Window& w, const Params& p);

// Principal square root of a cyclic unitary circulant (e.g. the cyclic shift).
TruncatedRep unitary_sqrt(const TruncatedRep& u);

struct ProbeSpec {
  double fwhm_fraction = 1.0 / 8.0;  // full width at half maximum, as a fraction of the window
  std::vector<double> centers;       // k values; empty means the window midpoint
  bool relative = false;             // divide by ||B v|| instead of ||v||
};

Vec gaussian_probe(const Window& w, double center_k, double fwhm);
double interior_residual(const TruncatedRep& a, const TruncatedRep& b, const ProbeSpec& probes = {});
double interior_residual(const DoubledRep& a, const DoubledRep& b, const ProbeSpec& probes = {});
// Max entry of |A - B| over valid rows (margin from both operands), optionally relative
// to the largest entry of A or B on those rows.
double row_restricted_residual(const TruncatedRep& a, const TruncatedRep& b, bool relative = false);

std::string to_csv(const TruncatedRep& r, double threshold = 0.0);
std::string to_json(const TruncatedRep& r);

}  // namespace qline
