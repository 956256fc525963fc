#include "qline/repspace.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qline {

Window Window::make(long kmin, long kmax, Boundary mode, const BigRat& q, Units units) {
  if (kmax - kmin < 8)
    throw std::invalid_argument("window needs kmax - kmin >= 8, got [" + std::to_string(kmin) + ", " +
                                std::to_string(kmax) + "]");
  if (mode == Boundary::Cyclic && (kmax - kmin + 1) % 2 == 0)
    throw std::invalid_argument("cyclic windows need odd dimension");
  if (q.sign() <= 0) throw std::invalid_argument("window q must be positive");
  return Window{kmin, kmax, mode, q, units};
}

double Window::spacing() const { return units == Units::Planck ? 1.0 : z_of(q).to_double(); }

bool Window::same_as(const Window& o) const {
  return kmin == o.kmin && kmax == o.kmax && mode == o.mode && q == o.q && units == o.units;
}

TruncatedRep TruncatedRep::zero(const Window& w) {
  TruncatedRep r;
  r.w = w;
  r.m = Mat::Zero(w.dim(), w.dim());
  return r;
}

TruncatedRep TruncatedRep::identity(const Window& w) {
  TruncatedRep r = zero(w);
  r.m.setIdentity();
  return r;
}

TruncatedRep TruncatedRep::adjoint() const {
  TruncatedRep r = *this;
  r.m = m.adjoint();
  std::swap(r.lower, r.upper);
  return r;
}

TruncatedRep TruncatedRep::operator-() const {
  TruncatedRep r = *this;
  r.m = -m;
  return r;
}

namespace {

void require_same(const Window& a, const Window& b) {
  if (!a.same_as(b)) throw std::invalid_argument("operators live on different windows");
}

}  // namespace

TruncatedRep& TruncatedRep::operator+=(const TruncatedRep& o) {
  require_same(w, o.w);
  m += o.m;
  lower = std::max(lower, o.lower);
  upper = std::max(upper, o.upper);
  margin = std::max(margin, o.margin);
  return *this;
}

TruncatedRep& TruncatedRep::operator-=(const TruncatedRep& o) {
  require_same(w, o.w);
  m -= o.m;
  lower = std::max(lower, o.lower);
  upper = std::max(upper, o.upper);
  margin = std::max(margin, o.margin);
  return *this;
}

TruncatedRep& TruncatedRep::operator*=(cplx s) {
  m *= s;
  return *this;
}

TruncatedRep operator*(const TruncatedRep& a, const TruncatedRep& b) {
  require_same(a.w, b.w);
  TruncatedRep r;
  r.w = a.w;
  r.m = a.m * b.m;
  long n = a.w.dim() - 1;
  r.lower = std::min(n, a.lower + b.lower);
  r.upper = std::min(n, a.upper + b.upper);
  r.margin = a.margin + b.margin;
  return r;
}

TruncatedRep commutator(const TruncatedRep& a, const TruncatedRep& b) { return a * b - b * a; }

DoubledRep commutator(const DoubledRep& a, const DoubledRep& b) { return a * b - b * a; }

Mat DoubledRep::block_matrix() const {
  long n = first.m.rows();
  Mat r = Mat::Zero(2 * n, 2 * n);
  r.topLeftCorner(n, n) = first.m;
  r.bottomRightCorner(n, n) = second.m;
  return r;
}

namespace {

// Places value at (k + shift, k) honouring the boundary mode; returns false if dropped.
void put_shifted(TruncatedRep& r, long k, long shift, cplx value) {
  const Window& w = r.w;
  long target = k + shift;
  if (!w.contains(target)) {
    if (w.mode == Boundary::Open) return;
    long n = w.dim();
    target = w.kmin + (((target - w.kmin) % n) + n) % n;
  }
  r.m(w.index(target), w.index(k)) += value;
}

double qk(const Window& w, double exponent) { return std::pow(w.qd(), exponent); }

}  // namespace

TruncatedRep rep_generator(RepGen g, const Window& w, const Params& p, std::optional<double> wavenumber) {
  TruncatedRep r = TruncatedRep::zero(w);
  const cplx alpha = p.alpha.to_complex(), alphabar = p.alphabar.to_complex();
  const cplx beta = p.beta.to_complex(), betabar = p.betabar.to_complex();
  double zi = 0.0;
  if (g == RepGen::D1 || g == RepGen::Db1) zi = 1.0 / z_of(w.q).to_double();
  for (long k = w.kmin; k <= w.kmax; ++k) {
    double kd = static_cast<double>(k);
    switch (g) {
      case RepGen::X: put_shifted(r, k, 0, qk(w, kd)); break;
      case RepGen::XInv: put_shifted(r, k, 0, qk(w, -kd)); break;
      case RepGen::Lambda: put_shifted(r, k, 1, 1.0); break;
      case RepGen::LambdaInv: put_shifted(r, k, -1, 1.0); break;
      case RepGen::Y: put_shifted(r, k, 0, kd * w.spacing()); break;
      case RepGen::Dx: put_shifted(r, k, 1, alpha * qk(w, kd + 1)); break;
      case RepGen::Dxbar: put_shifted(r, k, -1, alphabar * qk(w, kd)); break;
      case RepGen::D1:
        put_shifted(r, k, 0, -zi * qk(w, -kd - 1));
        put_shifted(r, k, -1, zi * beta * qk(w, -kd));
        break;
      case RepGen::Db1:
        put_shifted(r, k, 0, zi * qk(w, -kd));
        put_shifted(r, k, 1, zi * betabar * qk(w, -kd - 1));
        break;
      case RepGen::PlaneWave:
        if (!wavenumber) throw std::invalid_argument("e^{iky} needs a wavenumber");
        put_shifted(r, k, 0, std::exp(cplx(0.0, *wavenumber * kd)));
        break;
    }
  }
  switch (g) {
    case RepGen::Lambda: case RepGen::Dx: r.lower = 1; r.margin = 1; break;
    case RepGen::LambdaInv: case RepGen::Dxbar: r.upper = 1; r.margin = 1; break;
    case RepGen::D1: r.upper = 1; r.margin = 1; break;
    case RepGen::Db1: r.lower = 1; r.margin = 1; break;
    default: break;
  }
  return r;
}

TruncatedRep rep_of_word(const Word& word, const Window& w, const Params& p) {
  TruncatedRep r = TruncatedRep::identity(w);
  for (const auto& f : word) {
    RepGen g{};
    switch (f.gen) {
      case Gen::Lambda: g = f.power > 0 ? RepGen::Lambda : RepGen::LambdaInv; break;
      case Gen::X: g = f.power > 0 ? RepGen::X : RepGen::XInv; break;
      case Gen::D1: g = RepGen::D1; break;
      case Gen::Db1: g = RepGen::Db1; break;
    }
    if ((f.gen == Gen::D1 || f.gen == Gen::Db1) && f.power < 0)
      throw std::invalid_argument("derivations have no inverse");
    const TruncatedRep m = rep_generator(g, w, p);
    for (long i = std::labs(f.power); i > 0; --i) r = r * m;
  }
  return r;
}

TruncatedRep rep_of(const AlgebraElement& f, const Window& w, const Params& p) {
  long reach = f.reach();
  if (2 * reach >= w.dim())
    throw std::invalid_argument("window too small for an element of reach " + std::to_string(reach));
  TruncatedRep r = TruncatedRep::zero(w);
  std::optional<TruncatedRep> d1, db1;
  for (const auto& [e, c] : f.terms()) {
    TruncatedRep t = TruncatedRep::zero(w);
    for (long k = w.kmin; k <= w.kmax; ++k) put_shifted(t, k, e.a, qk(w, static_cast<double>(e.b * k)));
    if (e.c > 0 && !d1) d1 = rep_generator(RepGen::D1, w, p);
    if (e.d > 0 && !db1) db1 = rep_generator(RepGen::Db1, w, p);
    for (long i = 0; i < e.c; ++i) t.m = t.m * d1->m;
    for (long i = 0; i < e.d; ++i) t.m = t.m * db1->m;
    r.m += c.to_complex() * t.m;
    r.lower = std::max(r.lower, e.a + e.d);
    r.upper = std::max(r.upper, e.c - e.a);
  }
  r.margin = reach;
  return r;
}

DoubledRep rep_of(const DoubledElement& f, const Window& w, const Params& p) {
  return {rep_of(f.first, w, p), rep_of(f.second, w, p)};
}

TruncatedRep unitary_sqrt(const TruncatedRep& u) {
  const Window& w = u.w;
  if (w.mode != Boundary::Cyclic) throw std::invalid_argument("unitary_sqrt needs a cyclic window");
  const long n = w.dim();
  const double scale = std::max(1.0, u.m.cwiseAbs().maxCoeff());
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (std::abs(u.m(i, j) - u.m((i + 1) % n, (j + 1) % n)) > 1e-12 * scale)
        throw std::invalid_argument("unitary_sqrt needs a circulant operator");
  if ((u.m.adjoint() * u.m - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("unitary_sqrt needs a unitary operator");

  std::vector<cplx> tw(n);
  for (long t = 0; t < n; ++t) tw[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / n);
  std::vector<cplx> mu(n), root(n);
  for (long m = 0; m < n; ++m) {
    cplx lam = 0;
    for (long s = 0; s < n; ++s) lam += u.m(s, 0) * tw[(n - (m * s) % n) % n];
    mu[m] = std::sqrt(lam);
  }
  for (long s = 0; s < n; ++s) {
    cplx acc = 0;
    for (long m = 0; m < n; ++m) acc += mu[m] * tw[(m * s) % n];
    root[s] = acc / static_cast<double>(n);
  }
  TruncatedRep r = TruncatedRep::zero(w);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) r.m(i, j) = root[((i - j) % n + n) % n];
  r.lower = r.upper = n - 1;
  r.margin = u.margin;
  return r;
}

Vec gaussian_probe(const Window& w, double center_k, double fwhm) {
  const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  Vec v(w.dim());
  for (long i = 0; i < w.dim(); ++i) {
    double t = (static_cast<double>(w.k_at(i)) - center_k) / sigma;
    v(i) = std::exp(-0.5 * t * t);
  }
  return v;
}

namespace {

std::vector<Vec> probes_for(const Window& w, const ProbeSpec& ps) {
  std::vector<double> centers = ps.centers;
  if (centers.empty()) centers.push_back(0.5 * static_cast<double>(w.kmin + w.kmax));
  std::vector<Vec> out;
  for (double c : centers) out.push_back(gaussian_probe(w, c, ps.fwhm_fraction * static_cast<double>(w.dim())));
  return out;
}

double block_residual(const Mat& a, const Mat& b, const std::vector<Vec>& vs, bool relative) {
  double worst = 0.0;
  for (const auto& v : vs) {
    double denom = relative ? (b * v).norm() : v.norm();
    if (denom == 0.0) denom = v.norm();
    worst = std::max(worst, ((a - b) * v).norm() / denom);
  }
  return worst;
}

}  // namespace

double interior_residual(const TruncatedRep& a, const TruncatedRep& b, const ProbeSpec& probes) {
  require_same(a.w, b.w);
  TruncatedRep t = a;
  t.margin = std::max(a.margin, b.margin);
  if (!t.has_valid_rows()) throw std::invalid_argument("empty valid interior");
  return block_residual(a.m, b.m, probes_for(a.w, probes), probes.relative);
}

double interior_residual(const DoubledRep& a, const DoubledRep& b, const ProbeSpec& probes) {
  return std::max(interior_residual(a.first, b.first, probes), interior_residual(a.second, b.second, probes));
}

double row_restricted_residual(const TruncatedRep& a, const TruncatedRep& b, bool relative) {
  require_same(a.w, b.w);
  long margin = std::max(a.margin, b.margin);
  long lo = a.w.kmin + margin, hi = a.w.kmax - margin;
  if (lo > hi) throw std::invalid_argument("empty valid interior");
  long i0 = a.w.index(lo), rows = hi - lo + 1;
  double diff = (a.m.middleRows(i0, rows) - b.m.middleRows(i0, rows)).cwiseAbs().maxCoeff();
  if (!relative) return diff;
  double scale = std::max(a.m.middleRows(i0, rows).cwiseAbs().maxCoeff(),
                          b.m.middleRows(i0, rows).cwiseAbs().maxCoeff());
  return scale == 0.0 ? diff : diff / scale;
}

std::string to_csv(const TruncatedRep& r, double threshold) {
  std::ostringstream os;
  os << "row,col,re,im\n";
  char buf[128];
  for (long i = 0; i < r.m.rows(); ++i)
    for (long j = 0; j < r.m.cols(); ++j) {
      cplx v = r.m(i, j);
      if (std::abs(v) <= threshold) continue;
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.12e,%.12e\n", r.w.k_at(i), r.w.k_at(j), v.real(), v.imag());
      os << buf;
    }
  return os.str();
}

std::string to_json(const TruncatedRep& r) {
  nlohmann::json j;
  j["kmin"] = r.w.kmin;
  j["kmax"] = r.w.kmax;
  j["mode"] = r.w.mode == Boundary::Open ? "open" : "cyclic";
  j["units"] = r.w.units == Units::Planck ? "planck" : "laboratory";
  j["q"] = r.w.q.str();
  j["band"] = {r.lower, r.upper};
  j["margin"] = r.margin;
  auto entries = nlohmann::json::array();
  for (long i = 0; i < r.m.rows(); ++i)
    for (long jx = 0; jx < r.m.cols(); ++jx) {
      cplx v = r.m(i, jx);
      if (v == cplx(0.0, 0.0)) continue;
      entries.push_back({r.w.k_at(i), r.w.k_at(jx), v.real(), v.imag()});
    }
  j["entries"] = entries;
  return j.dump();
}

}  // namespace qline
