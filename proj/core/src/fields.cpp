#include "qline/fields.hpp"

#include <json.hpp>

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace qline {

DoubledElement eR1_operator_element(const Algebra& alg, bool include_cr) {
  return include_cr ? alg.eR1_operator() : alg.lambdaR();
}

AlgebraElement nonlocal_laplacian_element(const Algebra& alg, LaplacianKind kind, bool include_cr) {
  if (kind == LaplacianKind::RealFlat) throw std::invalid_argument("realFlat is a doubled operator");
  AlgebraElement e = include_cr ? alg.e1_operator() : alg.lambda1();
  const CplxRat q(alg.q());
  AlgebraElement second = AlgebraElement::monomial(kind == LaplacianKind::NonLocalA ? q : CplxRat(1), -1, -2);
  return -alg.mul({AlgebraElement::monomial(q, -2, -2), e, e}) + alg.mul(second, e);
}

DoubledRep real_laplacian(const Algebra& alg, const Window& w, bool include_cr) {
  DoubledRep e = rep_of(eR1_operator_element(alg, include_cr), w, alg.params());
  return -(e * e);
}

std::variant<DoubledRep, TruncatedRep> laplacian(const Algebra& alg, const LaplacianSpec& spec, const Window& w) {
  if (spec.kind == LaplacianKind::RealFlat) return real_laplacian(alg, w, spec.include_cr);
  return rep_of(nonlocal_laplacian_element(alg, spec.kind, spec.include_cr), w, alg.params());
}

// ---------------------------------------------------------------------------

PlaneWaveReport plane_wave_identity(const Algebra& alg, double k, const Window& w) {
  const Params& p = alg.params();
  const double zi = alg.zinv().to_double();
  const cplx I(0, 1);
  TruncatedRep P = rep_generator(RepGen::PlaneWave, w, p, k);
  TruncatedRep L = rep_generator(RepGen::Lambda, w, p), Li = rep_generator(RepGen::LambdaInv, w, p);
  TruncatedRep lam = rep_of(alg.lambda1(), w, p), lamb = rep_of(alg.lambda1bar(), w, p);

  const cplx a = zi * (std::exp(I * k) - 1.0), abar = zi * (1.0 - std::exp(-I * k));
  TruncatedRep e1 = commutator(lam, P), e1b = commutator(lamb, P);
  TruncatedRep ikL1 = a * L * P, ikL2 = abar * Li * P;

  PlaneWaveReport r;
  r.k = k;
  r.e1_residual = row_restricted_residual(e1, ikL1);
  r.e1bar_residual = row_restricted_residual(e1b, ikL2);
  r.componentwise_residual = std::max(r.e1_residual, r.e1bar_residual);
  // literal normalization carries an extra 1/2
  TruncatedRep half1 = 0.5 * ikL1, half2 = 0.5 * ikL2;
  double scale = std::max(row_restricted_residual(e1, TruncatedRep::zero(w)),
                          row_restricted_residual(e1b, TruncatedRep::zero(w)));
  r.annihilation_residual = scale;
  r.literal_residual = scale == 0 ? 0
                                  : std::max(row_restricted_residual(e1, half1), row_restricted_residual(e1b, half2)) /
                                        scale;
  TruncatedRep lap1 = -commutator(lam, e1), lap2 = -commutator(lamb, e1b);
  TruncatedRep want1 = -(a * a) * L * L * P, want2 = -(abar * abar) * Li * Li * P;
  r.laplacian_residual = std::max(row_restricted_residual(lap1, want1), row_restricted_residual(lap2, want2));
  return r;
}

DispersionCurve dispersion_scan(double m, double kmax, int samples) {
  if (m < 0) throw std::invalid_argument("mass must be nonnegative");
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  if (kmax < 0 || kmax > M_PI + 1e-12) throw std::invalid_argument("kmax must lie in [0, pi]");
  DispersionCurve c;
  c.m = m;
  for (int i = 0; i < samples; ++i) {
    double k = kmax * i / (samples - 1);
    double s = std::sin(k);
    c.samples.push_back({k, std::sqrt(m * m + s * s), std::abs(std::sin(0.5 * k))});
  }
  return c;
}

DispersionSample dispersion_peak(double m, double kmax) {
  if (m < 0) throw std::invalid_argument("mass must be nonnegative");
  if (kmax < 0 || kmax > M_PI + 1e-12) throw std::invalid_argument("kmax must lie in [0, pi]");
  const double k = std::min(kmax, M_PI / 2), s = std::sin(k);
  return {k, std::sqrt(m * m + s * s), std::abs(std::sin(0.5 * k))};
}

std::string DispersionCurve::to_csv() const {
  std::string out = "k,E,E_phonon\n";
  char buf[128];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e\n", s.k, s.E, s.E_phonon);
    out += buf;
  }
  return out;
}

std::string DispersionCurve::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  auto& arr = j["samples"] = nlohmann::json::array();
  for (const auto& s : samples) arr.push_back({{"k", s.k}, {"E", s.E}, {"E_phonon", s.E_phonon}});
  return j.dump();
}

// ---------------------------------------------------------------------------

namespace {

CplxRat i_over_2m(const BigRat& m) {
  if (m.is_zero()) throw std::invalid_argument("mass must be nonzero");
  return CplxRat(BigRat(0), (BigRat(2) * m).inverse());
}

}  // namespace

CheckReport verify_continuity(const Algebra& alg, const AlgebraElement& psi, const BigRat& m) {
  if (!psi.derivative_free()) throw std::domain_error("psi must be derivative-free");
  const CplxRat c = i_over_2m(m);
  DoubledElement Psi = DoubledElement::embed(psi), PsiS = alg.star(Psi);
  DoubledElement dPsi = alg.eR1(Psi);
  DoubledElement dt = c * alg.eR1(dPsi);
  DoubledElement lhs = alg.mul(alg.star(dt), Psi) + alg.mul(PsiS, dt);
  DoubledElement J = c * (alg.mul(PsiS, dPsi) - alg.mul(alg.eR1(PsiS), Psi));
  DoubledElement rhs = alg.eR1(J);
  CheckReport r;
  r.name = "continuity (real) for " + psi.str();
  DoubledElement d = lhs - rhs;
  r.pass = d.is_zero();
  r.detail = "d_t rho = " + lhs.str();
  r.residual = d.is_zero() ? "0" : d.str();
  return r;
}

CheckReport nonlocal_continuity(const Algebra& alg, const AlgebraElement& psi, const BigRat& m) {
  if (!psi.derivative_free()) throw std::domain_error("psi must be derivative-free");
  const CplxRat c = i_over_2m(m);
  const CplxRat q(alg.q());
  const AlgebraElement L = AlgebraElement::lambda();
  AlgebraElement psiS = alg.star(psi);
  AlgebraElement e = alg.e1(psi);
  AlgebraElement lap = -alg.mul(AlgebraElement::monomial(q, -2, -2), alg.e1(e)) +
                       alg.mul(AlgebraElement::monomial(1, -1, -2), e);
  AlgebraElement dt = -c * lap;  // i d_t psi = (1/2m) Delta psi
  AlgebraElement lhs = alg.mul(alg.star(dt), psi) + alg.mul(psiS, dt);
  AlgebraElement inner = alg.mul({psiS, L, alg.d1_action(psi)}) - alg.mul({L, alg.d1_action(psiS), psi});
  AlgebraElement rhs = c * q * alg.mul(AlgebraElement::lambda(-1), alg.d1_action(inner));
  CheckReport r;
  r.name = "continuity (non-local) for " + psi.str();
  AlgebraElement d = lhs - rhs;
  r.pass = d.is_zero();
  r.detail = "d_t rho = " + lhs.str() + ", divergence = " + rhs.str();
  r.residual = d.str();
  return r;
}

// ---------------------------------------------------------------------------

cplx twisted_form(const DoubledVec& u, const DoubledVec& v) {
  return u.first.dot(v.second) + u.second.dot(v.first);
}

EvolutionResult schrodinger_step(const Algebra& alg, const Window& w, const DoubledVec& psi0, double dt, double m,
                                 int steps) {
  if (dt <= 0) throw std::invalid_argument("dt must be positive");
  if (m == 0) throw std::invalid_argument("mass must be nonzero");
  const long n = w.dim();
  if (psi0.first.size() != n || psi0.second.size() != n) throw std::invalid_argument("state does not fit the window");
  DoubledRep lap = real_laplacian(alg, w, true);
  Mat H = lap.block_matrix() / (2.0 * m);
  const cplx h(0, 0.5 * dt);
  Mat Id = Mat::Identity(2 * n, 2 * n);
  Eigen::PartialPivLU<Mat> lu(Id + h * H);
  Mat B = Id - h * H;

  Vec v(2 * n);
  v << psi0.first, psi0.second;
  EvolutionResult r;
  r.initial_form = twisted_form(psi0, psi0).real();
  const double n0 = v.norm();
  for (int s = 0; s < steps; ++s) v = lu.solve(B * v);
  r.state = {v.head(n), v.tail(n)};
  r.final_form = twisted_form(r.state, r.state).real();
  double ref = std::abs(r.initial_form);
  r.drift = ref == 0 ? std::abs(r.final_form) : std::abs(r.final_form - r.initial_form) / ref;
  r.norm_growth = n0 == 0 ? 1.0 : v.norm() / n0;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Mat kron_identity(const Mat& m, int r) {
  if (r == 1) return m;
  Mat out = Mat::Zero(m.rows() * r, m.cols() * r);
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (m(i, j) != cplx(0))
        for (int a = 0; a < r; ++a) out(i * r + a, j * r + a) = m(i, j);
  return out;
}

MatPair eR1(const MatPair& lam, const MatPair& A) { return lam * A - A * lam; }

// Trace over interior sites, both summands.
cplx interior_trace(const MatPair& M, long sites, int r, long margin) {
  cplx s = 0;
  for (long i = margin * r; i < (sites - margin) * r; ++i) s += M.first(i, i) + M.second(i, i);
  return s;
}

std::vector<MatPair> time_derivative(const std::vector<MatPair>& A, double dt) {
  const std::size_t n = A.size();
  std::vector<MatPair> d(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (t == 0) d[t] = (A[1] - A[0]) * cplx(1.0 / dt);
    else if (t == n - 1) d[t] = (A[n - 1] - A[n - 2]) * cplx(1.0 / dt);
    else d[t] = (A[t + 1] - A[t - 1]) * cplx(0.5 / dt);
  }
  return d;
}

double trapezoid_weight(std::size_t t, std::size_t n, double dt) { return (t == 0 || t + 1 == n) ? 0.5 * dt : dt; }

constexpr long kInteriorMargin = 2;

}  // namespace

MatPair embed_rank(const DoubledRep& d, int rank) {
  return {kron_identity(d.first.m, rank), kron_identity(d.second.m, rank)};
}

YangMillsResult yang_mills(const Algebra& alg, const GaugeConfig& c) {
  const std::size_t n = c.At.size();
  if (n < 2 || c.AR1.size() != n) throw std::invalid_argument("need at least two matching time samples");
  if (!c.psi.empty() && c.psi.size() != n) throw std::invalid_argument("matter samples do not match the gauge samples");
  const long dim = c.w.dim() * c.rank;
  auto check = [&](const MatPair& M) {
    if (M.first.rows() != dim || M.second.rows() != dim || M.first.cols() != dim || M.second.cols() != dim)
      throw std::invalid_argument("sample size does not match window and rank");
  };
  for (std::size_t t = 0; t < n; ++t) {
    check(c.At[t]);
    check(c.AR1[t]);
    if (!c.psi.empty()) check(c.psi[t]);
  }
  MatPair lam = embed_rank(rep_of(alg.lambdaR(), c.w, alg.params()), c.rank);

  YangMillsResult r;
  auto dAR = time_derivative(c.AR1, c.dt);
  for (std::size_t t = 0; t < n; ++t) {
    MatPair F = dAR[t] - eR1(lam, c.At[t]) + (c.At[t] * c.AR1[t] - c.AR1[t] * c.At[t]);
    r.S_YM += 0.25 * trapezoid_weight(t, n, c.dt) * interior_trace(F * F, c.w.dim(), c.rank, kInteriorMargin);
    r.F.push_back(std::move(F));
  }
  if (!c.psi.empty()) {
    auto dpsi = time_derivative(c.psi, c.dt);
    for (std::size_t t = 0; t < n; ++t) {
      MatPair Dt = dpsi[t] + c.At[t] * c.psi[t];
      MatPair DR = eR1(lam, c.psi[t]) + c.AR1[t] * c.psi[t];
      cplx tr = interior_trace(Dt.twisted_adjoint() * Dt + DR.twisted_adjoint() * DR, c.w.dim(), c.rank,
                               kInteriorMargin);
      r.S_M += trapezoid_weight(t, n, c.dt) * tr.real();
    }
  }
  return r;
}

GaugeConfig gauge_transform(const Algebra& alg, const GaugeConfig& c, const Mat& g) {
  MatPair G{g, g}, Gi{g.adjoint(), g.adjoint()};
  MatPair lam = embed_rank(rep_of(alg.lambdaR(), c.w, alg.params()), c.rank);
  MatPair shift = Gi * eR1(lam, G);
  GaugeConfig out = c;
  for (std::size_t t = 0; t < c.At.size(); ++t) {
    out.At[t] = Gi * c.At[t] * G;
    out.AR1[t] = Gi * c.AR1[t] * G + shift;
  }
  for (std::size_t t = 0; t < c.psi.size(); ++t) out.psi[t] = Gi * c.psi[t];
  return out;
}

Mat random_site_unitary(const Window& w, int rank, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  Mat g = Mat::Zero(w.dim() * rank, w.dim() * rank);
  for (long s = 0; s < w.dim(); ++s) {
    Mat a(rank, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) a(i, j) = cplx(nd(rng), nd(rng));
    Mat u = Eigen::HouseholderQR<Mat>(a).householderQ();
    g.block(s * rank, s * rank, rank, rank) = u;
  }
  return g;
}

GaugeInvarianceReport gauge_invariance(const Algebra& alg, const GaugeConfig& c, int trials, unsigned seed) {
  YangMillsResult base = yang_mills(alg, c);
  GaugeInvarianceReport rep;
  rep.trials = trials;
  for (int i = 0; i < trials; ++i) {
    Mat g = random_site_unitary(c.w, c.rank, seed + 7919u * i);
    YangMillsResult t = yang_mills(alg, gauge_transform(alg, c, g));
    double ref = std::max(std::abs(base.S_YM), 1e-300);
    rep.max_action_residual = std::max(rep.max_action_residual, std::abs(t.S_YM - base.S_YM) / ref);
    for (std::size_t s = 0; s < base.F.size(); ++s) {
      const MatPair& F = base.F[s];
      MatPair want{g.adjoint() * F.first * g, g.adjoint() * F.second * g};
      MatPair d = t.F[s] - want;
      double nrm = std::max(F.first.norm() + F.second.norm(), 1e-300);
      rep.max_covariance_residual = std::max(rep.max_covariance_residual, (d.first.norm() + d.second.norm()) / nrm);
    }
  }
  return rep;
}

std::string YangMillsResult::to_json(double gauge_residual) const {
  nlohmann::json j{{"S_M", S_M}, {"S_YM", S_YM.real()}, {"S_YM_imag", S_YM.imag()}, {"gauge_residual", gauge_residual}};
  return j.dump();
}

VacuumReport vacuum_vectors(const Window& w, const Params& p) {
  if (w.mode != Boundary::Cyclic) throw std::invalid_argument("vacuum vectors need a cyclic window");
  Vec ones = Vec::Ones(w.dim());
  Mat L = rep_generator(RepGen::Lambda, w, p).m, Li = rep_generator(RepGen::LambdaInv, w, p).m;
  Mat Id = Mat::Identity(w.dim(), w.dim());
  VacuumReport r;
  r.residual = ((L - Id) * ones).cwiseAbs().maxCoeff();
  r.residual_bar = ((Li - Id) * ones).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Mat> svd(L - Id);
  const auto& sv = svd.singularValues();
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) < 1e-10 * sv(0)) ++r.kernel_dim;
  return r;
}

}  // namespace qline
