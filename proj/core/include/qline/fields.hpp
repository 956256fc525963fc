#pragma once

#include "qline/repspace.hpp"
#include "qline/report.hpp"

#include <string>
#include <variant>
#include <vector>

namespace qline {

// ---- Laplacians ----

enum class LaplacianKind { RealFlat, NonLocalA, NonLocalB };

struct LaplacianSpec {
  LaplacianKind kind = LaplacianKind::RealFlat;
  bool include_cr = true;
};

// Operator form of e_R1: z^-1(beta - L, betabar + L^-1) with c_R, lambda_R without.
DoubledElement eR1_operator_element(const Algebra& alg, bool include_cr);
// -qL^-2x^-2 e1^2 + qL^-1x^-2 e1 (A) or -qL^-2x^-2 e1^2 + L^-1x^-2 e1 (B), e1 in operator form.
AlgebraElement nonlocal_laplacian_element(const Algebra& alg, LaplacianKind kind, bool include_cr);

std::variant<DoubledRep, TruncatedRep> laplacian(const Algebra& alg, const LaplacianSpec& spec, const Window& w);
DoubledRep real_laplacian(const Algebra& alg, const Window& w, bool include_cr = true);

// ---- plane waves and dispersion ----

struct PlaneWaveReport {
  double k = 0;
  double e1_residual = 0;              // [lambda_1, P] against z^-1(e^{ik} - 1) L P
  double e1bar_residual = 0;           // [lambdabar_1, P] against z^-1(1 - e^{-ik}) L^-1 P
  double componentwise_residual = 0;   // e_R1 P against ikL P with L = (1/ikz)(...)
  double literal_residual = 0;         // same with the 1/(2ikz) normalization, relative
  double laplacian_residual = 0;       // -e_R1^2 P against k^2 L^2 P, componentwise L
  double annihilation_residual = 0;    // max |e_R1 P| over valid rows
};

PlaneWaveReport plane_wave_identity(const Algebra& alg, double k, const Window& w);

struct DispersionSample {
  double k, E, E_phonon;
};

struct DispersionCurve {
  double m = 0;
  std::vector<DispersionSample> samples;
  std::string to_csv() const;
  std::string to_json() const;
};

// E(k) = sqrt(m^2 + sin^2 k) and the phonon curve |sin(k/2)| on [0, kmax].
DispersionCurve dispersion_scan(double m, double kmax, int samples);
// Maximum of E on [0, kmax]: sin^2 rises up to pi/2, so the peak sits at min(kmax, pi/2).
DispersionSample dispersion_peak(double m, double kmax);

// ---- continuity ----

// Real flavor: d_t(psi* psi) = e_R1(J) with d_t psi = (i/2m) e_R1^2 psi, exact.
CheckReport verify_continuity(const Algebra& alg, const AlgebraElement& psi, const BigRat& m);
// Non-local metric with the B Laplacian against the closed-form current divergence
// (i/2m) q L^-1 d1(psi* L d1 psi - L d1(psi*) psi), d1 acting on elements.
CheckReport nonlocal_continuity(const Algebra& alg, const AlgebraElement& psi, const BigRat& m);

// ---- Schroedinger evolution ----

struct DoubledVec {
  Vec first, second;
};

// <u, J v> with J the swap of the two summands: <u1, v2> + <u2, v1>.
cplx twisted_form(const DoubledVec& u, const DoubledVec& v);

struct EvolutionResult {
  DoubledVec state;
  double initial_form = 0, final_form = 0;
  double drift = 0;  // |final - initial| / max(|initial|, tiny), 0 for the zero state
  // |psi_T| / |psi_0|. The real Laplacian is not normal, so high-frequency modes grow and
  // the form, though conserved exactly, is lost to rounding once this gets large.
  double norm_growth = 1;
};

EvolutionResult schrodinger_step(const Algebra& alg, const Window& w, const DoubledVec& psi0, double dt, double m,
                                 int steps);

// ---- gauge fields ----

// Pair of square matrices over window ⊗ C^r.
struct MatPair {
  Mat first, second;
  MatPair operator+(const MatPair& o) const { return {first + o.first, second + o.second}; }
  MatPair operator-(const MatPair& o) const { return {first - o.first, second - o.second}; }
  MatPair operator*(const MatPair& o) const { return {first * o.first, second * o.second}; }
  MatPair operator*(cplx s) const { return {s * first, s * second}; }
  // (A1, A2)* = (A2^dagger, A1^dagger)
  MatPair twisted_adjoint() const { return {second.adjoint(), first.adjoint()}; }
};

struct GaugeConfig {
  Window w;
  int rank = 1;
  double dt = 0.1;
  std::vector<MatPair> At, AR1;
  std::vector<MatPair> psi;  // optional matter samples (multiplication operators)
};

struct YangMillsResult {
  std::vector<MatPair> F;
  double S_M = 0;
  cplx S_YM = 0;
  std::string to_json(double gauge_residual) const;
};

MatPair embed_rank(const DoubledRep& d, int rank);
// F_t1 = d_t A_R1 - e_R1 A_t + [A_t, A_R1]
YangMillsResult yang_mills(const Algebra& alg, const GaugeConfig& c);
// Static gauge transform g(x): block-diagonal unitary, one r×r block per lattice site.
GaugeConfig gauge_transform(const Algebra& alg, const GaugeConfig& c, const Mat& g);
Mat random_site_unitary(const Window& w, int rank, unsigned seed);

struct GaugeInvarianceReport {
  double max_action_residual = 0;      // relative change of S_YM
  double max_covariance_residual = 0;  // |F' - g^-1 F g| / |F|
  int trials = 0;
};
GaugeInvarianceReport gauge_invariance(const Algebra& alg, const GaugeConfig& c, int trials, unsigned seed);

// Kernel of (L - 1) and (L^-1 - 1) on a cyclic window: the constant vector, exactly.
struct VacuumReport {
  double residual = 0, residual_bar = 0;  // exact zero expected
  long kernel_dim = 0;                    // numerical nullity of L - 1
};
VacuumReport vacuum_vectors(const Window& w, const Params& p);

}  // namespace qline
