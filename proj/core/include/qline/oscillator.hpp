#pragma once

#include "qline/repspace.hpp"

#include <string>
#include <vector>

namespace qline {

// How b is dressed: the full series, without the cubic term, h^{-1/2} a only, or b = a.
enum class Dressing { Full, NoCubic, Bare, Undressed };

struct PhaseSpaceOps {
  Window w;  // cyclic, laboratory units
  double z = 0;
  bool include_cr = false;
  DoubledRep y, p_y, h, a, a_star, h_invsqrt, b, b_star, N, H;
  DoubledRep H_laplacian;  // ½(Delta_R + y^2), Delta_R = -(e_R1 operator)^2 with or without c_R
};

// Exact rational q with z = 1 - 1/q, z rounded to six decimals.
BigRat q_for_z(double z);
long vacuum_center(double z);
long default_halfwidth(double z);

// Cyclic window of odd dimension centred at sign * round(z^-2). Block 1 of the doubled algebra
// has its vacuum near +z^-2, block 2 near -z^-2, so each block is read on its own window.
PhaseSpaceOps build_phase_space(double z, long halfwidth, bool include_cr, int sign = +1,
                                Dressing dress = Dressing::Full);

struct IdentityResiduals {
  double cr = 0;         // [p_y, y] + i h
  double a_astar = 0;    // [a, a*] - h
  double a_h = 0;        // [a, h] - ½z²(a* - a)
  double H_def = 0;      // a*a + ½h - ½(p_y² + y²)
};
IdentityResiduals identity_residuals(const PhaseSpaceOps& ops);

// Probe residual of [b, b*] - 1 and of [N, h] - ½z²((b*)² - b²) for one block (0 or 1).
double dressing_residual(const PhaseSpaceOps& ops, int block);
double number_commutator_residual(const PhaseSpaceOps& ops, int block);

struct NumberStates {
  int block = 0;
  Vec vacuum;
  double smin = 0, smax = 0, gap = 0;  // singular values of b on the block
  bool degenerate = false;
  double mass_outside = 0;  // probability outside |k - k0| <= 6/z
  std::vector<Vec> states;  // |n> = (b*)^n |0> / sqrt(n!)
  Mat gram;
};
NumberStates vacuum_and_number_states(const PhaseSpaceOps& ops, int block, int nmax);

struct SpectrumCoefficients {
  std::vector<cplx> c;  // H|0> = sum c_n |n>
  double out_of_span = 0;
  double condition = 0;
};
SpectrumCoefficients spectrum_coefficients(const PhaseSpaceOps& ops, const NumberStates& s);

struct OscillatorPoint {
  double z = 0;
  long halfwidth = 0;
  IdentityResiduals identities;  // worst over both windows
  double dressing = 0, number_commutator = 0;
  // H against ½(Delta_R + y^2); zero without c_R, which is the only thing include_cr changes
  double laplacian = 0;
  double dressing_block[2] = {0, 0};
  double vacuum_smin_rel = 0;  // smallest singular value of b over |b|, block 1
  double vacuum_mass_outside = 0;
  std::vector<cplx> coefficients;  // c0..c3, block 1
  std::vector<cplx> coefficients_mirror;  // block 2
  double out_of_span = 0;
  double seconds = 0;
};

struct OscillatorReport {
  std::vector<OscillatorPoint> points;
  double dressing_exponent = 0, number_exponent = 0;
  double total_seconds = 0;
  std::string to_json() const;
};

OscillatorPoint oscillator_point(double z, long halfwidth, bool include_cr = false, Dressing dress = Dressing::Full);
// Independent z-points run concurrently on at most `threads` workers; results keep the z order.
OscillatorReport oscillator_sweep(const std::vector<double>& zs, long halfwidth = 0, bool include_cr = false,
                                  Dressing dress = Dressing::Full, unsigned threads = 0);

// Hardware concurrency, capped by the QLINE_THREADS environment variable.
unsigned default_threads();
// Slope of log(r) against log(z) by least squares.
double fit_exponent(const std::vector<double>& zs, const std::vector<double>& rs);

}  // namespace qline
