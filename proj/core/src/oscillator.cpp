#include "qline/oscillator.hpp"

#include <json.hpp>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qline {

BigRat q_for_z(double z) {
  if (!(z > 0 && z <= 0.25)) throw std::invalid_argument("oscillator needs 0 < z <= 0.25");
  BigRat zr(std::lround(z * 1e6), 1000000);
  return (BigRat(1) - zr).inverse();
}

long vacuum_center(double z) { return std::lround(1.0 / (z * z)); }

long default_halfwidth(double z) { return static_cast<long>(std::ceil(8.0 / z)); }

namespace {

DoubledRep scaled(cplx s, const DoubledRep& a) { return s * a; }

DoubledRep identity_like(const Window& w) { return DoubledRep::identity(w); }

const TruncatedRep& block_of(const DoubledRep& d, int block) { return block == 0 ? d.first : d.second; }

}  // namespace

PhaseSpaceOps build_phase_space(double z, long halfwidth, bool include_cr, int sign, Dressing dress) {
  BigRat q = q_for_z(z);
  if (halfwidth < default_halfwidth(z))
    throw std::invalid_argument("halfwidth below 8/z cannot hold the vacuum support");
  long k0 = (sign >= 0 ? 1 : -1) * vacuum_center(z);
  Window w = Window::make(k0 - halfwidth, k0 + halfwidth, Boundary::Cyclic, q, Units::Laboratory);
  Params p;
  p.q = q;
  Algebra alg(p);

  PhaseSpaceOps o;
  o.w = w;
  o.z = z_of(q).to_double();
  o.include_cr = include_cr;
  const double zz = o.z, zi = 1.0 / zz;
  const cplx I(0, 1);
  TruncatedRep Y = rep_generator(RepGen::Y, w, p);
  TruncatedRep L = rep_generator(RepGen::Lambda, w, p), Li = rep_generator(RepGen::LambdaInv, w, p);

  o.y = DoubledRep::embed(Y);
  o.p_y = {I * zi * L, -(I * zi) * Li};
  o.h = {L, Li};
  o.a = scaled(1.0 / std::sqrt(2.0), o.y + I * o.p_y);
  o.a_star = o.a.twisted_adjoint();
  o.h_invsqrt = {unitary_sqrt(L).adjoint(), unitary_sqrt(Li).adjoint()};

  switch (dress) {
    case Dressing::Undressed: o.b = o.a; break;
    case Dressing::Bare: o.b = o.h_invsqrt * o.a; break;
    case Dressing::NoCubic: o.b = o.h_invsqrt * o.a + scaled(0.25 * zz * zz, o.a); break;
    case Dressing::Full: {
      DoubledRep d = o.a - o.a_star;
      o.b = o.h_invsqrt * o.a + scaled(0.25 * zz * zz, o.a) + scaled(zz * zz / 6.0, d * d * d);
      break;
    }
  }
  o.b_star = o.b.twisted_adjoint();
  o.N = o.b_star * o.b;
  o.H = o.a_star * o.a + scaled(0.5, o.h);

  DoubledRep e = rep_of(include_cr ? alg.eR1_operator() : alg.lambdaR(), w, p);
  o.H_laplacian = scaled(0.5, -(e * e) + o.y * o.y);
  return o;
}

IdentityResiduals identity_residuals(const PhaseSpaceOps& o) {
  const cplx I(0, 1);
  const double zz = o.z;
  IdentityResiduals r;
  r.cr = interior_residual(commutator(o.p_y, o.y), scaled(-I, o.h));
  r.a_astar = interior_residual(commutator(o.a, o.a_star), o.h);
  r.a_h = interior_residual(commutator(o.a, o.h), scaled(0.5 * zz * zz, o.a_star - o.a));
  r.H_def = interior_residual(o.H, scaled(0.5, o.p_y * o.p_y + o.y * o.y));
  return r;
}

double dressing_residual(const PhaseSpaceOps& o, int block) {
  DoubledRep c = commutator(o.b, o.b_star);
  return interior_residual(block_of(c, block), block_of(identity_like(o.w), block));
}

double number_commutator_residual(const PhaseSpaceOps& o, int block) {
  DoubledRep lhs = commutator(o.N, o.h);
  DoubledRep rhs = scaled(0.5 * o.z * o.z, o.b_star * o.b_star - o.b * o.b);
  return interior_residual(block_of(lhs, block), block_of(rhs, block));
}

NumberStates vacuum_and_number_states(const PhaseSpaceOps& o, int block, int nmax) {
  if (nmax < 0 || nmax > 8) throw std::invalid_argument("nmax must lie in [0, 8]");
  const Mat& B = block_of(o.b, block).m;
  const Mat& Bs = block_of(o.b_star, block).m;
  Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const long n = sv.size();
  NumberStates s;
  s.block = block;
  s.smax = sv(0);
  s.smin = sv(n - 1);
  s.gap = n > 1 ? sv(n - 2) - sv(n - 1) : 0;
  s.degenerate = s.gap < 1e-10;
  Vec v = svd.matrixV().col(n - 1);
  long imax;
  v.cwiseAbs().maxCoeff(&imax);
  v *= std::conj(v(imax)) / std::abs(v(imax));
  s.vacuum = v / v.norm();

  const long k0 = (o.w.kmin + o.w.kmax) / 2;
  const double reach = 6.0 / o.z;
  for (long i = 0; i < s.vacuum.size(); ++i)
    if (std::abs(double(o.w.k_at(i) - k0)) > reach) s.mass_outside += std::norm(s.vacuum(i));

  s.states.push_back(s.vacuum);
  Vec cur = s.vacuum;
  double fact = 1;
  for (int k = 1; k <= nmax; ++k) {
    cur = Bs * cur;
    fact *= k;
    s.states.push_back(cur / std::sqrt(fact));
  }
  Mat S(s.vacuum.size(), nmax + 1);
  for (int k = 0; k <= nmax; ++k) S.col(k) = s.states[k];
  s.gram = S.adjoint() * S;
  return s;
}

SpectrumCoefficients spectrum_coefficients(const PhaseSpaceOps& o, const NumberStates& s) {
  const long cols = static_cast<long>(s.states.size());
  // Columns are normalized before solving; the (b*)^n states grow like z^-n.
  Mat S(s.vacuum.size(), cols);
  std::vector<double> scale(cols);
  for (long k = 0; k < cols; ++k) {
    scale[k] = std::max(s.states[k].norm(), 1e-300);
    S.col(k) = s.states[k] / scale[k];
  }
  Eigen::JacobiSVD<Mat> svd(S);
  const auto& sv = svd.singularValues();
  SpectrumCoefficients r;
  r.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (r.condition > 1e8) throw std::runtime_error("number-state span is ill-conditioned");
  Vec target = block_of(o.H, s.block).m * s.vacuum;
  Vec c = S.colPivHouseholderQr().solve(target);
  r.out_of_span = (S * c - target).norm() / std::max(target.norm(), 1e-300);
  for (long k = 0; k < cols; ++k) r.c.push_back(c(k) / scale[k]);
  return r;
}

OscillatorPoint oscillator_point(double z, long halfwidth, bool include_cr, Dressing dress) {
  auto t0 = std::chrono::steady_clock::now();
  if (halfwidth <= 0) halfwidth = default_halfwidth(z);
  PhaseSpaceOps plus = build_phase_space(z, halfwidth, include_cr, +1, dress);
  PhaseSpaceOps minus = build_phase_space(z, halfwidth, include_cr, -1, dress);

  OscillatorPoint p;
  p.z = plus.z;
  p.halfwidth = halfwidth;
  IdentityResiduals a = identity_residuals(plus), b = identity_residuals(minus);
  p.identities = {std::max(a.cr, b.cr), std::max(a.a_astar, b.a_astar), std::max(a.a_h, b.a_h),
                  std::max(a.H_def, b.H_def)};
  p.laplacian = std::max(interior_residual(plus.H, plus.H_laplacian), interior_residual(minus.H, minus.H_laplacian));
  p.dressing_block[0] = dressing_residual(plus, 0);
  p.dressing_block[1] = dressing_residual(minus, 1);
  p.dressing = std::max(p.dressing_block[0], p.dressing_block[1]);
  p.number_commutator = std::max(number_commutator_residual(plus, 0), number_commutator_residual(minus, 1));

  NumberStates s1 = vacuum_and_number_states(plus, 0, 5);
  NumberStates s2 = vacuum_and_number_states(minus, 1, 5);
  p.vacuum_smin_rel = s1.smin / s1.smax;
  p.vacuum_mass_outside = s1.mass_outside;
  try {
    SpectrumCoefficients c1 = spectrum_coefficients(plus, s1);
    p.coefficients.assign(c1.c.begin(), c1.c.begin() + 4);
    p.out_of_span = c1.out_of_span;
  } catch (const std::runtime_error&) {
    p.coefficients.assign(4, cplx(NAN, NAN));
    p.out_of_span = NAN;
  }
  try {
    SpectrumCoefficients c2 = spectrum_coefficients(minus, s2);
    p.coefficients_mirror.assign(c2.c.begin(), c2.c.begin() + 4);
  } catch (const std::runtime_error&) {
    p.coefficients_mirror.assign(4, cplx(NAN, NAN));
  }
  p.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return p;
}

unsigned default_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QLINE_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

double fit_exponent(const std::vector<double>& zs, const std::vector<double>& rs) {
  if (zs.size() != rs.size() || zs.size() < 2) throw std::invalid_argument("fit needs matching samples");
  double n = zs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    double x = std::log(zs[i]), y = std::log(std::max(rs[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

OscillatorReport oscillator_sweep(const std::vector<double>& zs, long halfwidth, bool include_cr, Dressing dress,
                                  unsigned threads) {
  auto t0 = std::chrono::steady_clock::now();
  OscillatorReport rep;
  rep.points.resize(zs.size());
  if (threads == 0) threads = default_threads();
  threads = std::min<unsigned>(threads, std::max<std::size_t>(zs.size(), 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&]() {
    for (std::size_t i = next++; i < zs.size(); i = next++) {
      try {
        rep.points[i] = oscillator_point(zs[i], halfwidth, include_cr, dress);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  if (zs.size() >= 2) {
    std::vector<double> z, d, n;
    for (const auto& p : rep.points) {
      z.push_back(p.z);
      d.push_back(p.dressing);
      n.push_back(p.number_commutator);
    }
    rep.dressing_exponent = fit_exponent(z, d);
    rep.number_exponent = fit_exponent(z, n);
  }
  rep.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string OscillatorReport::to_json() const {
  using nlohmann::json;
  json j;
  json zsj = json::array(), res = {{"cr", json::array()},       {"a_astar", json::array()},
                                   {"a_h", json::array()},      {"H_def", json::array()},
                                   {"dressing", json::array()}, {"number_commutator", json::array()},
                                   {"laplacian", json::array()}};
  json coeffs = json::array(), vac = json::array();
  for (const auto& p : points) {
    zsj.push_back(p.z);
    res["cr"].push_back(p.identities.cr);
    res["a_astar"].push_back(p.identities.a_astar);
    res["a_h"].push_back(p.identities.a_h);
    res["H_def"].push_back(p.identities.H_def);
    res["dressing"].push_back(p.dressing);
    res["number_commutator"].push_back(p.number_commutator);
    res["laplacian"].push_back(p.laplacian);
    json c{{"z", p.z}, {"out_of_span", p.out_of_span}};
    for (std::size_t n = 0; n < p.coefficients.size(); ++n)
      c["c" + std::to_string(n)] = {p.coefficients[n].real(), p.coefficients[n].imag()};
    coeffs.push_back(c);
    vac.push_back({{"z", p.z}, {"smin_over_norm", p.vacuum_smin_rel}, {"mass_outside", p.vacuum_mass_outside}});
  }
  j["z"] = zsj;
  j["residuals"] = res;
  j["exponents"] = {{"dressing", dressing_exponent}, {"number_commutator", number_exponent}};
  j["coefficients"] = coeffs;
  j["vacuum"] = vac;
  j["seconds"] = total_seconds;
  return j.dump();
}

}  // namespace qline
