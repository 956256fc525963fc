#pragma once

#include "qline/algebra.hpp"
#include "qline/report.hpp"
#include "qline/repspace.hpp"

#include <string>
#include <variant>
#include <vector>

namespace qline {

enum class Flavor { Plain, Bar, Real };
enum class Basis { None, Theta, ThetaBar, ThetaR, Dx, DxBar, DRx };

const char* basis_name(Basis b);
Flavor flavor_of(Basis b);
bool is_frame(Basis b);
Basis frame_basis(Flavor f);
Basis dx_basis(Flavor f);

// Forms of degree 0, 1 or 2. One-forms are coeff * basis with the coefficient
// on the left; degree 2 is always the zero object.
class FormElement {
public:
  using Coeff = std::variant<AlgebraElement, DoubledElement>;

  FormElement() = default;
  static FormElement function(const AlgebraElement& f);
  static FormElement function(const DoubledElement& f);
  static FormElement one_form(const AlgebraElement& c, Basis b);
  static FormElement one_form(const DoubledElement& c, Basis b);
  static FormElement top_zero();

  int degree() const { return degree_; }
  Basis basis() const { return basis_; }
  bool doubled() const { return std::holds_alternative<DoubledElement>(coeff_); }
  const AlgebraElement& plain() const;
  const DoubledElement& pair() const;
  const Coeff& coeff() const { return coeff_; }
  bool is_zero() const;

  FormElement& operator+=(const FormElement& o);
  FormElement operator-() const;
  friend FormElement operator+(FormElement a, const FormElement& b) { return a += b; }
  friend FormElement operator-(FormElement a, const FormElement& b) { return a += -b; }
  friend bool operator==(const FormElement& a, const FormElement& b);

  // "coeff ⊗ basis"
  std::string str() const;

private:
  int degree_ = 0;
  Basis basis_ = Basis::None;
  Coeff coeff_ = AlgebraElement();
};

class Calculus {
public:
  explicit Calculus(const Algebra& alg) : alg_(alg) {}
  const Algebra& algebra() const { return alg_; }

  FormElement differential(const AlgebraElement& f, Flavor which) const;
  FormElement differential(const DoubledElement& f) const;
  FormElement differential(const FormElement& f, Flavor which) const;

  FormElement to_frame_basis(const FormElement& w) const;
  FormElement to_dx_basis(const FormElement& w) const;

  // Module actions; frames are central, dx-type bases twist by sigma.
  FormElement left_mul(const AlgebraElement& f, const FormElement& w) const;
  FormElement left_mul(const DoubledElement& f, const FormElement& w) const;
  FormElement right_mul(const FormElement& w, const AlgebraElement& f) const;
  FormElement right_mul(const FormElement& w, const DoubledElement& f) const;
  FormElement wedge(const FormElement& a, const FormElement& b) const;

  // basis * f = sigma(f) * basis for dx-type bases.
  AlgebraElement sigma(const AlgebraElement& f, Basis b) const;
  AlgebraElement sigma_inv(const AlgebraElement& f, Basis b) const;

  FormElement star(const FormElement& w) const;

  // Frame elements theta^1, thetabar^1, theta_R and the Dirac forms -lambda theta.
  FormElement frame(Flavor f) const;
  FormElement dirac_form(Flavor f) const;

  CheckReport check_centrality(const FormElement& w, const std::vector<AlgebraElement>& sample) const;
  CheckReport check_reality(const AlgebraElement& f) const;
  CheckReport dirac_identity_check(const AlgebraElement& f, Flavor which) const;
  CheckReport leibniz_check(const AlgebraElement& f, const AlgebraElement& g, Flavor which) const;
  // x dx = q dx x, dx L = q L dx and the bar / real analogues, plus (d_R x)^2 = 0.
  std::vector<CheckReport> module_relations() const;

private:
  AlgebraElement scale_monomials(const AlgebraElement& f, Basis b, bool inverse) const;
  const Algebra& alg_;
};

// Matrix-level exactness: theta = d(z L^-1 y), thetabar = db(z L y), theta_R = d_R(K y).
std::vector<CheckReport> exactness_witnesses(const Algebra& alg, const Window& w, double tol = 1e-12);

}  // namespace qline
