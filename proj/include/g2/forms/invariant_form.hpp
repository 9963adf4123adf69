#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "g2/profiles/complex_profile.hpp"
#include "json.hpp"

namespace g2 {

enum class StructureKind { CY, NK };

std::string_view structure_name(StructureKind s);
StructureKind structure_from_name(std::string_view name);

/// Ordered SU(3)-invariant basis on N^6 x L^1. Every `dr_X` element is the
/// N-form X with dr wedged on the left.
enum class Basis {
  one,
  dr,
  omega,
  dr_omega,
  Omega,
  Omegabar,
  dr_Omega,
  dr_Omegabar,
  omega2_half,
  dr_omega2_half,
  vol6,
  dr_vol6,
};

inline constexpr int kBasisSize = 12;
inline constexpr std::array<Basis, kBasisSize> kAllBasis = {
    Basis::one,    Basis::dr,          Basis::omega,       Basis::dr_omega,
    Basis::Omega,  Basis::Omegabar,    Basis::dr_Omega,    Basis::dr_Omegabar,
    Basis::omega2_half, Basis::dr_omega2_half, Basis::vol6, Basis::dr_vol6,
};

int degree_of(Basis b);
std::string_view tag_of(Basis b);
Basis basis_from_tag(std::string_view tag);
bool has_dr(Basis b);
/// The N-part: dr_X -> X, X -> X.
Basis n_part(Basis b);
/// dr wedged onto a pure N-form.
Basis with_dr(Basis n);
/// Partner under complex conjugation (Omega <-> Omegabar); fixed otherwise.
Basis conjugate_basis(Basis b);

/// Homogeneous invariant form with complex profile coefficients.
///
/// Coefficients of basis elements of the wrong degree are always zero. The
/// `real` flag promises coeff(Omegabar-type) = conj(coeff(Omega-type)) and
/// real coefficients elsewhere; operations propagate it conservatively.
class InvariantForm {
 public:
  explicit InvariantForm(int degree = 0, bool real = true);

  static InvariantForm basis(Basis b, CProfile coeff = CProfile(1.0));
  static InvariantForm zero(int degree) { return InvariantForm(degree); }

  int degree() const { return degree_; }
  bool real() const { return real_; }
  /// Set when this form is the truncated result of a wedge past degree 7.
  bool overflow() const { return overflow_; }

  const CProfile& operator[](Basis b) const { return coeffs_[static_cast<int>(b)]; }
  void set(Basis b, CProfile c);
  void add(Basis b, const CProfile& c);
  void mark_real(bool real) { real_ = real; }
  void mark_overflow() { overflow_ = true; }

  bool is_structurally_zero() const;

  /// Coefficients evaluated at r, indexed like kAllBasis.
  std::array<std::complex<double>, kBasisSize> values_at(double r) const;
  /// max over basis elements of |coefficient(r)|.
  double sup_at(double r) const;
  /// Largest violation of the reality relations at r.
  double reality_defect(double r) const;

  InvariantForm& operator+=(const InvariantForm& o);
  InvariantForm& operator-=(const InvariantForm& o);

 private:
  int degree_;
  bool real_;
  bool overflow_ = false;
  std::array<CProfile, kBasisSize> coeffs_{};
};

InvariantForm operator+(InvariantForm a, const InvariantForm& b);
InvariantForm operator-(InvariantForm a, const InvariantForm& b);
InvariantForm operator-(const InvariantForm& a);
/// Scaling by a real profile keeps the reality flag; complex scalars drop it.
InvariantForm operator*(const Profile& s, const InvariantForm& a);
InvariantForm operator*(const CProfile& s, const InvariantForm& a);

/// Complex conjugate form: conjugated coefficients on conjugate partners.
InvariantForm conj(const InvariantForm& a);

/// {degree, entries: [{basis, re, im}]} with profiles in the expression-tree
/// schema. Zero entries are omitted.
nlohmann::json form_to_json(const InvariantForm& a);
InvariantForm form_from_json(const nlohmann::json& j);

}  // namespace g2
