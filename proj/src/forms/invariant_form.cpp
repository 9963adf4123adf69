#include "g2/forms/invariant_form.hpp"

#include <algorithm>
#include <cmath>

#include "g2/error.hpp"
#include "g2/profiles/serialize.hpp"

namespace g2 {

namespace {

struct BasisInfo {
  std::string_view tag;
  int degree;
};

constexpr BasisInfo kInfo[kBasisSize] = {
    {"one", 0},      {"dr", 1},          {"omega", 2},       {"dr_omega", 3},
    {"Omega", 3},    {"Omegabar", 3},    {"dr_Omega", 4},    {"dr_Omegabar", 4},
    {"omega2_half", 4}, {"dr_omega2_half", 5}, {"vol6", 6}, {"dr_vol6", 7},
};

int idx(Basis b) { return static_cast<int>(b); }

}  // namespace

std::string_view structure_name(StructureKind s) { return s == StructureKind::CY ? "CY" : "NK"; }

StructureKind structure_from_name(std::string_view name) {
  if (name == "CY" || name == "cy") return StructureKind::CY;
  if (name == "NK" || name == "nk") return StructureKind::NK;
  throw ParseError("unknown structure kind '" + std::string(name) + "'");
}

int degree_of(Basis b) { return kInfo[idx(b)].degree; }
std::string_view tag_of(Basis b) { return kInfo[idx(b)].tag; }

Basis basis_from_tag(std::string_view tag) {
  for (Basis b : kAllBasis)
    if (tag_of(b) == tag) return b;
  throw ParseError("unknown basis tag '" + std::string(tag) + "'");
}

bool has_dr(Basis b) {
  switch (b) {
    case Basis::dr:
    case Basis::dr_omega:
    case Basis::dr_Omega:
    case Basis::dr_Omegabar:
    case Basis::dr_omega2_half:
    case Basis::dr_vol6: return true;
    default: return false;
  }
}

Basis n_part(Basis b) {
  switch (b) {
    case Basis::dr: return Basis::one;
    case Basis::dr_omega: return Basis::omega;
    case Basis::dr_Omega: return Basis::Omega;
    case Basis::dr_Omegabar: return Basis::Omegabar;
    case Basis::dr_omega2_half: return Basis::omega2_half;
    case Basis::dr_vol6: return Basis::vol6;
    default: return b;
  }
}

Basis with_dr(Basis n) {
  switch (n) {
    case Basis::one: return Basis::dr;
    case Basis::omega: return Basis::dr_omega;
    case Basis::Omega: return Basis::dr_Omega;
    case Basis::Omegabar: return Basis::dr_Omegabar;
    case Basis::omega2_half: return Basis::dr_omega2_half;
    case Basis::vol6: return Basis::dr_vol6;
    default: throw DegreeMismatch("dr already present in " + std::string(tag_of(n)));
  }
}

Basis conjugate_basis(Basis b) {
  switch (b) {
    case Basis::Omega: return Basis::Omegabar;
    case Basis::Omegabar: return Basis::Omega;
    case Basis::dr_Omega: return Basis::dr_Omegabar;
    case Basis::dr_Omegabar: return Basis::dr_Omega;
    default: return b;
  }
}

InvariantForm::InvariantForm(int degree, bool real) : degree_(degree), real_(real) {
  if (degree < 0 || degree > 7) throw DegreeMismatch("form degree must lie in 0..7");
}

InvariantForm InvariantForm::basis(Basis b, CProfile coeff) {
  InvariantForm f(degree_of(b), false);
  f.set(b, std::move(coeff));
  return f;
}

void InvariantForm::set(Basis b, CProfile c) {
  if (degree_of(b) != degree_)
    throw DegreeMismatch(std::string(tag_of(b)) + " does not have degree " + std::to_string(degree_));
  coeffs_[idx(b)] = std::move(c);
}

void InvariantForm::add(Basis b, const CProfile& c) {
  if (c.is_zero()) return;
  set(b, (*this)[b] + c);
}

bool InvariantForm::is_structurally_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const CProfile& c) { return c.is_zero(); });
}

std::array<std::complex<double>, kBasisSize> InvariantForm::values_at(double r) const {
  std::array<std::complex<double>, kBasisSize> out{};
  ProfileEvaluator ev(r);
  for (int i = 0; i < kBasisSize; ++i) {
    const auto& c = coeffs_[i];
    if (c.is_zero()) continue;
    out[i] = {ev.value(c.re), ev.value(c.im)};
  }
  return out;
}

double InvariantForm::sup_at(double r) const {
  double m = 0.0;
  for (const auto& v : values_at(r)) m = std::max(m, std::abs(v));
  return m;
}

double InvariantForm::reality_defect(double r) const {
  const auto v = values_at(r);
  double m = 0.0;
  for (Basis b : kAllBasis) {
    const Basis p = conjugate_basis(b);
    m = std::max(m, std::abs(v[idx(b)] - std::conj(v[idx(p)])));
  }
  return m;
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& o) {
  if (o.degree_ != degree_) throw DegreeMismatch("adding forms of different degree");
  for (int i = 0; i < kBasisSize; ++i)
    if (!o.coeffs_[i].is_zero()) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
  real_ = real_ && o.real_;
  overflow_ = overflow_ || o.overflow_;
  return *this;
}

InvariantForm& InvariantForm::operator-=(const InvariantForm& o) {
  if (o.degree_ != degree_) throw DegreeMismatch("subtracting forms of different degree");
  for (int i = 0; i < kBasisSize; ++i)
    if (!o.coeffs_[i].is_zero()) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
  real_ = real_ && o.real_;
  overflow_ = overflow_ || o.overflow_;
  return *this;
}

InvariantForm operator+(InvariantForm a, const InvariantForm& b) { return a += b; }
InvariantForm operator-(InvariantForm a, const InvariantForm& b) { return a -= b; }

InvariantForm operator-(const InvariantForm& a) {
  InvariantForm out(a.degree(), a.real());
  for (Basis b : kAllBasis)
    if (!a[b].is_zero()) out.set(b, -a[b]);
  return out;
}

InvariantForm operator*(const Profile& s, const InvariantForm& a) {
  InvariantForm out(a.degree(), a.real());
  for (Basis b : kAllBasis)
    if (!a[b].is_zero()) out.set(b, CProfile(s) * a[b]);
  return out;
}

InvariantForm operator*(const CProfile& s, const InvariantForm& a) {
  if (s.is_real()) return s.re * a;
  InvariantForm out(a.degree(), false);
  for (Basis b : kAllBasis)
    if (!a[b].is_zero()) out.set(b, s * a[b]);
  return out;
}

InvariantForm conj(const InvariantForm& a) {
  InvariantForm out(a.degree(), a.real());
  for (Basis b : kAllBasis)
    if (!a[b].is_zero()) out.set(conjugate_basis(b), conj(a[b]));
  return out;
}

nlohmann::json form_to_json(const InvariantForm& a) {
  nlohmann::json entries = nlohmann::json::array();
  for (Basis b : kAllBasis) {
    if (a[b].is_zero()) continue;
    entries.push_back({{"basis", std::string(tag_of(b))},
                       {"re", profile_to_json(a[b].re)},
                       {"im", profile_to_json(a[b].im)}});
  }
  return {{"degree", a.degree()}, {"real", a.real()}, {"entries", entries}};
}

InvariantForm form_from_json(const nlohmann::json& j) {
  try {
    InvariantForm out(j.at("degree").get<int>(), j.value("real", false));
    for (const auto& e : j.at("entries"))
      out.set(basis_from_tag(e.at("basis").get<std::string>()),
              CProfile(profile_from_json(e.at("re")), profile_from_json(e.at("im"))));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed form JSON: ") + e.what());
  }
}

}  // namespace g2
