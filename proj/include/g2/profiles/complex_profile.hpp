#pragma once

#include <complex>

#include "g2/profiles/profile.hpp"

namespace g2 {

/// Complex-valued profile stored as a pair of real profiles.
struct CProfile {
  Profile re;
  Profile im;

  CProfile() = default;
  CProfile(Profile real) : re(std::move(real)) {}  // NOLINT: real promotes to complex
  explicit CProfile(double real) : re(real) {}
  CProfile(Profile real, Profile imag) : re(std::move(real)), im(std::move(imag)) {}
  explicit CProfile(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  Domain domain() const { return merge_domains(re.domain(), im.domain()); }

  std::complex<double> value_at(double r) const { return {re.value_at(r), im.value_at(r)}; }
  ComplexJet jet_at(double r) const;
};

inline CProfile conj(const CProfile& a) { return {a.re, -a.im}; }
inline CProfile times_i(const CProfile& a) { return {-a.im, a.re}; }

inline CProfile operator+(const CProfile& a, const CProfile& b) { return {a.re + b.re, a.im + b.im}; }
inline CProfile operator-(const CProfile& a, const CProfile& b) { return {a.re - b.re, a.im - b.im}; }
inline CProfile operator-(const CProfile& a) { return {-a.re, -a.im}; }

inline CProfile operator*(const CProfile& a, const CProfile& b) {
  if (a.is_real()) return {a.re * b.re, a.re * b.im};
  if (b.is_real()) return {a.re * b.re, a.im * b.re};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

/// Division by a real profile only; form calculus never divides by a
/// complex coefficient.
inline CProfile operator/(const CProfile& a, const Profile& b) { return {a.re / b, a.im / b}; }

inline CProfile derivative(const CProfile& a) { return {derivative(a.re), derivative(a.im)}; }

/// e^{i x} for real x.
inline CProfile cis(const Profile& x) { return {cos(x), sin(x)}; }

}  // namespace g2
