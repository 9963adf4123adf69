#pragma once

#include <array>
#include <complex>
#include <ostream>

#include "g2/profiles/taylor.hpp"

namespace g2 {

inline constexpr int kJetOrder = 4;

/// Value of a scalar function of r together with its first four
/// r-derivatives. Arithmetic is exact truncated-series arithmetic, so
/// products obey Leibniz to rounding.
template <class T>
struct Jet {
  T value{};
  std::array<T, kJetOrder> derivs{};

  /// k = 0 is the value, k = 1..4 the derivatives.
  T operator[](int k) const { return k == 0 ? value : derivs[k - 1]; }

  static Jet constant(T v) { return Jet{v, {}}; }

  static Jet from_taylor(const Taylor<T>& t) {
    Jet j;
    j.value = t.c[0];
    for (int k = 1; k <= kJetOrder; ++k) j.derivs[k - 1] = k <= t.order ? t.derivative(k) : T{};
    return j;
  }

  Taylor<T> to_taylor() const {
    Taylor<T> t;
    t.order = kJetOrder;
    t.c[0] = value;
    for (int k = 1; k <= kJetOrder; ++k) t.c[k] = derivs[k - 1] / T(factorial(k));
    return t;
  }
};

using RealJet = Jet<double>;
using ComplexJet = Jet<std::complex<double>>;

template <class T>
Jet<T> operator+(const Jet<T>& a, const Jet<T>& b) {
  return Jet<T>::from_taylor(a.to_taylor() + b.to_taylor());
}
template <class T>
Jet<T> operator-(const Jet<T>& a, const Jet<T>& b) {
  return Jet<T>::from_taylor(a.to_taylor() - b.to_taylor());
}
template <class T>
Jet<T> operator-(const Jet<T>& a) {
  return Jet<T>::from_taylor(-a.to_taylor());
}
template <class T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
  return Jet<T>::from_taylor(a.to_taylor() * b.to_taylor());
}
template <class T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
  return Jet<T>::from_taylor(a.to_taylor() / b.to_taylor());
}
template <class T>
Jet<T> sin(const Jet<T>& a) {
  return Jet<T>::from_taylor(sin(a.to_taylor()));
}
template <class T>
Jet<T> cos(const Jet<T>& a) {
  return Jet<T>::from_taylor(cos(a.to_taylor()));
}
template <class T>
Jet<T> exp(const Jet<T>& a) {
  return Jet<T>::from_taylor(exp(a.to_taylor()));
}
template <class T>
Jet<T> atan(const Jet<T>& a) {
  return Jet<T>::from_taylor(atan(a.to_taylor()));
}
template <class T>
Jet<T> pow(const Jet<T>& a, double p) {
  return Jet<T>::from_taylor(pow(a.to_taylor(), p));
}

inline ComplexJet make_complex(const RealJet& re, const RealJet& im) {
  ComplexJet out;
  out.value = {re.value, im.value};
  for (int k = 0; k < kJetOrder; ++k) out.derivs[k] = {re.derivs[k], im.derivs[k]};
  return out;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Jet<T>& j) {
  os << '(' << j.value;
  for (const auto& d : j.derivs) os << ", " << d;
  return os << ')';
}

}  // namespace g2
