#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include "g2/error.hpp"

namespace g2 {

/// Highest Taylor order carried internally. Jets expose order 4, but form
/// calculus stacks up to three r-derivatives on top of that.
inline constexpr int kMaxTaylorOrder = 12;

/// Denominators with magnitude at or below this are treated as zero.
inline constexpr double kSingularThreshold = 1e-14;

inline constexpr double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Truncated power series sum_k c[k] (r - r0)^k for k <= order.
template <class T>
struct Taylor {
  std::array<T, kMaxTaylorOrder + 1> c{};
  int order = 0;

  static Taylor constant(T v, int order) {
    Taylor t;
    t.order = order;
    t.c[0] = v;
    return t;
  }

  static Taylor variable(double r0, int order) {
    Taylor t;
    t.order = order;
    t.c[0] = T(r0);
    if (order >= 1) t.c[1] = T(1);
    return t;
  }

  /// k-th derivative with respect to r at the expansion point.
  T derivative(int k) const { return c[k] * factorial(k); }
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T>
Taylor<T> binary_shell(const Taylor<T>& a, const Taylor<T>& b) {
  Taylor<T> out;
  out.order = std::min(a.order, b.order);
  return out;
}

}  // namespace detail

template <class T>
Taylor<T> operator+(const Taylor<T>& a, const Taylor<T>& b) {
  auto out = detail::binary_shell(a, b);
  for (int k = 0; k <= out.order; ++k) out.c[k] = a.c[k] + b.c[k];
  return out;
}

template <class T>
Taylor<T> operator-(const Taylor<T>& a, const Taylor<T>& b) {
  auto out = detail::binary_shell(a, b);
  for (int k = 0; k <= out.order; ++k) out.c[k] = a.c[k] - b.c[k];
  return out;
}

template <class T>
Taylor<T> operator-(const Taylor<T>& a) {
  Taylor<T> out = a;
  for (int k = 0; k <= out.order; ++k) out.c[k] = -a.c[k];
  return out;
}

template <class T>
Taylor<T> operator*(const Taylor<T>& a, const Taylor<T>& b) {
  auto out = detail::binary_shell(a, b);
  for (int k = 0; k <= out.order; ++k) {
    T s{};
    for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
    out.c[k] = s;
  }
  return out;
}

template <class T>
Taylor<T> operator*(T s, const Taylor<T>& a) {
  Taylor<T> out = a;
  for (int k = 0; k <= out.order; ++k) out.c[k] = s * a.c[k];
  return out;
}

template <class T>
Taylor<T> operator/(const Taylor<T>& a, const Taylor<T>& b) {
  if (detail::magnitude(b.c[0]) <= kSingularThreshold)
    throw SingularEval("division by a vanishing denominator");
  auto out = detail::binary_shell(a, b);
  for (int k = 0; k <= out.order; ++k) {
    T s = a.c[k];
    for (int j = 1; j <= k; ++j) s -= b.c[j] * out.c[k - j];
    out.c[k] = s / b.c[0];
  }
  return out;
}

/// Term-by-term r-derivative; loses one order.
template <class T>
Taylor<T> differentiate(const Taylor<T>& a) {
  Taylor<T> out;
  out.order = std::max(a.order - 1, 0);
  for (int k = 0; k < a.order; ++k) out.c[k] = T(k + 1) * a.c[k + 1];
  if (a.order == 0) out.c[0] = T{};
  return out;
}

/// Series of an antiderivative whose value at the expansion point is `value`.
template <class T>
Taylor<T> integrate(const Taylor<T>& a, T value, int order) {
  Taylor<T> out;
  out.order = std::min(order, a.order + 1);
  out.c[0] = value;
  for (int k = 1; k <= out.order; ++k) out.c[k] = a.c[k - 1] / T(k);
  return out;
}

template <class T>
Taylor<T> exp(const Taylor<T>& a) {
  using std::exp;
  Taylor<T> out;
  out.order = a.order;
  out.c[0] = exp(a.c[0]);
  for (int k = 1; k <= a.order; ++k) {
    T s{};
    for (int j = 1; j <= k; ++j) s += T(j) * a.c[j] * out.c[k - j];
    out.c[k] = s / T(k);
  }
  return out;
}

/// Simultaneous sine and cosine recurrences.
template <class T>
void sin_cos(const Taylor<T>& a, Taylor<T>& s, Taylor<T>& co) {
  using std::cos;
  using std::sin;
  s.order = co.order = a.order;
  s.c[0] = sin(a.c[0]);
  co.c[0] = cos(a.c[0]);
  for (int k = 1; k <= a.order; ++k) {
    T ss{}, cc{};
    for (int j = 1; j <= k; ++j) {
      ss += T(j) * a.c[j] * co.c[k - j];
      cc += T(j) * a.c[j] * s.c[k - j];
    }
    s.c[k] = ss / T(k);
    co.c[k] = -cc / T(k);
  }
}

template <class T>
Taylor<T> sin(const Taylor<T>& a) {
  Taylor<T> s, c;
  sin_cos(a, s, c);
  return s;
}

template <class T>
Taylor<T> cos(const Taylor<T>& a) {
  Taylor<T> s, c;
  sin_cos(a, s, c);
  return c;
}

template <class T>
Taylor<T> atan(const Taylor<T>& a) {
  using std::atan;
  auto denom = Taylor<T>::constant(T(1), a.order) + a * a;
  if (detail::magnitude(denom.c[0]) <= kSingularThreshold)
    throw SingularEval("arctan evaluated where 1 + x^2 vanishes");
  Taylor<T> out;
  out.order = a.order;
  out.c[0] = atan(a.c[0]);
  if (a.order == 0) return out;
  auto rate = differentiate(a) / denom;
  for (int k = 1; k <= a.order; ++k) out.c[k] = rate.c[k - 1] / T(k);
  return out;
}

template <class T>
Taylor<T> log(const Taylor<T>& a) {
  using std::log;
  if (detail::magnitude(a.c[0]) <= kSingularThreshold)
    throw SingularEval("logarithm of a vanishing argument");
  Taylor<T> out;
  out.order = a.order;
  out.c[0] = log(a.c[0]);
  if (a.order == 0) return out;
  auto rate = differentiate(a) / a;
  for (int k = 1; k <= a.order; ++k) out.c[k] = rate.c[k - 1] / T(k);
  return out;
}

/// a^n for integer n by repeated squaring; negative n inverts the base first
/// so only a itself is tested against the singular threshold.
template <class T>
Taylor<T> pow_int(const Taylor<T>& a, int n) {
  auto result = Taylor<T>::constant(T(1), a.order);
  auto base = n < 0 ? Taylor<T>::constant(T(1), a.order) / a : a;
  int m = n < 0 ? -n : n;
  while (m > 0) {
    if (m & 1) result = result * base;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return result;
}

/// a^p for real p; integer exponents are routed through pow_int so that
/// negative bases stay admissible.
template <class T>
Taylor<T> pow(const Taylor<T>& a, double p) {
  using std::pow;
  if (p == std::round(p) && std::abs(p) <= 64) return pow_int(a, static_cast<int>(p));
  if (detail::magnitude(a.c[0]) <= kSingularThreshold)
    throw SingularEval("non-integer power of a vanishing base");
  if constexpr (std::is_same_v<T, double>) {
    if (a.c[0] < 0) throw DomainError("non-integer power of a negative base");
  }
  Taylor<T> out;
  out.order = a.order;
  out.c[0] = pow(a.c[0], p);
  for (int k = 1; k <= a.order; ++k) {
    T s{};
    for (int j = 1; j <= k; ++j) s += T((p + 1.0) * j - k) * a.c[j] * out.c[k - j];
    out.c[k] = s / (T(k) * a.c[0]);
  }
  return out;
}

}  // namespace g2
