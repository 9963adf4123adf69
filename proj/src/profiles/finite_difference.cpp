#include "g2/profiles/finite_difference.hpp"

#include <algorithm>
#include <cmath>

#include "g2/error.hpp"

namespace g2 {

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes,
                                                  int max_deriv) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> c(max_deriv + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_deriv);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

int centered_width(int deriv, int accuracy) { return 2 * ((deriv + 1) / 2) - 1 + accuracy; }

}  // namespace

FiniteDifference::FiniteDifference(Mesh mesh, int accuracy) : mesh_(std::move(mesh)), accuracy_(accuracy) {
  if (accuracy < 2 || accuracy % 2 != 0 || accuracy > 8)
    throw DomainError("finite-difference accuracy must be 2, 4, 6 or 8");
  const double h = mesh_.spacing();

  auto build = [&](std::vector<int> offsets, int deriv) {
    std::vector<double> x(offsets.begin(), offsets.end());
    auto w = fornberg_weights(0.0, x, deriv);
    Stencil s{std::move(offsets), std::move(w[deriv])};
    const double scale = std::pow(h, -deriv);
    for (auto& v : s.weights) v *= scale;
    return s;
  };

  left_.resize(kMaxDerivative);
  right_.resize(kMaxDerivative);
  for (int d = 1; d <= kMaxDerivative; ++d) {
    const int width = centered_width(d, accuracy_);
    const int half = width / 2;
    std::vector<int> offsets(width);
    for (int k = 0; k < width; ++k) offsets[k] = k - half;
    centered_.push_back(build(offsets, d));

    if (mesh_.periodic()) {
      if (mesh_.n < width) throw DomainError("periodic mesh too coarse for the stencil");
      continue;
    }
    const int one_sided = d + accuracy_;
    if (mesh_.n < one_sided) throw DomainError("interval mesh too coarse for one-sided stencils");
    for (int i = 0; i < half; ++i) {
      const int start = std::clamp(i - one_sided / 2, 0, mesh_.n - one_sided);
      std::vector<int> off(one_sided);
      for (int k = 0; k < one_sided; ++k) off[k] = start + k - i;
      left_[d - 1].push_back(build(off, d));
      std::vector<int> mirrored(one_sided);
      for (int k = 0; k < one_sided; ++k) mirrored[k] = -off[one_sided - 1 - k];
      right_[d - 1].push_back(build(mirrored, d));
    }
  }
}

const FiniteDifference::Stencil& FiniteDifference::stencil(int deriv, int node) const {
  const auto& c = centered_[deriv - 1];
  if (mesh_.periodic()) return c;
  const int half = static_cast<int>(c.offsets.size()) / 2;
  if (node < half) return left_[deriv - 1][node];
  if (node > mesh_.n - 1 - half) return right_[deriv - 1][mesh_.n - 1 - node];
  return c;
}

double FiniteDifference::derivative_at(std::span<const double> values, int deriv, int node) const {
  if (deriv == 0) return values[node];
  if (deriv < 0 || deriv > kMaxDerivative)
    throw DomainError("finite differences provide derivatives up to order 4");
  const auto& s = stencil(deriv, node);
  const int n = mesh_.n;
  double acc = 0.0;
  for (std::size_t k = 0; k < s.offsets.size(); ++k) {
    int j = node + s.offsets[k];
    if (mesh_.periodic()) j = ((j % n) + n) % n;
    acc += s.weights[k] * values[j];
  }
  return acc;
}

std::vector<double> FiniteDifference::derivative(std::span<const double> values, int deriv) const {
  if (values.size() != static_cast<std::size_t>(mesh_.n)) throw DomainError("values do not match the mesh");
  if (deriv < 0 || deriv > kMaxDerivative)
    throw DomainError("finite differences provide derivatives up to order 4");
  std::vector<double> out(values.begin(), values.end());
  if (deriv == 0) return out;
  const auto& c = centered_[deriv - 1];
  const int half = static_cast<int>(c.offsets.size()) / 2;
  const int n = mesh_.n;
  // Fast path for nodes whose centered stencil needs no wrapping or switching.
  for (int i = half; i < n - half; ++i) {
    const double* v = values.data() + (i - half);
    double acc = 0.0;
    for (std::size_t k = 0; k < c.weights.size(); ++k) acc += c.weights[k] * v[k];
    out[i] = acc;
  }
  for (int i = 0; i < std::min(half, n); ++i) out[i] = derivative_at(values, deriv, i);
  for (int i = std::max(half, n - half); i < n; ++i) out[i] = derivative_at(values, deriv, i);
  return out;
}

}  // namespace g2
