#pragma once

#include <span>
#include <vector>

#include "g2/profiles/domain.hpp"

namespace g2 {

/// Weights for the derivatives 0..max_deriv at x0 on the stencil `nodes`
/// (Fornberg's recursion). Result is indexed [deriv][node].
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes,
                                                  int max_deriv);

/// Finite-difference derivatives of nodal values on a uniform mesh.
///
/// Interior nodes use the narrowest centered stencil of the requested
/// accuracy. Periodic meshes wrap; interval meshes switch to one-sided
/// windows of `deriv + accuracy` points near the ends.
class FiniteDifference {
 public:
  static constexpr int kMaxDerivative = 4;

  FiniteDifference(Mesh mesh, int accuracy = 4);

  const Mesh& mesh() const { return mesh_; }
  int accuracy() const { return accuracy_; }

  double derivative_at(std::span<const double> values, int deriv, int node) const;
  std::vector<double> derivative(std::span<const double> values, int deriv) const;

 private:
  struct Stencil {
    std::vector<int> offsets;
    std::vector<double> weights;
  };

  const Stencil& stencil(int deriv, int node) const;

  Mesh mesh_;
  int accuracy_;
  // centered_[d-1]: stencil used away from boundaries.
  std::vector<Stencil> centered_;
  // left_[d-1][k] serves node k, right_[d-1][k] serves node n-1-k.
  std::vector<std::vector<Stencil>> left_;
  std::vector<std::vector<Stencil>> right_;
};

}  // namespace g2
