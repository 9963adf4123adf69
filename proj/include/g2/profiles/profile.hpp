#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "g2/profiles/domain.hpp"
#include "g2/profiles/finite_difference.hpp"
#include "g2/profiles/jet.hpp"

namespace g2 {

struct QuadratureMetadata {
  std::string rule;
  double tolerance = 0.0;
  double r0 = 0.0;
  double c0 = 0.0;
};

namespace detail {

enum class NodeKind {
  constant,
  coordinate,
  add,
  sub,
  mul,
  div,
  neg,
  sin,
  cos,
  exp,
  atan,
  pow,
  derivative,
  antiderivative,
  sampled,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct SampledData {
  Mesh mesh;
  std::vector<double> values;
  FiniteDifference fd;
  std::optional<QuadratureMetadata> quadrature;  ///< set when built by cumulative integration
  /// Optional exact Taylor coefficients c_0..c_4 per node; replace finite
  /// differences when present.
  std::vector<std::array<double, 5>> jets;

  SampledData(Mesh m, std::vector<double> v, int accuracy)
      : mesh(std::move(m)), values(std::move(v)), fd(mesh, accuracy) {}
};

struct AntiderivativeData {
  double r0 = 0.0;
  double c0 = 0.0;
  double tol = 1e-12;
  // Memo of quadrature values keyed by upper limit; guarded for sharing
  // across threads.
  mutable std::mutex mutex;
  mutable std::map<double, double> cache;
};

struct Node {
  NodeKind kind = NodeKind::constant;
  double value = 0.0;  ///< constant value, or the exponent of a pow node
  std::vector<NodePtr> args;
  std::shared_ptr<const SampledData> sampled;
  std::shared_ptr<const AntiderivativeData> anti;
};

}  // namespace detail

/// Real scalar function of r. Either a closed-form expression DAG (exact
/// jets) or a table of samples on a uniform mesh (finite-difference jets).
/// Immutable; copies share structure.
class Profile {
 public:
  /// The zero function on the unconstrained line.
  Profile();
  Profile(double c);  // NOLINT: constants promote implicitly in expressions

  static Profile constant(double v, Domain d = Domain::line());
  static Profile coordinate(Domain d = Domain::line());
  static Profile sampled(const Mesh& mesh, std::vector<double> values, int accuracy = 4);
  /// Nodal data carrying Taylor coefficients f^(k)/k!, k = 0..4, at every node.
  static Profile sampled_jets(const Mesh& mesh, std::vector<std::array<double, 5>> taylor);
  static Profile from_node(detail::NodePtr node, Domain d);

  /// Value and derivatives 1..4 at r. Sampled profiles require r to be a
  /// mesh node.
  RealJet jet_at(double r) const;
  Taylor<double> taylor_at(double r, int order) const;
  double value_at(double r) const;

  const Domain& domain() const { return domain_; }
  /// Same expression on a different domain (must be compatible).
  Profile on(const Domain& d) const;

  std::optional<double> constant_value() const;
  bool is_zero() const;
  bool is_sampled() const;
  /// Mesh of the sampled leaves, when there are any.
  std::optional<Mesh> mesh() const;
  /// Present when the top node is an antiderivative built by quadrature.
  std::optional<QuadratureMetadata> quadrature() const;

  const detail::NodePtr& node() const { return node_; }
  std::size_t node_count() const;

 private:
  Profile(detail::NodePtr node, Domain d) : node_(std::move(node)), domain_(d) {}

  detail::NodePtr node_;
  Domain domain_;
};

/// Evaluates several profiles at one point, sharing common sub-expressions.
class ProfileEvaluator {
 public:
  explicit ProfileEvaluator(double r) : r_(r) {}

  double point() const { return r_; }
  Taylor<double> taylor(const Profile& p, int order);
  double value(const Profile& p) { return taylor(p, 0).c[0]; }
  RealJet jet(const Profile& p) { return RealJet::from_taylor(taylor(p, kJetOrder)); }

 private:
  friend class Profile;
  Taylor<double> eval(const detail::Node& n, int order);

  double r_;
  std::unordered_map<const detail::Node*, Taylor<double>> memo_;
};

Profile operator+(const Profile& a, const Profile& b);
Profile operator-(const Profile& a, const Profile& b);
Profile operator*(const Profile& a, const Profile& b);
Profile operator/(const Profile& a, const Profile& b);
Profile operator-(const Profile& a);

Profile sin(const Profile& a);
Profile cos(const Profile& a);
Profile exp(const Profile& a);
Profile atan(const Profile& a);
Profile pow(const Profile& a, double exponent);

/// r-derivative. Constants, sums and antiderivatives fold; everything else
/// becomes a derivative node evaluated one order higher.
Profile derivative(const Profile& a);

inline constexpr double kDefaultQuadratureTol = 1e-12;

/// q with q(r0) = c0 and q' = p. Closed-form integrands are integrated on
/// demand by adaptive Simpson; sampled integrands are accumulated on their
/// mesh with fourth-order panel weights.
Profile antiderivative(const Profile& p, double r0, double c0, double tol = kDefaultQuadratureTol);

}  // namespace g2
