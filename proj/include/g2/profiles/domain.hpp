#pragma once

#include <optional>
#include <string>
#include <vector>

namespace g2 {

/// Coordinate range of the one-dimensional factor L. `line` is the
/// unconstrained default for closed-form expressions that carry no domain.
struct Domain {
  enum class Kind { line, circle, interval };

  Kind kind = Kind::line;
  double r0 = 0.0;  ///< interval start; circle coordinates live in [0, period]
  double r1 = 0.0;  ///< interval end, or the circle period

  static Domain line() { return {}; }
  static Domain circle(double period);
  static Domain interval(double r0, double r1);

  bool is_line() const { return kind == Kind::line; }
  bool is_circle() const { return kind == Kind::circle; }
  bool is_interval() const { return kind == Kind::interval; }
  bool bounded() const { return kind != Kind::line; }

  double period() const { return r1; }
  double lower() const { return kind == Kind::circle ? 0.0 : r0; }
  double upper() const { return r1; }
  double length() const { return upper() - lower(); }

  bool contains(double r) const;

  /// `n` sample points strictly inside an interval (cell midpoints), or the
  /// left-closed uniform grid on a circle.
  std::vector<double> sample_points(int n) const;

  std::string describe() const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

/// Domain of a combination of two profiles: `line` defers to the other side,
/// otherwise both must agree.
Domain merge_domains(const Domain& a, const Domain& b);

/// Uniform mesh. On a circle the nodes are i * period / n (the endpoint is
/// identified with 0); on an interval they include both endpoints.
struct Mesh {
  Domain domain;
  int n = 0;

  static Mesh uniform(const Domain& domain, int n);

  bool periodic() const { return domain.is_circle(); }
  double spacing() const;
  double node(int i) const;
  std::vector<double> nodes() const;

  /// Index of the node at r, if r is a mesh node to within a small fraction
  /// of the spacing.
  std::optional<int> index_of(double r) const;

  friend bool operator==(const Mesh&, const Mesh&) = default;
};

}  // namespace g2
