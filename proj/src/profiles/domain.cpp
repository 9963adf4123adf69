#include "g2/profiles/domain.hpp"

#include <cmath>
#include <sstream>

#include "g2/error.hpp"

namespace g2 {

Domain Domain::circle(double period) {
  if (!(period > 0.0) || !std::isfinite(period))
    throw DomainError("circle period must be positive and finite");
  return {Kind::circle, 0.0, period};
}

Domain Domain::interval(double r0, double r1) {
  if (!(r1 > r0) || !std::isfinite(r0) || !std::isfinite(r1))
    throw DomainError("interval requires finite r0 < r1");
  return {Kind::interval, r0, r1};
}

bool Domain::contains(double r) const {
  if (!std::isfinite(r)) return false;
  if (kind == Kind::line) return true;
  const double slack = 1e-12 * std::max(1.0, std::abs(upper()) + std::abs(lower()));
  return r >= lower() - slack && r <= upper() + slack;
}

std::vector<double> Domain::sample_points(int n) const {
  if (kind == Kind::line) throw DomainError("cannot sample an unbounded line domain");
  std::vector<double> pts(n);
  const double len = length();
  for (int i = 0; i < n; ++i)
    pts[i] = kind == Kind::circle ? len * i / n : r0 + len * (i + 0.5) / n;
  return pts;
}

std::string Domain::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::line: os << "line"; break;
    case Kind::circle: os << "circle(period=" << r1 << ")"; break;
    case Kind::interval: os << "interval(" << r0 << ", " << r1 << ")"; break;
  }
  return os.str();
}

Domain merge_domains(const Domain& a, const Domain& b) {
  if (a.is_line()) return b;
  if (b.is_line()) return a;
  if (a == b) return a;
  throw DomainError("incompatible domains " + a.describe() + " and " + b.describe());
}

Mesh Mesh::uniform(const Domain& domain, int n) {
  if (!domain.bounded()) throw DomainError("a mesh needs a circle or interval domain");
  if (n < 2) throw DomainError("a mesh needs at least two nodes");
  return Mesh{domain, n};
}

double Mesh::spacing() const {
  return periodic() ? domain.length() / n : domain.length() / (n - 1);
}

double Mesh::node(int i) const { return domain.lower() + spacing() * i; }

std::vector<double> Mesh::nodes() const {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = node(i);
  return out;
}

std::optional<int> Mesh::index_of(double r) const {
  const double h = spacing();
  const double x = (r - domain.lower()) / h;
  long k = std::lround(x);
  if (std::abs(x - static_cast<double>(k)) > 1e-9) return std::nullopt;
  if (periodic()) {
    if (k == n) k = 0;
    if (k < 0 || k >= n) return std::nullopt;
  } else if (k < 0 || k >= n) {
    return std::nullopt;
  }
  return static_cast<int>(k);
}

}  // namespace g2
