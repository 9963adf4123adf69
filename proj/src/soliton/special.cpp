#include "g2/soliton/special.hpp"

#include <cmath>
#include <numbers>

#include "g2/error.hpp"

namespace g2 {

using std::numbers::pi;

SolitonCandidate cy_closed_form(double b, double c, Domain domain) {
  const Profile r = Profile::coordinate();
  const Profile e = c * exp(b * r);
  const Profile e2 = e * e;
  SolitonCandidate s;
  s.h = 1.0;
  s.theta = (2.0 / 3.0) * atan(e);
  s.kprime = b * (1.0 - e2) / (1.0 + e2);
  s.lambda = 0.0;
  s.structure = StructureKind::CY;
  s.family = Family::CYClosedForm;
  s.domain = domain;
  return s;
}

SolitonCandidate nk_special(Family family, const SpecialParams& p) {
  const Profile r = Profile::coordinate();
  SolitonCandidate s;
  s.structure = StructureKind::NK;
  s.family = family;
  switch (family) {
    case Family::Cone: {
      s.domain = p.domain.value_or(Domain::interval(1.0 - p.b, 3.0 - p.b));
      if (!s.domain.is_interval() || s.domain.lower() + p.b < 0.0)
        throw InvalidParams("Cone needs an interval with r + b > 0");
      s.h = r + p.b;
      s.theta = 0.0;
      s.lambda = p.lambda;
      s.kprime = -(p.lambda / 4.0) * (r + p.b);
      break;
    }
    case Family::AntiCone: {
      s.domain = p.domain.value_or(Domain::interval(p.b - 3.0, p.b - 1.0));
      if (!s.domain.is_interval() || s.domain.upper() > p.b)
        throw InvalidParams("AntiCone needs an interval with b - r > 0");
      s.h = p.b - r;
      s.theta = pi / 3.0;
      s.lambda = p.lambda;
      s.kprime = (p.lambda / 4.0) * (p.b - r);
      break;
    }
    case Family::Cylinder: {
      if (!(p.b > 0.0)) throw InvalidParams("Cylinder needs b > 0");
      s.domain = p.domain.value_or(Domain::circle(2.0 * pi));
      s.h = p.b;
      s.theta = pi / 6.0;
      s.lambda = -12.0 / (p.b * p.b);
      s.kprime = p.c;
      break;
    }
    case Family::SineCone: {
      s.domain = p.domain.value_or(Domain::interval(0.0, pi));
      if (!s.domain.is_interval() || s.domain.lower() < 0.0 || s.domain.upper() > pi)
        throw InvalidParams("SineCone lives on a subinterval of (0, pi)");
      s.h = sin(r);
      s.theta = r / 3.0;
      s.lambda = -16.0;
      s.kprime = 0.0;
      break;
    }
    default:
      throw InvalidParams("no special NK soliton in family " + std::string(family_name(family)));
  }
  s.h = s.h.on(s.domain);
  s.theta = s.theta.on(s.domain);
  s.kprime = s.kprime.on(s.domain);
  return s;
}

}  // namespace g2
