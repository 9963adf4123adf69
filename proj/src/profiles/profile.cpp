#include "g2/profiles/profile.hpp"

#include <cmath>
#include <unordered_set>

#include "g2/error.hpp"
#include "g2/profiles/complex_profile.hpp"
#include "g2/profiles/quadrature.hpp"

namespace g2 {

using detail::Node;
using detail::NodeKind;
using detail::NodePtr;

namespace {

NodePtr make_constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::constant;
  n->value = v;
  return n;
}

NodePtr make_node(NodeKind kind, std::vector<NodePtr> args, double value = 0.0) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->args = std::move(args);
  n->value = value;
  return n;
}

std::optional<double> constant_of(const NodePtr& n) {
  if (n->kind == NodeKind::constant) return n->value;
  return std::nullopt;
}

bool is_const(const NodePtr& n, double v) {
  auto c = constant_of(n);
  return c && *c == v;
}

NodePtr fold_add(const NodePtr& a, const NodePtr& b) {
  auto ca = constant_of(a), cb = constant_of(b);
  if (ca && cb) return make_constant(*ca + *cb);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make_node(NodeKind::add, {a, b});
}

NodePtr fold_neg(const NodePtr& a) {
  if (auto c = constant_of(a)) return make_constant(-*c);
  if (a->kind == NodeKind::neg) return a->args[0];
  return make_node(NodeKind::neg, {a});
}

NodePtr fold_sub(const NodePtr& a, const NodePtr& b) {
  auto ca = constant_of(a), cb = constant_of(b);
  if (ca && cb) return make_constant(*ca - *cb);
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return fold_neg(b);
  if (a == b) return make_constant(0.0);
  return make_node(NodeKind::sub, {a, b});
}

NodePtr fold_mul(const NodePtr& a, const NodePtr& b) {
  auto ca = constant_of(a), cb = constant_of(b);
  if (ca && cb) return make_constant(*ca * *cb);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return fold_neg(b);
  if (is_const(b, -1.0)) return fold_neg(a);
  return make_node(NodeKind::mul, {a, b});
}

NodePtr fold_div(const NodePtr& a, const NodePtr& b) {
  auto ca = constant_of(a), cb = constant_of(b);
  if (cb && std::abs(*cb) <= kSingularThreshold) throw SingularEval("division by the zero constant");
  if (ca && cb) return make_constant(*ca / *cb);
  if (is_const(a, 0.0)) return make_constant(0.0);
  if (is_const(b, 1.0)) return a;
  return make_node(NodeKind::div, {a, b});
}

NodePtr fold_unary(NodeKind kind, const NodePtr& a) {
  if (auto c = constant_of(a)) {
    switch (kind) {
      case NodeKind::sin: return make_constant(std::sin(*c));
      case NodeKind::cos: return make_constant(std::cos(*c));
      case NodeKind::exp: return make_constant(std::exp(*c));
      case NodeKind::atan: return make_constant(std::atan(*c));
      default: break;
    }
  }
  return make_node(kind, {a});
}

NodePtr fold_pow(const NodePtr& a, double p) {
  if (p == 0.0) return make_constant(1.0);
  if (p == 1.0) return a;
  if (auto c = constant_of(a)) {
    auto t = pow(Taylor<double>::constant(*c, 0), p);
    return make_constant(t.c[0]);
  }
  return make_node(NodeKind::pow, {a}, p);
}

NodePtr fold_derivative(const NodePtr& a) {
  switch (a->kind) {
    case NodeKind::constant: return make_constant(0.0);
    case NodeKind::coordinate: return make_constant(1.0);
    case NodeKind::antiderivative: return a->args[0];
    case NodeKind::add: return fold_add(fold_derivative(a->args[0]), fold_derivative(a->args[1]));
    case NodeKind::sub: return fold_sub(fold_derivative(a->args[0]), fold_derivative(a->args[1]));
    case NodeKind::neg: return fold_neg(fold_derivative(a->args[0]));
    case NodeKind::mul:
      if (constant_of(a->args[0])) return fold_mul(a->args[0], fold_derivative(a->args[1]));
      if (constant_of(a->args[1])) return fold_mul(fold_derivative(a->args[0]), a->args[1]);
      break;
    case NodeKind::div:
      if (constant_of(a->args[1])) return fold_div(fold_derivative(a->args[0]), a->args[1]);
      break;
    default: break;
  }
  return make_node(NodeKind::derivative, {a});
}

const Node* find_sampled(const Node& n, std::unordered_set<const Node*>& seen) {
  if (!seen.insert(&n).second) return nullptr;
  if (n.kind == NodeKind::sampled) return &n;
  for (const auto& c : n.args)
    if (auto s = find_sampled(*c, seen)) return s;
  return nullptr;
}

// Integral of the nodal interpolating cubic over each mesh panel.
std::vector<double> cumulative_integral(const Mesh& mesh, const std::vector<double>& v) {
  const int n = mesh.n;
  const double h = mesh.spacing();
  if (n < 4) throw DomainError("cumulative integration needs at least four nodes");
  auto at = [&](int i) { return v[((i % n) + n) % n]; };
  std::vector<double> s(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    double panel;
    if (mesh.periodic() || (i >= 1 && i + 2 <= n - 1))
      panel = (-at(i - 1) + 13.0 * at(i) + 13.0 * at(i + 1) - at(i + 2)) / 24.0;
    else if (i == 0)
      panel = (9.0 * v[0] + 19.0 * v[1] - 5.0 * v[2] + v[3]) / 24.0;
    else
      panel = (v[n - 4] - 5.0 * v[n - 3] + 19.0 * v[n - 2] + 9.0 * v[n - 1]) / 24.0;
    s[i + 1] = s[i] + h * panel;
  }
  return s;
}

}  // namespace

Profile::Profile() : node_(make_constant(0.0)) {}

Profile::Profile(double c) : node_(make_constant(c)) {}

Profile Profile::constant(double v, Domain d) { return Profile(make_constant(v), d); }

Profile Profile::coordinate(Domain d) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::coordinate;
  return Profile(n, d);
}

Profile Profile::sampled(const Mesh& mesh, std::vector<double> values, int accuracy) {
  if (static_cast<int>(values.size()) != mesh.n)
    throw DomainError("sample count does not match the mesh");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("sampled values must be finite");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::sampled;
  n->sampled = std::make_shared<detail::SampledData>(mesh, std::move(values), accuracy);
  return Profile(n, mesh.domain);
}

Profile Profile::sampled_jets(const Mesh& mesh, std::vector<std::array<double, 5>> taylor) {
  if (static_cast<int>(taylor.size()) != mesh.n) throw DomainError("jet count does not match the mesh");
  std::vector<double> values(mesh.n);
  for (int i = 0; i < mesh.n; ++i) {
    for (double v : taylor[i])
      if (!std::isfinite(v)) throw DomainError("sampled jets must be finite");
    values[i] = taylor[i][0];
  }
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::sampled;
  auto data = std::make_shared<detail::SampledData>(mesh, std::move(values), 4);
  data->jets = std::move(taylor);
  n->sampled = std::move(data);
  return Profile(n, mesh.domain);
}

Profile Profile::from_node(NodePtr node, Domain d) { return Profile(std::move(node), d); }

Taylor<double> Profile::taylor_at(double r, int order) const {
  ProfileEvaluator ev(r);
  return ev.taylor(*this, order);
}

RealJet Profile::jet_at(double r) const { return RealJet::from_taylor(taylor_at(r, kJetOrder)); }

double Profile::value_at(double r) const { return taylor_at(r, 0).c[0]; }

Profile Profile::on(const Domain& d) const {
  if (auto m = mesh(); m && !(m->domain == d))
    throw DomainError("sampled profile cannot move off its mesh domain " + m->domain.describe());
  return Profile(node_, d);
}

std::optional<double> Profile::constant_value() const { return constant_of(node_); }

bool Profile::is_zero() const { return is_const(node_, 0.0); }

bool Profile::is_sampled() const { return mesh().has_value(); }

std::optional<Mesh> Profile::mesh() const {
  std::unordered_set<const Node*> seen;
  if (auto s = find_sampled(*node_, seen)) return s->sampled->mesh;
  return std::nullopt;
}

std::optional<QuadratureMetadata> Profile::quadrature() const {
  if (node_->kind == NodeKind::antiderivative) {
    const auto& a = *node_->anti;
    return QuadratureMetadata{"adaptive_simpson", a.tol, a.r0, a.c0};
  }
  if (node_->kind == NodeKind::sampled) return node_->sampled->quadrature;
  return std::nullopt;
}

std::size_t Profile::node_count() const {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->args) stack.push_back(c.get());
  }
  return seen.size();
}

Taylor<double> ProfileEvaluator::taylor(const Profile& p, int order) {
  if (order < 0 || order > kMaxTaylorOrder) throw DomainError("requested Taylor order out of range");
  if (!p.domain().contains(r_))
    throw DomainError("r = " + std::to_string(r_) + " outside " + p.domain().describe());
  auto t = eval(*p.node(), order);
  if (t.order < order)
    throw DomainError("sampled data supports only " + std::to_string(t.order) +
                      " derivatives at this point");
  return t;
}

Taylor<double> ProfileEvaluator::eval(const Node& n, int order) {
  if (auto it = memo_.find(&n); it != memo_.end() && it->second.order >= order) {
    auto t = it->second;
    for (int k = order + 1; k <= t.order; ++k) t.c[k] = 0.0;
    t.order = order;
    return t;
  }
  Taylor<double> out;
  switch (n.kind) {
    case NodeKind::constant: out = Taylor<double>::constant(n.value, order); break;
    case NodeKind::coordinate: out = Taylor<double>::variable(r_, order); break;
    case NodeKind::add: out = eval(*n.args[0], order) + eval(*n.args[1], order); break;
    case NodeKind::sub: out = eval(*n.args[0], order) - eval(*n.args[1], order); break;
    case NodeKind::mul: out = eval(*n.args[0], order) * eval(*n.args[1], order); break;
    case NodeKind::div: out = eval(*n.args[0], order) / eval(*n.args[1], order); break;
    case NodeKind::neg: out = -eval(*n.args[0], order); break;
    case NodeKind::sin: out = sin(eval(*n.args[0], order)); break;
    case NodeKind::cos: out = cos(eval(*n.args[0], order)); break;
    case NodeKind::exp: out = exp(eval(*n.args[0], order)); break;
    case NodeKind::atan: out = atan(eval(*n.args[0], order)); break;
    case NodeKind::pow: out = pow(eval(*n.args[0], order), n.value); break;
    case NodeKind::derivative: {
      if (order + 1 > kMaxTaylorOrder) throw DomainError("derivative stack exceeds the Taylor order");
      out = differentiate(eval(*n.args[0], order + 1));
      break;
    }
    case NodeKind::antiderivative: {
      const auto& a = *n.anti;
      const Node& child = *n.args[0];
      double value;
      {
        std::lock_guard lock(a.mutex);
        auto it = a.cache.find(r_);
        if (it != a.cache.end()) {
          value = it->second;
        } else {
          // Integrate from the nearest point already known.
          double from = a.r0, base = a.c0;
          auto hi = a.cache.lower_bound(r_);
          if (hi != a.cache.end() && std::abs(hi->first - r_) < std::abs(from - r_)) {
            from = hi->first;
            base = hi->second;
          }
          if (hi != a.cache.begin()) {
            auto lo = std::prev(hi);
            if (std::abs(lo->first - r_) < std::abs(from - r_)) {
              from = lo->first;
              base = lo->second;
            }
          }
          auto f = [&child](double s) { return ProfileEvaluator(s).eval(child, 0).c[0]; };
          value = base + adaptive_simpson(f, from, r_, a.tol).value;
          a.cache.emplace(r_, value);
        }
      }
      if (order == 0) {
        out = Taylor<double>::constant(value, 0);
      } else {
        out = integrate(eval(child, order - 1), value, order);
      }
      break;
    }
    case NodeKind::sampled: {
      const auto& s = *n.sampled;
      auto idx = s.mesh.index_of(r_);
      if (!idx) throw DomainError("sampled profile evaluated off its mesh at r = " + std::to_string(r_));
      out.order = std::min(order, FiniteDifference::kMaxDerivative);
      if (!s.jets.empty()) {
        for (int k = 0; k <= out.order; ++k) out.c[k] = s.jets[*idx][k];
        break;
      }
      for (int k = 0; k <= out.order; ++k)
        out.c[k] = s.fd.derivative_at(s.values, k, *idx) / factorial(k);
      break;
    }
  }
  memo_[&n] = out;
  return out;
}

Profile operator+(const Profile& a, const Profile& b) {
  return Profile::from_node(fold_add(a.node(), b.node()), merge_domains(a.domain(), b.domain()));
}
Profile operator-(const Profile& a, const Profile& b) {
  return Profile::from_node(fold_sub(a.node(), b.node()), merge_domains(a.domain(), b.domain()));
}
Profile operator*(const Profile& a, const Profile& b) {
  return Profile::from_node(fold_mul(a.node(), b.node()), merge_domains(a.domain(), b.domain()));
}
Profile operator/(const Profile& a, const Profile& b) {
  return Profile::from_node(fold_div(a.node(), b.node()), merge_domains(a.domain(), b.domain()));
}
Profile operator-(const Profile& a) { return Profile::from_node(fold_neg(a.node()), a.domain()); }

Profile sin(const Profile& a) { return Profile::from_node(fold_unary(NodeKind::sin, a.node()), a.domain()); }
Profile cos(const Profile& a) { return Profile::from_node(fold_unary(NodeKind::cos, a.node()), a.domain()); }
Profile exp(const Profile& a) { return Profile::from_node(fold_unary(NodeKind::exp, a.node()), a.domain()); }
Profile atan(const Profile& a) { return Profile::from_node(fold_unary(NodeKind::atan, a.node()), a.domain()); }
Profile pow(const Profile& a, double exponent) {
  return Profile::from_node(fold_pow(a.node(), exponent), a.domain());
}

Profile derivative(const Profile& a) { return Profile::from_node(fold_derivative(a.node()), a.domain()); }

Profile antiderivative(const Profile& p, double r0, double c0, double tol) {
  if (!(tol > 0.0)) throw QuadratureFailure("quadrature tolerance must be positive");
  if (p.domain().bounded() && !p.domain().contains(r0))
    throw DomainError("base point outside " + p.domain().describe());

  if (auto m = p.mesh()) {
    auto idx = m->index_of(r0);
    if (!idx) throw DomainError("antiderivative of sampled data needs a mesh node as base point");
    std::vector<double> v(m->n);
    for (int i = 0; i < m->n; ++i) v[i] = ProfileEvaluator(m->node(i)).value(p);
    auto s = cumulative_integral(*m, v);
    for (auto& x : s) x += c0 - s[*idx];
    auto q = Profile::sampled(*m, std::move(s));
    auto data = std::make_shared<detail::SampledData>(*q.node()->sampled);
    data->quadrature = QuadratureMetadata{"cubic_panels", 0.0, r0, c0};
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::sampled;
    n->sampled = std::move(data);
    return Profile::from_node(n, m->domain);
  }

  if (auto c = p.constant_value(); c && *c == 0.0) return Profile::constant(c0, p.domain());
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::antiderivative;
  n->args = {p.node()};
  auto data = std::make_shared<detail::AntiderivativeData>();
  data->r0 = r0;
  data->c0 = c0;
  data->tol = tol;
  n->anti = std::move(data);
  return Profile::from_node(n, p.domain());
}

ComplexJet CProfile::jet_at(double r) const {
  ProfileEvaluator ev(r);
  const auto a = ev.jet(re), b = ev.jet(im);
  ComplexJet out;
  out.value = {a.value, b.value};
  for (int k = 0; k < kJetOrder; ++k) out.derivs[k] = {a.derivs[k], b.derivs[k]};
  return out;
}

}  // namespace g2
