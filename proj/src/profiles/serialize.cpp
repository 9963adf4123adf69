#include "g2/profiles/serialize.hpp"

#include <cstdio>
#include <unordered_map>

#include "g2/error.hpp"

namespace g2 {

using detail::Node;
using detail::NodeKind;
using detail::NodePtr;
using nlohmann::json;

namespace {

struct KindName {
  NodeKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {NodeKind::constant, "constant"},
    {NodeKind::coordinate, "r"},
    {NodeKind::add, "add"},
    {NodeKind::sub, "sub"},
    {NodeKind::mul, "mul"},
    {NodeKind::div, "div"},
    {NodeKind::neg, "neg"},
    {NodeKind::sin, "sin"},
    {NodeKind::cos, "cos"},
    {NodeKind::exp, "exp"},
    {NodeKind::atan, "atan"},
    {NodeKind::pow, "pow"},
    {NodeKind::derivative, "derivative"},
    {NodeKind::antiderivative, "antiderivative"},
    {NodeKind::sampled, "sampled"},
};

const char* kind_name(NodeKind k) {
  for (const auto& e : kKindNames)
    if (e.kind == k) return e.name;
  return "?";
}

NodeKind kind_from_name(const std::string& s) {
  for (const auto& e : kKindNames)
    if (s == e.name) return e.kind;
  throw ParseError("unknown profile node type '" + s + "'");
}

json node_to_json(const Node& n) {
  json j;
  j["type"] = kind_name(n.kind);
  switch (n.kind) {
    case NodeKind::constant: j["value"] = n.value; break;
    case NodeKind::pow: j["exponent"] = n.value; break;
    case NodeKind::antiderivative:
      j["r0"] = n.anti->r0;
      j["c0"] = n.anti->c0;
      j["tol"] = n.anti->tol;
      j["rule"] = "adaptive_simpson";
      break;
    case NodeKind::sampled:
      j["mesh"] = {{"domain", domain_to_json(n.sampled->mesh.domain)}, {"n", n.sampled->mesh.n}};
      j["values"] = n.sampled->values;
      j["accuracy"] = n.sampled->fd.accuracy();
      if (!n.sampled->jets.empty()) j["jets"] = n.sampled->jets;
      break;
    default: break;
  }
  if (!n.args.empty()) {
    json children = json::array();
    for (const auto& c : n.args) children.push_back(node_to_json(*c));
    j["children"] = std::move(children);
  }
  return j;
}

Profile node_from_json(const json& j) {
  const auto kind = kind_from_name(j.at("type").get<std::string>());
  std::vector<Profile> kids;
  if (j.contains("children"))
    for (const auto& c : j.at("children")) kids.push_back(node_from_json(c));
  auto need = [&](std::size_t n) {
    if (kids.size() != n)
      throw ParseError(std::string("node '") + kind_name(kind) + "' expects " + std::to_string(n) + " children");
  };
  switch (kind) {
    case NodeKind::constant: need(0); return Profile(j.at("value").get<double>());
    case NodeKind::coordinate: need(0); return Profile::coordinate();
    case NodeKind::add: need(2); return kids[0] + kids[1];
    case NodeKind::sub: need(2); return kids[0] - kids[1];
    case NodeKind::mul: need(2); return kids[0] * kids[1];
    case NodeKind::div: need(2); return kids[0] / kids[1];
    case NodeKind::neg: need(1); return -kids[0];
    case NodeKind::sin: need(1); return sin(kids[0]);
    case NodeKind::cos: need(1); return cos(kids[0]);
    case NodeKind::exp: need(1); return exp(kids[0]);
    case NodeKind::atan: need(1); return atan(kids[0]);
    case NodeKind::pow: need(1); return pow(kids[0], j.at("exponent").get<double>());
    case NodeKind::derivative: need(1); return derivative(kids[0]);
    case NodeKind::antiderivative:
      need(1);
      return antiderivative(kids[0], j.at("r0").get<double>(), j.at("c0").get<double>(),
                            j.value("tol", kDefaultQuadratureTol));
    case NodeKind::sampled: {
      need(0);
      const auto& m = j.at("mesh");
      auto mesh = Mesh::uniform(domain_from_json(m.at("domain")), m.at("n").get<int>());
      if (j.contains("jets")) return Profile::sampled_jets(mesh, j.at("jets").get<std::vector<std::array<double, 5>>>());
      return Profile::sampled(mesh, j.at("values").get<std::vector<double>>(), j.value("accuracy", 4));
    }
  }
  throw ParseError("unreachable profile node");
}

}  // namespace

json domain_to_json(const Domain& d) {
  switch (d.kind) {
    case Domain::Kind::line: return {{"kind", "line"}};
    case Domain::Kind::circle: return {{"kind", "circle"}, {"period", d.period()}};
    case Domain::Kind::interval: return {{"kind", "interval"}, {"r0", d.r0}, {"r1", d.r1}};
  }
  return {};
}

Domain domain_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "line") return Domain::line();
  if (kind == "circle") return Domain::circle(j.at("period").get<double>());
  if (kind == "interval") return Domain::interval(j.at("r0").get<double>(), j.at("r1").get<double>());
  throw ParseError("unknown domain kind '" + kind + "'");
}

json profile_to_json(const Profile& p) {
  return {{"domain", domain_to_json(p.domain())}, {"expr", node_to_json(*p.node())}};
}

Profile profile_from_json(const json& j) {
  try {
    auto p = node_from_json(j.at("expr"));
    return p.on(j.contains("domain") ? domain_from_json(j.at("domain")) : Domain::line());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed profile JSON: ") + e.what());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_profile_csv(std::ostream& os, const Profile& p, std::span<const double> points) {
  os << "r,value,d1,d2,d3,d4\n";
  for (double r : points) {
    const auto j = p.jet_at(r);
    os << format_double(r);
    for (int k = 0; k <= kJetOrder; ++k) os << ',' << format_double(j[k]);
    os << '\n';
  }
}

}  // namespace g2
