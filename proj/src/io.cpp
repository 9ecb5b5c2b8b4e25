#include "pcmk/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace pcmk {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(Errc::InvalidInput, path + ": " + msg);
}

// JSON node paired with its location for diagnostics.
struct Node {
  const Json& j;
  std::string path;

  Node at(const char* key) const { return {j.at(key), path + "." + key}; }
  Node at(std::size_t i) const { return {j.at(i), path + "[" + std::to_string(i) + "]"}; }
  bool has(const char* key) const { return j.contains(key); }

  const Node& object(std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool known = false;
      for (const char* k : allowed) known = known || it.key() == k;
      if (!known) fail(path + "." + it.key(), "unknown key");
    }
    return *this;
  }

  std::size_t array_size() const {
    if (!j.is_array()) fail(path, "expected an array");
    return j.size();
  }

  double number() const {
    if (!j.is_number()) fail(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(path, "expected a finite number");
    return x;
  }

  long long integer() const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
  }

  std::string string() const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  Vec vector(int dim) const {
    const std::size_t k = array_size();
    if (static_cast<int>(k) != dim) fail(path, "expected " + std::to_string(dim) + " components");
    Vec v(dim);
    for (std::size_t i = 0; i < k; ++i) v[static_cast<Eigen::Index>(i)] = at(i).number();
    return v;
  }

  Vec unit(int dim) const {
    const Vec v = vector(dim);
    if (!(v.norm() > 0.0)) fail(path, "zero vector");
    return unit_vector(v);
  }

  std::vector<Vec> vectors(int dim) const {
    std::vector<Vec> out;
    for (std::size_t i = 0, k = array_size(); i < k; ++i) out.push_back(at(i).vector(dim));
    return out;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::size_t i = 0, k = array_size(); i < k; ++i) {
      const long long x = at(i).integer();
      if (x < 0) fail(at(i).path, "index must be non-negative");
      out.push_back(static_cast<int>(x));
    }
    return out;
  }
};

ConePtr parse_cone(const Node& c) {
  if (c.j.is_string()) {
    const std::string name = c.string();
    if (name == "Q2") return share(quadrant_cone());
    if (name == "O3") return share(square_pyramid_cone());
    fail(c.path, "unknown preset '" + name + "' (expected Q2 or O3 or an object)");
  }
  c.object({"dim", "facet_normals", "rays", "v_frak"});
  const long long dim = c.at("dim").integer();
  if (dim < 2 || dim > 16) fail(c.path + ".dim", "dimension must lie in [2, 16]");
  const int n = static_cast<int>(dim);
  if (c.has("facet_normals") == c.has("rays")) fail(c.path, "give exactly one of facet_normals and rays");
  std::optional<Vec> v;
  if (c.has("v_frak")) v = c.at("v_frak").vector(n);
  try {
    if (c.has("rays")) return share(make_cone_from_rays(n, c.at("rays").vectors(n), v));
    return share(make_cone_from_normals(n, c.at("facet_normals").vectors(n), v));
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidInput) throw;
    fail(c.path, e.what());
  }
}

void parse_quadrature(const Node& q, QuadratureConfig& cfg) {
  q.object({"tolerance", "max_depth", "gauss_order"});
  if (q.has("tolerance")) cfg.tolerance = q.at("tolerance").number();
  if (q.has("max_depth")) cfg.max_depth = static_cast<int>(q.at("max_depth").integer());
  if (q.has("gauss_order")) cfg.gauss_order = static_cast<int>(q.at("gauss_order").integer());
}

void parse_solver(const Node& s, SolverOptions& o) {
  s.object({"tolerance", "max_iterations", "armijo_slope", "backtrack", "restart_jitter", "max_restarts", "seed"});
  if (s.has("tolerance")) o.tolerance = s.at("tolerance").number();
  if (s.has("max_iterations")) o.max_iterations = static_cast<int>(s.at("max_iterations").integer());
  if (s.has("armijo_slope")) o.armijo_slope = s.at("armijo_slope").number();
  if (s.has("backtrack")) o.backtrack = s.at("backtrack").number();
  if (s.has("restart_jitter")) o.restart_jitter = s.at("restart_jitter").number();
  if (s.has("max_restarts")) o.max_restarts = static_cast<int>(s.at("max_restarts").integer());
  if (s.has("seed")) {
    const long long seed = s.at("seed").integer();
    if (seed < 0) fail(s.path + ".seed", "seed must be non-negative");
    o.seed = static_cast<std::uint64_t>(seed);
  }
}

Problem parse_root(const Node& root) {
  root.object({"version", "cone", "weight", "measure", "body", "solver", "quadrature", "verify"});
  if (!root.has("version")) fail(root.path, "missing version");
  if (root.at("version").string() != "1") fail(root.path + ".version", "unsupported version (expected \"1\")");
  if (!root.has("cone")) fail(root.path, "missing cone");

  Problem p;
  p.cone = parse_cone(root.at("cone"));
  const int n = p.cone->dim();
  p.solver = SolverOptions::defaults_for(n);

  if (root.has("weight")) {
    const Node w = root.at("weight");
    w.object({"kind", "q"});
    WeightSpec ws;
    try {
      ws.kind = weight_kind_from_string(w.at("kind").string());
    } catch (const Error& e) {
      fail(w.path + ".kind", e.what());
    }
    ws.q = w.at("q").number();
    p.weight = ws;
  }

  if (root.has("measure")) {
    const Node m = root.at("measure");
    for (std::size_t i = 0, k = m.array_size(); i < k; ++i) {
      const Node a = m.at(i);
      a.object({"direction", "mass"});
      p.measure.push_back({a.at("direction").unit(n), a.at("mass").number()});
    }
    // Validates masses, interior and distinctness with a located message.
    try {
      DirectionalMeasure(*p.cone, p.measure);
    } catch (const Error& e) {
      fail(m.path, e.what());
    }
  }

  if (root.has("body")) {
    const Node b = root.at("body");
    b.object({"directions", "support_numbers"});
    BodySpec bs;
    const Node d = b.at("directions");
    for (std::size_t i = 0, k = d.array_size(); i < k; ++i) bs.directions.push_back(d.at(i).unit(n));
    const Node h = b.at("support_numbers");
    for (std::size_t i = 0, k = h.array_size(); i < k; ++i) bs.support.push_back(h.at(i).number());
    if (bs.support.size() != bs.directions.size()) fail(b.path, "directions and support_numbers differ in length");
    try {
      PseudoCone(p.cone, bs.directions, bs.support);
    } catch (const Error& e) {
      fail(b.path, e.what());
    }
    p.body = std::move(bs);
  }

  if (root.has("solver")) parse_solver(root.at("solver"), p.solver);
  if (root.has("quadrature")) parse_quadrature(root.at("quadrature"), p.solver.quadrature);
  try {
    p.solver.validate();
  } catch (const Error& e) {
    fail(root.has("quadrature") ? root.path + ".quadrature" : root.path + ".solver", e.what());
  }

  if (root.has("verify")) {
    const Node v = root.at("verify");
    v.object({"omega", "beta"});
    Lemma72Spec s;
    s.omega = v.at("omega").indices();
    s.beta = v.at("beta").indices();
    p.lemma72 = std::move(s);
  }
  return p;
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void write_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void write_json(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      write_double(out, j.get<double>());
      return;
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write_json(out, it.value(), indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays (coordinates) stay on one line.
      const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_json(out, j[i], indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_json(out, j[i], indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

WeightFunction Problem::weight_function() const {
  if (!weight) throw Error(Errc::InvalidInput, "problem has no weight section");
  return WeightFunction(weight->kind, weight->q, cone);
}

DirectionalMeasure Problem::directional_measure() const {
  if (measure.empty()) throw Error(Errc::InvalidInput, "problem has no measure section");
  return DirectionalMeasure(*cone, measure);
}

PseudoCone Problem::pseudo_cone(bool tightened) const {
  if (!body) throw Error(Errc::InvalidInput, "problem has no body section");
  return PseudoCone(cone, body->directions, body->support, tightened);
}

Json Problem::to_json() const {
  Json j;
  j["version"] = "1";
  Json c;
  c["dim"] = cone->dim();
  c["rays"] = vec_list_json(cone->rays());
  c["v_frak"] = vec_json(cone->v_frak());
  j["cone"] = std::move(c);
  if (weight) j["weight"] = Json{{"kind", to_string(weight->kind)}, {"q", weight->q}};
  if (!measure.empty()) {
    Json m = Json::array();
    for (const Atom& a : measure) m.push_back(Json{{"direction", vec_json(a.direction)}, {"mass", a.mass}});
    j["measure"] = std::move(m);
  }
  if (body) {
    j["body"] = Json{{"directions", vec_list_json(body->directions)}, {"support_numbers", doubles_json(body->support)}};
  }
  j["solver"] = Json{{"tolerance", solver.tolerance},
                     {"max_iterations", solver.max_iterations},
                     {"armijo_slope", solver.armijo_slope},
                     {"backtrack", solver.backtrack},
                     {"restart_jitter", solver.restart_jitter},
                     {"max_restarts", solver.max_restarts},
                     {"seed", solver.seed}};
  j["quadrature"] = Json{{"tolerance", solver.quadrature.tolerance},
                         {"max_depth", solver.quadrature.max_depth},
                         {"gauss_order", solver.quadrature.gauss_order}};
  if (lemma72) j["verify"] = Json{{"omega", lemma72->omega}, {"beta", lemma72->beta}};
  return j;
}

Problem parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    // Keep only the part after nlohmann's own location prefix.
    const auto pos = what.find(": ", what.find("parse error"));
    if (pos != std::string::npos) what = what.substr(pos + 2);
    throw Error(Errc::InvalidInput,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
  try {
    if (j.is_object() && j.contains("problem") && !j.contains("cone")) return parse_root({j.at("problem"), "$.problem"});
    return parse_root({j, "$"});
  } catch (const Json::exception& e) {
    // Missing keys and similar lookups that escaped the typed accessors.
    throw Error(Errc::InvalidInput, e.what());
  }
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string dump_json(const Json& j) {
  std::string out;
  write_json(out, j, 0);
  out += "\n";
  return out;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json vec_list_json(const std::vector<Vec>& vs) {
  Json a = Json::array();
  for (const Vec& v : vs) a.push_back(vec_json(v));
  return a;
}

Json doubles_json(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

std::vector<Vec> boundary_chain(const Cone& cone, const TruncatedBody& body) {
  if (cone.dim() != 2) throw Error(Errc::UnsupportedDimension, "boundary chains are planar");
  const Vec& r1 = cone.rays()[0];
  const Vec perp = Vec{{-r1[1], r1[0]}};  // counter-clockwise, towards the second ray
  struct Item {
    Vec p;
    double angle;
    double norm;
  };
  std::vector<Item> items;
  // Every vertex of a planar truncation lies on ∂K; the cap edge joins the
  // two ends of the chain.
  for (const Vec& p : body.vertices) {
    items.push_back({p, std::atan2(p.dot(perp), p.dot(r1)), p.norm()});
  }
  const double angle_tol = 1e-12;
  std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    if (std::abs(a.angle - b.angle) > angle_tol) return a.angle < b.angle;
    // On the first ray the chain runs inwards, elsewhere outwards.
    if (std::abs(a.angle) <= angle_tol) return a.norm > b.norm;
    return a.norm < b.norm;
  });
  std::vector<Vec> out;
  for (Item& it : items) out.push_back(std::move(it.p));
  return out;
}

std::string svg_overlay(const Cone& cone, const std::vector<TruncatedBody>& bodies, double t) {
  if (cone.dim() != 2) throw Error(Errc::UnsupportedDimension, "SVG output is planar");
  const std::vector<Vec> cap = cone.cross_section(t);
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  for (const Vec& p : cap) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  const double size = 480.0, margin = 10.0;
  const double scale = size / std::max(xmax - xmin, ymax - ymin);
  auto px = [&](const Vec& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", margin + (p[0] - xmin) * scale, margin + (ymax - p[1]) * scale);
    return std::string(buf);
  };
  const int w = static_cast<int>(std::ceil((xmax - xmin) * scale + 2 * margin));
  const int h = static_cast<int>(std::ceil((ymax - ymin) * scale + 2 * margin));
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
    << ' ' << h << "\">\n";
  s << "  <path d=\"M " << px(cap[0]) << " L " << px(Vec::Zero(2)) << " L " << px(cap[1])
    << "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    s << "  <polyline fill=\"none\" stroke=\"" << colors[b % 4] << "\" stroke-width=\"2\" points=\"";
    const std::vector<Vec> chain = boundary_chain(cone, bodies[b]);
    for (std::size_t i = 0; i < chain.size(); ++i) s << (i ? " " : "") << px(chain[i]);
    s << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace pcmk
