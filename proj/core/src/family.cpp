#include "specgrowth/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specgrowth {

const char* to_string(MeasureRule rule) {
  return rule == MeasureRule::unit ? "unit" : "weighted-degree";
}

MeasureRule parse_measure_rule(const std::string& s) {
  if (s == "unit") return MeasureRule::unit;
  if (s == "degree" || s == "weighted-degree") return MeasureRule::weighted_degree;
  throw validation_error("unknown measure rule '" + s + "' (use unit | degree)");
}

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::antitree: return "antitree";
    case FamilyKind::tree: return "tree";
    default: return "line";
  }
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a != 0 && b > UINT64_MAX / a)
    throw resource_error(std::string("sphere size overflow in ") + what, 0, 0);
  return a * b;
}

}  // namespace

SphereProfile SphereProfile::poly(unsigned k) {
  if (k > 12) throw validation_error("poly exponent too large (max 12)");
  SphereProfile p;
  p.kind_ = Kind::poly;
  p.poly_k_ = k;
  return p;
}

SphereProfile SphereProfile::constant(std::uint64_t c) {
  if (c < 1) throw validation_error("const sphere size must be >= 1");
  SphereProfile p;
  p.kind_ = Kind::constant;
  p.const_c_ = c;
  return p;
}

SphereProfile SphereProfile::geometric(std::uint64_t a, std::uint64_t q) {
  if (a < 1 || q < 1) throw validation_error("geo profile needs a >= 1 and q >= 1");
  SphereProfile p;
  p.kind_ = Kind::geometric;
  p.geo_a_ = a;
  p.geo_q_ = q;
  return p;
}

SphereProfile SphereProfile::list(std::vector<std::uint64_t> sizes) {
  if (sizes.empty()) throw validation_error("list profile must not be empty");
  if (sizes.front() != 1) throw validation_error("list profile must start with s_0 = 1");
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] < 1) {
      std::ostringstream os;
      os << "list profile entry " << i << " must be >= 1";
      throw validation_error(os.str());
    }
  SphereProfile p;
  p.kind_ = Kind::list;
  p.items_ = std::move(sizes);
  return p;
}

SphereProfile SphereProfile::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw validation_error("sphere profile '" + text +
                           "' is not of the form poly:k | const:c | geo:a,q | list:[...]");
  std::string head = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  auto parse_u64 = [&](const std::string& s) -> std::uint64_t {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw validation_error("sphere profile '" + text + "': bad integer '" + s + "'");
    }
  };
  if (head == "poly") return poly(static_cast<unsigned>(parse_u64(rest)));
  if (head == "const") return constant(parse_u64(rest));
  if (head == "geo") {
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw validation_error("geo profile '" + text + "' needs two parameters geo:a,q");
    return geometric(parse_u64(rest.substr(0, comma)), parse_u64(rest.substr(comma + 1)));
  }
  if (head == "list") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
      throw validation_error("list profile '" + text + "' needs the form list:[1,4,9]");
    std::vector<std::uint64_t> items;
    std::string body = rest.substr(1, rest.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
      auto comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      items.push_back(parse_u64(body.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    if (items.empty()) throw validation_error("list profile '" + text + "' is empty");
    return list(std::move(items));
  }
  throw validation_error("unknown sphere profile kind '" + head + "'");
}

std::string SphereProfile::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::poly: os << "poly:" << poly_k_; break;
    case Kind::constant: os << "const:" << const_c_; break;
    case Kind::geometric: os << "geo:" << geo_a_ << "," << geo_q_; break;
    case Kind::list: {
      os << "list:[";
      for (std::size_t i = 0; i < items_.size(); ++i) os << (i ? "," : "") << items_[i];
      os << "]";
      break;
    }
  }
  return os.str();
}

std::uint32_t SphereProfile::max_radius() const {
  return static_cast<std::uint32_t>(items_.size() - 1);
}

std::uint64_t SphereProfile::size(std::uint32_t r) const {
  switch (kind_) {
    case Kind::poly: {
      std::uint64_t v = 1;
      for (unsigned i = 0; i < poly_k_; ++i) v = checked_mul(v, r + 1ull, "poly profile");
      return v;
    }
    case Kind::constant:
      return r == 0 ? 1 : const_c_;
    case Kind::geometric: {
      if (r == 0) return 1;
      std::uint64_t v = geo_a_;
      for (std::uint32_t i = 1; i < r; ++i) v = checked_mul(v, geo_q_, "geo profile");
      return v;
    }
    case Kind::list:
      return r < items_.size() ? items_[r] : 0;
  }
  return 0;
}

double SphereProfile::size_d(std::uint32_t r) const {
  switch (kind_) {
    case Kind::poly:
      return std::pow(static_cast<double>(r) + 1.0, static_cast<double>(poly_k_));
    case Kind::constant:
      return r == 0 ? 1.0 : static_cast<double>(const_c_);
    case Kind::geometric:
      if (r == 0) return 1.0;
      return static_cast<double>(geo_a_) *
             std::pow(static_cast<double>(geo_q_), static_cast<double>(r - 1));
    case Kind::list:
      return r < items_.size() ? static_cast<double>(items_[r]) : 0.0;
  }
  return 0.0;
}

Family Family::antitree(SphereProfile profile) {
  return Family(FamilyKind::antitree, std::move(profile));
}

Family Family::tree(SphereProfile profile) {
  Family f(FamilyKind::tree, std::move(profile));
  if (f.profile_.finite()) {
    for (std::uint32_t r = 1; r < f.profile_.max_radius(); ++r)
      f.children_per_vertex(r);  // throws on non-divisible profiles
  }
  return f;
}

Family Family::line() { return Family(FamilyKind::line, SphereProfile::constant(2)); }

bool Family::finite() const { return kind_ != FamilyKind::line && profile_.finite(); }

std::optional<std::uint32_t> Family::max_radius() const {
  if (!finite()) return std::nullopt;
  return profile_.max_radius();
}

std::string Family::describe() const {
  std::string s = to_string(kind_);
  if (kind_ != FamilyKind::line) s += " " + profile_.str();
  return s;
}

std::uint64_t Family::sphere_size(std::uint32_t r) const {
  if (kind_ == FamilyKind::line) return r == 0 ? 1 : 2;
  return profile_.size(r);
}

double Family::sphere_size_d(std::uint32_t r) const {
  if (kind_ == FamilyKind::line) return r == 0 ? 1.0 : 2.0;
  return profile_.size_d(r);
}

double Family::children_per_vertex(std::uint32_t r) const {
  std::uint64_t here = sphere_size(r);
  std::uint64_t next = sphere_size(r + 1);
  if (next == 0) return 0.0;
  if (here == 0 || next % here != 0) {
    std::ostringstream os;
    os << "tree profile " << profile_.str() << " is not realizable: s_" << r + 1 << " = " << next
       << " is not a multiple of s_" << r << " = " << here;
    throw validation_error(os.str());
  }
  return static_cast<double>(next / here);
}

double Family::analytic_degree(std::uint32_t r) const {
  switch (kind_) {
    case FamilyKind::line:
      return 2.0;
    case FamilyKind::antitree: {
      double below = r == 0 ? 0.0 : sphere_size_d(r - 1);
      return below + sphere_size_d(r + 1);
    }
    case FamilyKind::tree: {
      if (r == 0) return sphere_size_d(1);
      return 1.0 + children_per_vertex(r);
    }
  }
  return 0.0;
}

std::uint64_t Family::vertex_count(std::uint32_t R) const {
  std::uint64_t total = 0;
  for (std::uint32_t r = 0; r <= R; ++r) {
    std::uint64_t s = sphere_size(r);
    if (total > UINT64_MAX - s) throw resource_error("vertex count overflow", UINT64_MAX, 0);
    total += s;
  }
  return total;
}

std::uint64_t Family::edge_count(std::uint32_t R) const {
  std::uint64_t total = 0;
  for (std::uint32_t r = 0; r < R; ++r) {
    std::uint64_t a = sphere_size(r), b = sphere_size(r + 1);
    std::uint64_t step = 0;
    switch (kind_) {
      case FamilyKind::antitree: step = checked_mul(a, b, "edge count"); break;
      case FamilyKind::tree: step = b; break;
      case FamilyKind::line: step = b; break;
    }
    if (total > UINT64_MAX - step) throw resource_error("edge count overflow", 0, UINT64_MAX);
    total += step;
  }
  return total;
}

WeightedGraph Family::truncate(std::uint32_t R, MeasureRule rule,
                               std::optional<ResourceCaps> caps_opt) const {
  std::uint32_t R_eff = R;
  bool exhausted = false;
  if (finite() && R >= *max_radius()) {
    R_eff = *max_radius();
    exhausted = true;
  }
  ResourceCaps caps = caps_opt.value_or(default_caps());
  std::uint64_t nv = vertex_count(R_eff);
  std::uint64_t ne = edge_count(R_eff);
  if (nv > caps.max_vertices || ne > caps.max_edges) {
    std::ostringstream os;
    os << describe() << " truncated at R = " << R_eff << " needs " << nv << " vertices and " << ne
       << " edges, over the caps (" << caps.max_vertices << " / " << caps.max_edges << ")";
    throw resource_error(os.str(), nv, ne);
  }

  // first vertex id of each sphere
  std::vector<std::uint64_t> base(R_eff + 2, 0);
  for (std::uint32_t r = 0; r <= R_eff; ++r) base[r + 1] = base[r] + sphere_size(r);

  std::vector<Edge> edges;
  edges.reserve(ne);
  switch (kind_) {
    case FamilyKind::antitree: {
      for (std::uint32_t r = 0; r < R_eff; ++r) {
        std::uint64_t a0 = base[r], a1 = base[r + 1];
        std::uint64_t sa = sphere_size(r), sb = sphere_size(r + 1);
        for (std::uint64_t i = 0; i < sa; ++i)
          for (std::uint64_t j = 0; j < sb; ++j)
            edges.push_back({static_cast<Vertex>(a0 + i), static_cast<Vertex>(a1 + j), 1.0});
      }
      break;
    }
    case FamilyKind::tree: {
      for (std::uint32_t r = 0; r < R_eff; ++r) {
        std::uint64_t a0 = base[r], a1 = base[r + 1];
        std::uint64_t sa = sphere_size(r), sb = sphere_size(r + 1);
        std::uint64_t c = sa ? sb / sa : 0;
        if (sa * c != sb) children_per_vertex(r);  // throws with a precise message
        for (std::uint64_t i = 0; i < sa; ++i)
          for (std::uint64_t j = 0; j < c; ++j)
            edges.push_back(
                {static_cast<Vertex>(a0 + i), static_cast<Vertex>(a1 + i * c + j), 1.0});
      }
      break;
    }
    case FamilyKind::line: {
      // sphere r > 0 holds {+r, -r} in that order: +r -> 2r-1, -r -> 2r
      for (std::uint32_t r = 0; r < R_eff; ++r) {
        if (r == 0) {
          edges.push_back({0, 1, 1.0});
          edges.push_back({0, 2, 1.0});
        } else {
          edges.push_back({static_cast<Vertex>(2 * r - 1), static_cast<Vertex>(2 * r + 1), 1.0});
          edges.push_back({static_cast<Vertex>(2 * r), static_cast<Vertex>(2 * r + 2), 1.0});
        }
      }
      break;
    }
  }

  std::vector<double> measure(nv, 1.0);
  if (rule == MeasureRule::weighted_degree) {
    for (std::uint32_t r = 0; r <= R_eff; ++r) {
      double d = analytic_degree(r);
      for (std::uint64_t i = base[r]; i < base[r + 1]; ++i) measure[i] = d;
    }
  }

  BuildOptions opts;
  opts.caps = caps;
  if (!exhausted) {
    // boundary sphere keeps its infinite-graph degree via exterior weights
    double missing = 0.0;
    switch (kind_) {
      case FamilyKind::antitree: missing = sphere_size_d(R_eff + 1); break;
      case FamilyKind::tree: missing = children_per_vertex(R_eff); break;
      case FamilyKind::line: missing = 1.0; break;
    }
    opts.exterior.assign(nv, 0.0);
    for (std::uint64_t i = base[R_eff]; i < base[R_eff + 1]; ++i) {
      opts.boundary.push_back(static_cast<Vertex>(i));
      opts.exterior[i] = missing;
    }
  }
  return build_from_parts(nv, std::move(edges), std::move(measure), std::move(opts));
}

std::vector<SphereRow> Family::sphere_volumes(std::uint32_t R, MeasureRule rule) const {
  std::vector<SphereRow> rows;
  rows.reserve(R + 1);
  double count = 0.0, volume = 0.0;
  for (std::uint32_t r = 0; r <= R; ++r) {
    double s = sphere_size_d(r);
    count += s;
    volume += rule == MeasureRule::unit ? s : s * analytic_degree(r);
    rows.push_back({r, s, count, volume});
  }
  return rows;
}

}  // namespace specgrowth
