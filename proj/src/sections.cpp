#include "ballconfig/sections.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ballconfig {

Configuration forget_point(const Configuration& c) {
  return c.without_front();
}

Configuration midpoint_section(const Configuration& c) {
  if (c.size() != 2) throw std::invalid_argument("midpoint_section: requires exactly 2 points");
  return c.with_prepended(0.5 * (c[0] + c[1]));
}

Configuration add_near_section(const Configuration& c, std::size_t anchor, std::size_t toward) {
  if (c.size() < 2) throw std::invalid_argument("add_near_section: requires n >= 2");
  if (anchor == toward || anchor >= c.size() || toward >= c.size()) {
    throw std::invalid_argument("add_near_section: anchor and toward must be distinct valid slots");
  }
  const double d = nearest_neighbor_distance(c, anchor);
  const Point v = c[toward] - c[anchor];
  return c.with_prepended(c[anchor] + (d / (2.0 * v.norm())) * v);
}

Configuration biased_interpolation_section(const Configuration& c, double alpha) {
  if (c.size() != 2) throw std::invalid_argument("biased_interpolation_section: requires exactly 2 points");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("biased_interpolation_section: alpha must lie strictly inside (0, 1)");
  }
  return c.with_prepended((1.0 - alpha) * c[0] + alpha * c[1]);
}

SectionDescriptor SectionDescriptor::midpoint() {
  SectionDescriptor s;
  s.kind = SectionKind::Midpoint;
  return s;
}

SectionDescriptor SectionDescriptor::add_near(std::size_t anchor, std::size_t toward) {
  if (anchor == toward) throw std::invalid_argument("add_near: anchor and toward must differ");
  SectionDescriptor s;
  s.kind = SectionKind::AddNear;
  s.anchor = anchor;
  s.toward = toward;
  return s;
}

SectionDescriptor SectionDescriptor::biased(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("biased: alpha must lie strictly inside (0, 1)");
  }
  SectionDescriptor s;
  s.kind = SectionKind::BiasedInterpolation;
  s.alpha = alpha;
  return s;
}

SectionDescriptor SectionDescriptor::registered(std::string name) {
  SectionDescriptor s;
  s.kind = SectionKind::Registered;
  s.name = std::move(name);
  return s;
}

SectionDescriptor SectionDescriptor::parse(const std::string& text) {
  if (text == "midpoint") return midpoint();
  if (text.rfind("add-near:", 0) == 0) {
    const std::string body = text.substr(9);
    const auto comma = body.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("section 'add-near' expects two 1-based labels: add-near:i,j");
    }
    long i = 0;
    long j = 0;
    try {
      i = std::stol(body.substr(0, comma));
      j = std::stol(body.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("section 'add-near' expects integer labels: add-near:i,j");
    }
    if (i < 1 || j < 1 || i == j) {
      throw std::invalid_argument("section 'add-near' labels are distinct and 1-based");
    }
    return add_near(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  }
  if (text.rfind("biased:", 0) == 0) {
    double alpha = 0.0;
    try {
      alpha = std::stod(text.substr(7));
    } catch (const std::exception&) {
      throw std::invalid_argument("section 'biased' expects a weight: biased:alpha");
    }
    return biased(alpha);
  }
  return registered(text);
}

std::string SectionDescriptor::describe() const {
  std::ostringstream os;
  switch (kind) {
    case SectionKind::Midpoint:
      return "midpoint";
    case SectionKind::AddNear:
      os << "add-near:" << anchor + 1 << "," << toward + 1;
      return os.str();
    case SectionKind::BiasedInterpolation:
      os << "biased:" << alpha;
      return os.str();
    case SectionKind::Registered:
      return name;
  }
  return "?";
}

bool SectionDescriptor::applicable(std::size_t n) const {
  switch (kind) {
    case SectionKind::Midpoint:
    case SectionKind::BiasedInterpolation:
      return n == 2;
    case SectionKind::AddNear:
      return n >= 2 && anchor < n && toward < n && anchor != toward;
    case SectionKind::Registered:
      return n >= 1;
  }
  return false;
}

bool SectionDescriptor::declared_equivariant() const {
  switch (kind) {
    case SectionKind::Midpoint:
      return true;
    case SectionKind::AddNear:
    case SectionKind::BiasedInterpolation:
      return false;
    case SectionKind::Registered:
      return SectionRegistry::global().contains(name) && SectionRegistry::global().at(name).equivariant;
  }
  return false;
}

namespace {

Point centroid_of(const Configuration& c) {
  Point sum = Point::Zero(c.dim());
  for (const Point& p : c.points()) sum += p;
  return sum / static_cast<double>(c.size());
}

}  // namespace

SectionRegistry& SectionRegistry::global() {
  static SectionRegistry* reg = [] {
    auto* r = new SectionRegistry();
    // Symmetric candidate rules for n >= 3 obstruction runs. None of them is a
    // valid section; each must fail by collision or by the winding identity.
    r->add("centroid", [](const Configuration& c) { return centroid_of(c); }, true);
    r->add("half-centroid", [](const Configuration& c) { return Point(0.5 * centroid_of(c)); }, true);
    r->add("negated-centroid", [](const Configuration& c) { return Point(-centroid_of(c)); }, true);
    return r;
  }();
  return *reg;
}

void SectionRegistry::add(const std::string& name, SectionFn fn, bool equivariant) {
  if (name.empty()) throw std::invalid_argument("SectionRegistry: empty name");
  entries_[name] = Entry{std::move(fn), equivariant};
}

bool SectionRegistry::contains(const std::string& name) const {
  return entries_.count(name) > 0;
}

const SectionRegistry::Entry& SectionRegistry::at(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    std::ostringstream os;
    os << "unknown registered section '" << name << "'; known:";
    for (const auto& [key, _] : entries_) os << " " << key;
    throw std::invalid_argument(os.str());
  }
  return it->second;
}

std::vector<std::string> SectionRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [key, _] : entries_) out.push_back(key);
  return out;
}

Point added_point(const SectionDescriptor& s, const Configuration& c) {
  switch (s.kind) {
    case SectionKind::Midpoint:
      if (c.size() != 2) throw std::invalid_argument("midpoint: requires exactly 2 points");
      return 0.5 * (c[0] + c[1]);
    case SectionKind::AddNear: {
      if (!s.applicable(c.size())) throw std::invalid_argument("add-near: slots out of range");
      const double d = nearest_neighbor_distance(c, s.anchor);
      const Point v = c[s.toward] - c[s.anchor];
      return c[s.anchor] + (d / (2.0 * v.norm())) * v;
    }
    case SectionKind::BiasedInterpolation:
      if (c.size() != 2) throw std::invalid_argument("biased: requires exactly 2 points");
      return (1.0 - s.alpha) * c[0] + s.alpha * c[1];
    case SectionKind::Registered: {
      Point p = SectionRegistry::global().at(s.name).fn(c);
      if (p.size() != c.dim() || !p.allFinite()) {
        throw std::runtime_error("registered section '" + s.name + "' returned a malformed point");
      }
      return p;
    }
  }
  throw std::logic_error("added_point: unhandled section kind");
}

Configuration apply_section(const SectionDescriptor& s, const Configuration& c) {
  return c.with_prepended(added_point(s, c));
}

bool SectionCheckReport::passed() const {
  return samples_run > 0 && section_property_violations == 0 && equivariance_violations == 0 &&
         worst_gap > gap_eps && worst_containment_excess <= ball_eps;
}

SectionCheckReport verify_section(const SectionDescriptor& s, std::size_t n, Eigen::Index m,
                                  const SectionCheckOptions& opts) {
  if (!s.applicable(n)) {
    throw std::invalid_argument("verify_section: '" + s.describe() + "' is not applicable to n = " +
                                std::to_string(n));
  }
  if (s.kind == SectionKind::Registered) SectionRegistry::global().at(s.name);  // resolvable up front
  if (opts.samples < 1) throw std::invalid_argument("verify_section: need at least one sample");

  SectionCheckReport rep;
  rep.section = s.describe();
  rep.n = n;
  rep.m = m;
  rep.gap_eps = opts.gap_eps;
  rep.ball_eps = opts.ball_eps;
  rep.worst_gap = std::numeric_limits<double>::infinity();

  const bool check_eq = opts.equivariance == SectionCheckOptions::Equivariance::On ||
                        (opts.equivariance == SectionCheckOptions::Equivariance::Auto &&
                         s.declared_equivariant());
  rep.equivariance_checked = check_eq;

  Rng rng(opts.seed);
  for (std::size_t k = 0; k < opts.samples; ++k) {
    const Configuration c = sample_configuration(rng, n, m);
    ++rep.samples_run;

    bool bad = false;
    bool have_aug = false;
    Configuration aug = c;  // placeholder; overwritten below on success
    try {
      aug = apply_section(s, c);
      have_aug = true;
    } catch (const std::exception&) {
      bad = true;
    }

    if (have_aug) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!bits_equal(aug[i + 1], c[i])) {
          bad = true;
          break;
        }
      }
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) gap = std::min(gap, (aug[0] - c[i]).norm());
      const double excess = std::max(0.0, aug[0].norm() - 1.0);
      rep.worst_gap = std::min(rep.worst_gap, gap);
      rep.worst_containment_excess = std::max(rep.worst_containment_excess, excess);
      if (gap <= opts.gap_eps || excess > opts.ball_eps) bad = true;
    }

    if (bad) {
      ++rep.section_property_violations;
      if (rep.section_witnesses.size() < opts.max_witnesses) rep.section_witnesses.push_back(c);
    }

    if (check_eq && have_aug) {
      Permutation sigma = rng.permutation(n);
      for (int tries = 0; n >= 2 && is_identity(sigma) && tries < 16; ++tries) {
        sigma = rng.permutation(n);
      }
      bool eq_bad = false;
      double dev = 0.0;
      try {
        const Configuration lhs = apply_section(s, apply_permutation(c, sigma));
        const Configuration rhs = apply_permutation(forget_point(aug), sigma).with_prepended(aug[0]);
        dev = canonical_distance(lhs, rhs);
        eq_bad = dev > opts.equivariance_tol;
      } catch (const std::exception&) {
        eq_bad = true;
      }
      rep.worst_equivariance_deviation = std::max(rep.worst_equivariance_deviation, dev);
      if (eq_bad) {
        ++rep.equivariance_violations;
        if (rep.equivariance_witnesses.size() < opts.max_witnesses) rep.equivariance_witnesses.push_back(c);
      }
    }
  }
  return rep;
}

}  // namespace ballconfig
