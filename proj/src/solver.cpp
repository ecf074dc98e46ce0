#include "ballconfig/solver.hpp"

#include "ballconfig/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ballconfig {

PointMapDescriptor PointMapDescriptor::constant(Point q) {
  if (!in_unit_ball(q, 0.0)) throw std::invalid_argument("constant map: target must lie in the closed ball");
  PointMapDescriptor f;
  f.kind = PointMapKind::Constant;
  f.target = std::move(q);
  return f;
}

PointMapDescriptor PointMapDescriptor::centroid() {
  PointMapDescriptor f;
  f.kind = PointMapKind::Centroid;
  return f;
}

PointMapDescriptor PointMapDescriptor::contraction(double alpha, Point q) {
  if (!(alpha >= 0.0) || !(alpha < 1.0)) throw std::invalid_argument("contraction: alpha must lie in [0, 1)");
  if (!in_unit_ball(q, 0.0)) throw std::invalid_argument("contraction: target must lie in the closed ball");
  PointMapDescriptor f;
  f.kind = PointMapKind::Contraction;
  f.alpha = alpha;
  f.target = std::move(q);
  return f;
}

PointMapDescriptor PointMapDescriptor::registered(std::string name) {
  PointMapDescriptor f;
  f.kind = PointMapKind::Registered;
  f.name = std::move(name);
  f.declared_symmetric = PointMapRegistry::global().contains(f.name)
                             ? PointMapRegistry::global().at(f.name).symmetric
                             : true;
  return f;
}

namespace {

Point parse_coords(const std::string& body, Eigen::Index m, const std::string& what) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t next = body.find(',', pos);
    const std::string token = body.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw std::invalid_argument(what + ": bad coordinate '" + token + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (static_cast<Eigen::Index>(values.size()) != m) {
    std::ostringstream os;
    os << what << ": expected " << m << " coordinates, got " << values.size();
    throw std::invalid_argument(os.str());
  }
  Point p(m);
  for (Eigen::Index k = 0; k < m; ++k) p[k] = values[static_cast<std::size_t>(k)];
  return p;
}

}  // namespace

PointMapDescriptor PointMapDescriptor::parse(const std::string& text, Eigen::Index m) {
  if (text == "centroid") return centroid();
  if (text.rfind("constant:", 0) == 0) {
    return constant(parse_coords(text.substr(9), m, "map 'constant'"));
  }
  if (text.rfind("contraction:", 0) == 0) {
    const std::string body = text.substr(12);
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("map 'contraction' expects contraction:alpha,x,...");
    }
    double alpha = 0.0;
    try {
      alpha = std::stod(body.substr(0, comma));
    } catch (const std::exception&) {
      throw std::invalid_argument("map 'contraction' expects a numeric alpha");
    }
    return contraction(alpha, parse_coords(body.substr(comma + 1), m, "map 'contraction'"));
  }
  return registered(text);
}

std::string PointMapDescriptor::describe() const {
  std::ostringstream os;
  switch (kind) {
    case PointMapKind::Centroid:
      return "centroid";
    case PointMapKind::Constant:
      os << "constant:";
      for (Eigen::Index k = 0; k < target.size(); ++k) os << (k ? "," : "") << target[k];
      return os.str();
    case PointMapKind::Contraction:
      os << "contraction:" << alpha;
      for (Eigen::Index k = 0; k < target.size(); ++k) os << "," << target[k];
      return os.str();
    case PointMapKind::Registered:
      return name;
  }
  return "?";
}

PointMapRegistry& PointMapRegistry::global() {
  static PointMapRegistry* reg = [] {
    auto* r = new PointMapRegistry();
    // Asymmetric fixture: depends on the ordering, so the symmetry check must
    // flag it.
    r->add("first-point", [](const Configuration& c) { return c[0]; }, false);
    return r;
  }();
  return *reg;
}

void PointMapRegistry::add(const std::string& name, PointMapFn fn, bool symmetric) {
  if (name.empty()) throw std::invalid_argument("PointMapRegistry: empty name");
  entries_[name] = Entry{std::move(fn), symmetric};
}

bool PointMapRegistry::contains(const std::string& name) const { return entries_.count(name) > 0; }

const PointMapRegistry::Entry& PointMapRegistry::at(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw std::invalid_argument("unknown registered point map '" + name + "'");
  }
  return it->second;
}

namespace {

Point centroid_of(const Configuration& c) {
  Point sum = Point::Zero(c.dim());
  for (const Point& p : c.points()) sum += p;
  return sum / static_cast<double>(c.size());
}

Point raw_evaluate(const PointMapDescriptor& f, const Configuration& c) {
  switch (f.kind) {
    case PointMapKind::Constant:
      return f.target;
    case PointMapKind::Centroid:
      return centroid_of(c);
    case PointMapKind::Contraction:
      return f.alpha * centroid_of(c) + (1.0 - f.alpha) * f.target;
    case PointMapKind::Registered:
      return PointMapRegistry::global().at(f.name).fn(c);
  }
  throw std::logic_error("raw_evaluate: unhandled map kind");
}

}  // namespace

Point evaluate_point_map(const PointMapDescriptor& f, const Configuration& c) {
  Point q = raw_evaluate(f, c);
  if (q.size() != c.dim() || !q.allFinite()) {
    throw std::domain_error("point map '" + f.describe() + "' returned a malformed point");
  }
  if (!in_unit_ball(q)) {
    throw std::domain_error("point map '" + f.describe() + "' left the closed ball");
  }
  return q;
}

double residual(const PointMapDescriptor& f, const Configuration& c) {
  const Point q = evaluate_point_map(f, c);
  double best = std::numeric_limits<double>::infinity();
  for (const Point& p : c.points()) best = std::min(best, (q - p).norm());
  return best;
}

std::size_t nearest_slot(const PointMapDescriptor& f, const Configuration& c) {
  const Point q = evaluate_point_map(f, c);
  double best = std::numeric_limits<double>::infinity();
  std::size_t slot = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double d = (q - c[i]).norm();
    if (d < best) {
      best = d;
      slot = i;
    }
  }
  return slot;
}

namespace {

using Flat = Eigen::VectorXd;

Configuration decode(const Flat& x, std::size_t n, Eigen::Index m) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p = x.segment(static_cast<Eigen::Index>(i) * m, m);
    const double nrm = p.norm();
    if (nrm > 1.0) p /= nrm;  // radial projection onto the closed ball
    pts.push_back(std::move(p));
  }
  return Configuration(m, std::move(pts));
}

Flat flatten(const Configuration& c) {
  Flat x(static_cast<Eigen::Index>(c.size()) * c.dim());
  for (std::size_t i = 0; i < c.size(); ++i) {
    x.segment(static_cast<Eigen::Index>(i) * c.dim(), c.dim()) = c[i];
  }
  return x;
}

bool gap_ok(const Configuration& c, double min_gap) {
  return c.size() < 2 || min_pairwise_gap(c) >= min_gap;
}

}  // namespace

FixedSearchResult find_fixed_configuration(const PointMapDescriptor& f, std::size_t n,
                                           Eigen::Index m, const FixedSearchOptions& opts) {
  if (n < 1 || m < 1) throw std::invalid_argument("find_fixed_configuration: need n >= 1 and m >= 1");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("find_fixed_configuration: tol must be positive");
  if (opts.restarts < 1 || opts.budget < 1) {
    throw std::invalid_argument("find_fixed_configuration: need restarts >= 1 and budget >= 1");
  }

  const Eigen::Index dim = static_cast<Eigen::Index>(n) * m;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::size_t evaluations = 0;
  auto objective = [&](const Flat& x) -> double {
    ++evaluations;
    const Configuration c = decode(x, n, m);
    if (!gap_ok(c, opts.min_gap)) return kInf;
    return residual(f, c);
  };

  Rng rng(opts.seed);
  double best_value = kInf;
  Flat best_x = Flat::Zero(dim);
  std::size_t restarts_used = 0;

  const std::size_t slice = std::max<std::size_t>(1, opts.budget / opts.restarts);

  for (std::size_t restart = 0; restart < opts.restarts && evaluations < opts.budget; ++restart) {
    ++restarts_used;
    const std::size_t slice_end = std::min(opts.budget, evaluations + slice);

    // Initial simplex around a valid sampled configuration.
    const double start_gap = std::max(opts.min_gap, kSampleGap);
    const Flat x0 = flatten(sample_configuration(rng, n, m, start_gap));
    const double step = 0.1;

    std::vector<Flat> simplex;
    std::vector<double> value;
    simplex.reserve(static_cast<std::size_t>(dim) + 1);
    simplex.push_back(x0);
    value.push_back(objective(x0));
    // Maps whose residual is already below tol (the single-point centroid, for
    // one) converge on the first evaluation.
    for (Eigen::Index k = 0; value[0] >= opts.tol && k < dim && evaluations < slice_end; ++k) {
      Flat xk = x0;
      xk[k] += step;
      simplex.push_back(xk);
      value.push_back(objective(xk));
    }

    std::vector<std::size_t> order(simplex.size());
    std::iota(order.begin(), order.end(), 0);
    auto sort_order = [&] {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    };

    while (evaluations < slice_end && simplex.size() == static_cast<std::size_t>(dim) + 1) {
      sort_order();
      const std::size_t ibest = order.front();
      const std::size_t iworst = order.back();
      const std::size_t isecond = order[order.size() - 2];
      if (std::isfinite(value[iworst]) && value[iworst] - value[ibest] <= 1e-14) break;

      Flat centroid = Flat::Zero(dim);
      for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += simplex[order[i]];
      centroid /= static_cast<double>(order.size() - 1);

      const Flat reflected = centroid + (centroid - simplex[iworst]);
      const double fr = objective(reflected);
      if (fr < value[ibest]) {
        const Flat expanded = centroid + 2.0 * (reflected - centroid);
        const double fe = objective(expanded);
        if (fe < fr) {
          simplex[iworst] = expanded;
          value[iworst] = fe;
        } else {
          simplex[iworst] = reflected;
          value[iworst] = fr;
        }
        continue;
      }
      if (fr < value[isecond]) {
        simplex[iworst] = reflected;
        value[iworst] = fr;
        continue;
      }
      const Flat contracted = fr < value[iworst] ? Flat(centroid + 0.5 * (reflected - centroid))
                                                 : Flat(centroid + 0.5 * (simplex[iworst] - centroid));
      const double fc = objective(contracted);
      if (fc < std::min(fr, value[iworst])) {
        simplex[iworst] = contracted;
        value[iworst] = fc;
        continue;
      }
      // Shrink toward the best vertex.
      for (std::size_t i = 1; i < order.size() && evaluations < slice_end; ++i) {
        const std::size_t idx = order[i];
        simplex[idx] = simplex[ibest] + 0.5 * (simplex[idx] - simplex[ibest]);
        value[idx] = objective(simplex[idx]);
      }
    }

    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (value[i] < best_value) {
        best_value = value[i];
        best_x = simplex[i];
      }
    }
    if (best_value < opts.tol) break;
  }

  FixedSearchResult result{decode(best_x, n, m), 0.0, evaluations, restarts_used, false, 0};
  result.residual = residual(f, result.best);
  result.converged = result.residual < opts.tol;
  result.nearest_index = nearest_slot(f, result.best);
  return result;
}

std::size_t symmetry_check(const PointMapDescriptor& f, std::size_t n, Eigen::Index m,
                           std::size_t samples, std::uint64_t seed, double tol) {
  Rng rng(seed);
  std::size_t violations = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Configuration c = sample_configuration(rng, n, m);
    const Permutation sigma = rng.permutation(n);
    const Point a = evaluate_point_map(f, c);
    const Point b = evaluate_point_map(f, apply_permutation(c, sigma));
    if ((a - b).norm() > tol) ++violations;
  }
  return violations;
}

}  // namespace ballconfig
