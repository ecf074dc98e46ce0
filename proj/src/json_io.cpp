#include "ballconfig/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ballconfig {

using nlohmann::json;

json config_to_json(const Configuration& c) {
  json points = json::array();
  for (const Point& p : c.points()) {
    json coords = json::array();
    for (Eigen::Index k = 0; k < p.size(); ++k) coords.push_back(p[k]);
    points.push_back(std::move(coords));
  }
  return json{{"dim", c.dim()}, {"points", std::move(points)}};
}

Configuration config_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("configuration: expected a JSON object");
  if (!j.contains("dim")) throw std::runtime_error("configuration: missing field 'dim'");
  if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) {
    throw std::runtime_error("configuration: field 'dim' must be a positive integer");
  }
  const Eigen::Index dim = j["dim"].get<Eigen::Index>();
  if (!j.contains("points")) throw std::runtime_error("configuration: missing field 'points'");
  if (!j["points"].is_array() || j["points"].empty()) {
    throw std::runtime_error("configuration: field 'points' must be a non-empty array");
  }
  std::vector<Point> pts;
  pts.reserve(j["points"].size());
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    const json& row = j["points"][i];
    std::ostringstream where;
    where << "configuration: points[" << i << "]";
    if (!row.is_array()) throw std::runtime_error(where.str() + " must be an array of numbers");
    if (static_cast<Eigen::Index>(row.size()) != dim) {
      std::ostringstream os;
      os << where.str() << " has " << row.size() << " coordinates, expected " << dim;
      throw std::runtime_error(os.str());
    }
    Point p(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (!row[static_cast<std::size_t>(k)].is_number()) {
        std::ostringstream os;
        os << where.str() << "[" << k << "] is not a number";
        throw std::runtime_error(os.str());
      }
      p[k] = row[static_cast<std::size_t>(k)].get<double>();
    }
    pts.push_back(std::move(p));
  }
  try {
    return Configuration(dim, std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("configuration: ") + e.what());
  }
}

Configuration load_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("'" + path + "': " + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error("'" + path + "': " + e.what());
  }
}

json report_to_json(const SectionCheckReport& rep) {
  json witnesses = json::object();
  witnesses["section_property"] = json::array();
  for (const Configuration& c : rep.section_witnesses) {
    witnesses["section_property"].push_back(config_to_json(c));
  }
  witnesses["equivariance"] = json::array();
  for (const Configuration& c : rep.equivariance_witnesses) {
    witnesses["equivariance"].push_back(config_to_json(c));
  }
  return json{{"section", rep.section},
              {"n", rep.n},
              {"m", rep.m},
              {"samples_run", rep.samples_run},
              {"worst_gap", rep.worst_gap},
              {"worst_containment_excess", rep.worst_containment_excess},
              {"section_property_violations", rep.section_property_violations},
              {"equivariance_checked", rep.equivariance_checked},
              {"equivariance_violations", rep.equivariance_violations},
              {"worst_equivariance_deviation", rep.worst_equivariance_deviation},
              {"gap_eps", rep.gap_eps},
              {"ball_eps", rep.ball_eps},
              {"witnesses", std::move(witnesses)},
              {"pass", rep.passed()}};
}

json trace_to_json(const HomotopyTrace& trace) {
  json grid = json::array();
  for (double t : trace.grid) grid.push_back(t);
  json frames = json::array();
  for (const Configuration& f : trace.frames) frames.push_back(config_to_json(f));
  json phase = json::array();
  for (HomotopyPhase p : trace.phases) phase.push_back(phase_name(p));
  return json{{"grid", std::move(grid)}, {"frames", std::move(frames)}, {"phase", std::move(phase)}};
}

json report_to_json(const ObstructionReport& rep) {
  json lambda = json::object();
  for (const auto& [label, value] : rep.lambda_values) lambda[std::to_string(label)] = value;
  json delta = json::object();
  for (const auto& [pair, value] : rep.delta_values) {
    delta[std::to_string(pair.first) + "," + std::to_string(pair.second)] = value;
  }
  json collision = nullptr;
  if (rep.collision) {
    collision = json{{"loop", rep.collision->loop},
                     {"frame", rep.collision->frame},
                     {"slot_a", rep.collision->slot_a},
                     {"slot_b", rep.collision->slot_b}};
  }
  return json{{"section", rep.section},
              {"n", rep.n},
              {"lambda", std::move(lambda)},
              {"delta", std::move(delta)},
              {"lambda_consistent", rep.lambda_consistent},
              {"identity_holds", rep.identity_holds},
              {"collision", std::move(collision)}};
}

json result_to_json(const FixedSearchResult& result) {
  return json{{"best", config_to_json(result.best)},
              {"residual", result.residual},
              {"evaluations", result.evaluations},
              {"restarts_used", result.restarts_used},
              {"converged", result.converged},
              {"nearest_index", result.nearest_index}};
}

}  // namespace ballconfig
