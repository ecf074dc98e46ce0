#include "ballconfig/geometry.hpp"
#include "ballconfig/homotopy.hpp"
#include "ballconfig/json_io.hpp"
#include "ballconfig/obstruction.hpp"
#include "ballconfig/random.hpp"
#include "ballconfig/sections.hpp"
#include "ballconfig/solver.hpp"
#include "ballconfig/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ballconfig;

namespace {

SectionCheckOptions make_check_options(std::size_t samples, std::uint64_t seed,
                                       const std::string& equivariance) {
  SectionCheckOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  if (equivariance == "on") {
    opts.equivariance = SectionCheckOptions::Equivariance::On;
  } else if (equivariance == "off") {
    opts.equivariance = SectionCheckOptions::Equivariance::Off;
  } else if (equivariance != "auto") {
    throw std::invalid_argument("equivariance must be 'auto', 'on' or 'off'");
  }
  return opts;
}

std::string repr_configuration(const Configuration& c) {
  std::ostringstream os;
  os << "Configuration(n=" << c.size() << ", m=" << c.dim() << ")";
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_ballconfig, m) {
  m.doc() = "Point addition on configuration spaces of the closed unit ball: "
            "sections of the forgetful map, homotopies between sections, planar "
            "winding obstructions and a fixed-configuration search.";
  m.attr("__version__") = kVersion;

  py::register_exception<WindingError>(m, "WindingError");

  // geometry
  py::class_<Configuration>(m, "Configuration")
      .def(py::init<std::vector<Point>>(), py::arg("points"))
      .def(py::init<Eigen::Index, std::vector<Point>>(), py::arg("dim"), py::arg("points"))
      .def_property_readonly("dim", &Configuration::dim)
      .def("__len__", &Configuration::size)
      .def("point", &Configuration::operator[], py::arg("i"))
      .def("__getitem__", &Configuration::operator[], py::arg("i"))
      .def_property_readonly("points", &Configuration::points)
      .def("with_prepended", &Configuration::with_prepended, py::arg("p0"))
      .def("without_front", &Configuration::without_front)
      .def("with_replaced", &Configuration::with_replaced, py::arg("i"), py::arg("p"))
      .def("__eq__", &Configuration::operator==)
      .def("__repr__", &repr_configuration);

  m.def("min_pairwise_gap", &min_pairwise_gap, py::arg("c"));
  m.def("nearest_neighbor_distance", &nearest_neighbor_distance, py::arg("c"), py::arg("i"));
  m.def("apply_permutation", &apply_permutation, py::arg("c"), py::arg("perm"));
  m.def("config_distance", &config_distance, py::arg("a"), py::arg("b"));
  m.def("canonical_form", &canonical_form, py::arg("c"));
  m.def("canonical_distance", &canonical_distance, py::arg("a"), py::arg("b"));
  m.def(
      "sample_configuration",
      [](std::size_t n, Eigen::Index m_, std::uint64_t seed, double min_gap) {
        Rng rng(seed);
        return sample_configuration(rng, n, m_, min_gap);
      },
      py::arg("n"), py::arg("m"), py::arg("seed") = 0, py::arg("min_gap") = kSampleGap);

  // sections
  py::class_<SectionDescriptor>(m, "SectionDescriptor")
      .def_static("midpoint", &SectionDescriptor::midpoint)
      .def_static("add_near", &SectionDescriptor::add_near, py::arg("anchor"), py::arg("toward"))
      .def_static("biased", &SectionDescriptor::biased, py::arg("alpha"))
      .def_static("registered", &SectionDescriptor::registered, py::arg("name"))
      .def_static("parse", &SectionDescriptor::parse, py::arg("text"))
      .def("describe", &SectionDescriptor::describe)
      .def("applicable", &SectionDescriptor::applicable, py::arg("n"))
      .def_property_readonly("declared_equivariant", &SectionDescriptor::declared_equivariant)
      .def("__repr__",
           [](const SectionDescriptor& s) { return "SectionDescriptor('" + s.describe() + "')"; });

  m.def("forget_point", &forget_point, py::arg("c"));
  m.def("midpoint_section", &midpoint_section, py::arg("c"));
  m.def("add_near_section", &add_near_section, py::arg("c"), py::arg("anchor"), py::arg("toward"));
  m.def("biased_interpolation_section", &biased_interpolation_section, py::arg("c"), py::arg("alpha"));
  m.def("added_point", &added_point, py::arg("section"), py::arg("c"));
  m.def("apply_section", &apply_section, py::arg("section"), py::arg("c"));
  m.def(
      "register_section",
      [](const std::string& name, SectionFn fn, bool equivariant) {
        SectionRegistry::global().add(name, std::move(fn), equivariant);
      },
      py::arg("name"), py::arg("fn"), py::arg("equivariant") = false,
      "Register a rule by name; fn maps a Configuration to the added point.");
  m.def("registered_sections", [] { return SectionRegistry::global().names(); });

  py::class_<SectionCheckReport>(m, "SectionCheckReport")
      .def_readonly("section", &SectionCheckReport::section)
      .def_readonly("n", &SectionCheckReport::n)
      .def_readonly("m", &SectionCheckReport::m)
      .def_readonly("samples_run", &SectionCheckReport::samples_run)
      .def_readonly("worst_gap", &SectionCheckReport::worst_gap)
      .def_readonly("worst_containment_excess", &SectionCheckReport::worst_containment_excess)
      .def_readonly("section_property_violations", &SectionCheckReport::section_property_violations)
      .def_readonly("equivariance_checked", &SectionCheckReport::equivariance_checked)
      .def_readonly("equivariance_violations", &SectionCheckReport::equivariance_violations)
      .def_readonly("worst_equivariance_deviation", &SectionCheckReport::worst_equivariance_deviation)
      .def_readonly("section_witnesses", &SectionCheckReport::section_witnesses)
      .def_readonly("equivariance_witnesses", &SectionCheckReport::equivariance_witnesses)
      .def_property_readonly("passed", &SectionCheckReport::passed)
      .def("__repr__", [](const SectionCheckReport& r) {
        std::ostringstream os;
        os << "SectionCheckReport(section='" << r.section << "', pass=" << (r.passed() ? "True" : "False")
           << ")";
        return os.str();
      });

  m.def(
      "verify_section",
      [](const SectionDescriptor& s, std::size_t n, Eigen::Index m_, std::size_t samples,
         std::uint64_t seed, const std::string& equivariance) {
        return verify_section(s, n, m_, make_check_options(samples, seed, equivariance));
      },
      py::arg("section"), py::arg("n"), py::arg("m"), py::arg("samples") = 10000, py::arg("seed") = 0,
      py::arg("equivariance") = "auto");

  // homotopy
  py::class_<ChordData>(m, "ChordData")
      .def_readonly("q1", &ChordData::q1)
      .def_readonly("q2", &ChordData::q2)
      .def_readonly("center", &ChordData::center)
      .def_readonly("ratio", &ChordData::ratio)
      .def_readonly("degenerate", &ChordData::degenerate);

  m.def("chord_data", &chord_data, py::arg("c"));
  m.def("scale_map", &scale_map, py::arg("chord"), py::arg("t"), py::arg("v"));
  m.def("scale_map_inverse", &scale_map_inverse, py::arg("chord"), py::arg("t"), py::arg("v"));
  m.def("conjugated_section", &conjugated_section, py::arg("section"), py::arg("c"), py::arg("t"));
  m.def("between_or_offline", &between_or_offline, py::arg("p0"), py::arg("p1"), py::arg("p2"),
        py::arg("eps") = kColEps);
  m.def("boundary_pushoff", &boundary_pushoff, py::arg("c"), py::arg("t"));

  py::class_<HomotopyTrace>(m, "HomotopyTrace")
      .def_readonly("grid", &HomotopyTrace::grid)
      .def_readonly("frames", &HomotopyTrace::frames)
      .def_property_readonly("phases",
                             [](const HomotopyTrace& tr) {
                               std::vector<std::string> out;
                               out.reserve(tr.phases.size());
                               for (HomotopyPhase p : tr.phases) out.emplace_back(phase_name(p));
                               return out;
                             })
      .def("__len__", [](const HomotopyTrace& tr) { return tr.frames.size(); });

  m.def("uniqueness_homotopy", &uniqueness_homotopy, py::arg("section"), py::arg("c"),
        py::arg("frames_per_phase") = 64);

  // obstruction
  py::class_<LoopSample>(m, "LoopSample")
      .def(py::init<std::vector<Configuration>>(), py::arg("frames"))
      .def_property_readonly("frames", &LoopSample::frames)
      .def("__len__", [](const LoopSample& l) { return l.frames().size(); });

  py::class_<CollisionWitness>(m, "CollisionWitness")
      .def_readonly("loop", &CollisionWitness::loop)
      .def_readonly("frame", &CollisionWitness::frame)
      .def_readonly("slot_a", &CollisionWitness::slot_a)
      .def_readonly("slot_b", &CollisionWitness::slot_b)
      .def("__repr__", [](const CollisionWitness& w) {
        std::ostringstream os;
        os << "CollisionWitness(loop='" << w.loop << "', frame=" << w.frame << ", slots=(" << w.slot_a
           << ", " << w.slot_b << "))";
        return os.str();
      });

  py::class_<ImagePairWinding>(m, "ImagePairWinding")
      .def_readonly("winding", &ImagePairWinding::winding)
      .def_readonly("collision", &ImagePairWinding::collision);

  py::class_<ObstructionReport>(m, "ObstructionReport")
      .def_readonly("section", &ObstructionReport::section)
      .def_readonly("n", &ObstructionReport::n)
      .def_readonly("lambda_values", &ObstructionReport::lambda_values)
      .def_readonly("delta_values", &ObstructionReport::delta_values)
      .def_readonly("lambda_consistent", &ObstructionReport::lambda_consistent)
      .def_readonly("identity_holds", &ObstructionReport::identity_holds)
      .def_readonly("collision", &ObstructionReport::collision)
      .def("__repr__", [](const ObstructionReport& r) {
        std::ostringstream os;
        os << "ObstructionReport(section='" << r.section
           << "', identity_holds=" << (r.identity_holds ? "True" : "False")
           << ", collision=" << (r.collision ? "yes" : "no") << ")";
        return os.str();
      });

  m.def("winding_number", &winding_number, py::arg("vectors"), py::arg("eps") = kWindEps);
  m.def("gauss_winding", &gauss_winding, py::arg("loop"), py::arg("a"), py::arg("b"),
        py::arg("eps") = kWindEps);
  m.def("generator_loop", &generator_loop, py::arg("base"), py::arg("a"), py::arg("b"),
        py::arg("radius"), py::arg("samples") = kDefaultLoopSamples);
  m.def("image_pair_winding", &image_pair_winding, py::arg("section"), py::arg("loop"),
        py::arg("loop_id"), py::arg("eps") = kWindEps);
  m.def("default_obstruction_base", &default_obstruction_base, py::arg("n"), py::arg("seed") = 0);
  m.def(
      "measure_coefficients",
      [](const SectionDescriptor& s, const Configuration& base, double radius, std::size_t samples,
         const std::vector<std::pair<std::string, LoopSample>>& probes) {
        std::vector<NamedLoop> named;
        named.reserve(probes.size());
        for (const auto& [id, loop] : probes) named.push_back(NamedLoop{id, loop});
        return measure_coefficients(s, base, radius, samples, named);
      },
      py::arg("section"), py::arg("base"), py::arg("radius") = 0.1,
      py::arg("samples") = kDefaultLoopSamples,
      py::arg("probes") = std::vector<std::pair<std::string, LoopSample>>{});

  // solver
  py::class_<PointMapDescriptor>(m, "PointMapDescriptor")
      .def_static("constant", &PointMapDescriptor::constant, py::arg("q"))
      .def_static("centroid", &PointMapDescriptor::centroid)
      .def_static("contraction", &PointMapDescriptor::contraction, py::arg("alpha"), py::arg("q"))
      .def_static("registered", &PointMapDescriptor::registered, py::arg("name"))
      .def_static("parse", &PointMapDescriptor::parse, py::arg("text"), py::arg("m"))
      .def("describe", &PointMapDescriptor::describe)
      .def_readonly("declared_symmetric", &PointMapDescriptor::declared_symmetric)
      .def("__repr__",
           [](const PointMapDescriptor& f) { return "PointMapDescriptor('" + f.describe() + "')"; });

  py::class_<FixedSearchResult>(m, "FixedSearchResult")
      .def_readonly("best", &FixedSearchResult::best)
      .def_readonly("residual", &FixedSearchResult::residual)
      .def_readonly("evaluations", &FixedSearchResult::evaluations)
      .def_readonly("restarts_used", &FixedSearchResult::restarts_used)
      .def_readonly("converged", &FixedSearchResult::converged)
      .def_readonly("nearest_index", &FixedSearchResult::nearest_index)
      .def("__repr__", [](const FixedSearchResult& r) {
        std::ostringstream os;
        os << "FixedSearchResult(residual=" << r.residual
           << ", converged=" << (r.converged ? "True" : "False") << ")";
        return os.str();
      });

  m.def("evaluate_point_map", &evaluate_point_map, py::arg("map"), py::arg("c"));
  m.def("residual", &residual, py::arg("map"), py::arg("c"));
  m.def(
      "find_fixed_configuration",
      [](const PointMapDescriptor& f, std::size_t n, Eigen::Index m_, double tol,
         std::size_t restarts, std::size_t budget, std::uint64_t seed, double min_gap) {
        FixedSearchOptions opts;
        opts.tol = tol;
        opts.restarts = restarts;
        opts.budget = budget;
        opts.seed = seed;
        opts.min_gap = min_gap;
        return find_fixed_configuration(f, n, m_, opts);
      },
      py::arg("map"), py::arg("n"), py::arg("m"), py::arg("tol") = 1e-6, py::arg("restarts") = 32,
      py::arg("budget") = 100000, py::arg("seed") = 0, py::arg("min_gap") = kSampleGap);
  m.def("symmetry_check", &symmetry_check, py::arg("map"), py::arg("n"), py::arg("m"),
        py::arg("samples"), py::arg("seed") = 0, py::arg("tol") = 1e-10);
  m.def(
      "register_point_map",
      [](const std::string& name, PointMapFn fn, bool symmetric) {
        PointMapRegistry::global().add(name, std::move(fn), symmetric);
      },
      py::arg("name"), py::arg("fn"), py::arg("symmetric") = true);
}
