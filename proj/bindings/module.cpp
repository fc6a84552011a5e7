#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qplocal/coupling.hpp"
#include "qplocal/greens.hpp"
#include "qplocal/msa.hpp"
#include "qplocal/spectrum.hpp"
#include "qplocal/sublevel.hpp"
#include "qplocal/weight.hpp"

namespace py = pybind11;
using namespace qplocal;

namespace {

WeightFunction make_weight(const AnalyticTorusFunction& base) {
    return weight_zero_analysis(base);
}

ModelParameters make_model(double coupling, double energy, const AnalyticTorusFunction& v,
                           const WeightFunction& w, double omega1, double omega2, double x,
                           double y) {
    ModelParameters p;
    p.coupling = coupling;
    p.energy = energy;
    p.v = v;
    p.w = w;
    p.omega = FrequencyVector{omega1, omega2, 1e-3, 3.0};
    p.phase = Phase(x, y);
    return p;
}

}  // namespace

PYBIND11_MODULE(_qplocal, m) {
    m.doc() = "Finite-volume Green's function and localization laboratory for "
              "quasi-periodic operators with degenerate weights";

    py::class_<AnalyticTorusFunction>(m, "AnalyticTorusFunction")
        .def(py::init([](const std::map<int, std::complex<double>>& modes,
                         const std::string& normalization) {
                 auto policy = AnalyticTorusFunction::Normalization::Accept;
                 if (normalization == "require")
                     policy = AnalyticTorusFunction::Normalization::Require;
                 else if (normalization == "rescale")
                     policy = AnalyticTorusFunction::Normalization::Rescale;
                 AnalyticTorusFunction::ModeMap table(modes.begin(), modes.end());
                 return AnalyticTorusFunction(table, policy);
             }),
             py::arg("modes"), py::arg("normalization") = "accept")
        .def_static("builtin",
                    [](const std::string& name) {
                        auto f = AnalyticTorusFunction::builtin(name);
                        if (!f) throw py::value_error("unknown builtin " + name);
                        return *f;
                    })
        .def("evaluate", &AnalyticTorusFunction::evaluate)
        .def("__call__", &AnalyticTorusFunction::evaluate)
        .def_property_readonly("band", &AnalyticTorusFunction::band)
        .def_property_readonly("decay_constant", &AnalyticTorusFunction::decay_constant);

    m.def("fourier_truncate",
          [](const AnalyticTorusFunction& f, int scale, int cap) {
              TruncationResult r = fourier_truncate(f, scale, cap);
              return py::make_tuple(r.polynomial, r.band, r.error_bound, r.target_reached);
          },
          py::arg("f"), py::arg("scale"), py::arg("band_cap") = (1 << 20));

    py::class_<Phase>(m, "Phase")
        .def(py::init<double, double>())
        .def_readonly("x", &Phase::x)
        .def_readonly("y", &Phase::y);

    py::class_<FrequencyVector>(m, "FrequencyVector")
        .def(py::init([](double w1, double w2) {
                 return FrequencyVector{w1, w2, 1e-3, 3.0};
             }),
             py::arg("w1"), py::arg("w2"))
        .def_readonly("w1", &FrequencyVector::w1)
        .def_readonly("w2", &FrequencyVector::w2);

    m.def("calibration_frequencies", &calibration_frequencies);
    m.def("orbit", &orbit, py::arg("phase"), py::arg("omega"), py::arg("n"));
    m.def("diophantine_margin",
          [](const FrequencyVector& omega, long long radius) {
              DiophantineMargin d = diophantine_margin(omega, radius);
              return py::make_tuple(d.l1, d.l2, d.margin, d.certified);
          });

    py::class_<WeightFunction>(m, "WeightFunction")
        .def_property_readonly("zeros",
                               [](const WeightFunction& w) {
                                   std::vector<std::pair<double, int>> out;
                                   for (const auto& z : w.zeros)
                                       out.push_back({z.location, z.order});
                                   return out;
                               })
        .def_readonly("max_order", &WeightFunction::max_order)
        .def_readonly("lower_constant", &WeightFunction::lower_constant)
        .def("evaluate", &WeightFunction::evaluate)
        .def("lower_bound_slack", &WeightFunction::lower_bound_slack);

    m.def("weight_zero_analysis", &make_weight, py::arg("base"));

    m.def("sublevel_measure",
          [](const AnalyticTorusFunction& v, const AnalyticTorusFunction& w, double ratio,
             double eps, int resolution) {
              MeasureEstimate e =
                  sublevel_measure(v, w, ratio, eps, SamplerSpec::grid(resolution));
              return py::make_tuple(e.value, e.std_error, e.samples);
          },
          py::arg("v"), py::arg("w"), py::arg("ratio"), py::arg("eps"),
          py::arg("resolution") = 2048);

    py::class_<ModelParameters>(m, "ModelParameters")
        .def(py::init(&make_model), py::arg("coupling"), py::arg("energy"), py::arg("v"),
             py::arg("w"), py::arg("omega1"), py::arg("omega2"), py::arg("x"), py::arg("y"))
        .def_readonly("coupling", &ModelParameters::coupling)
        .def_readonly("energy", &ModelParameters::energy)
        .def("potential_at", &ModelParameters::potential_at)
        .def("weight_at", &ModelParameters::weight_at);

    py::class_<LatticeInterval>(m, "LatticeInterval")
        .def(py::init<long long, long long>())
        .def_static("radius", &LatticeInterval::radius)
        .def_readonly("a", &LatticeInterval::a)
        .def_readonly("b", &LatticeInterval::b)
        .def_property_readonly("size", &LatticeInterval::size);

    py::class_<TridiagonalMatrix>(m, "TridiagonalMatrix")
        .def(py::init<std::vector<double>, std::vector<double>>())
        .def_readonly("diagonal", &TridiagonalMatrix::diagonal)
        .def_readonly("off_diagonal", &TridiagonalMatrix::off_diagonal)
        .def("to_dense", &TridiagonalMatrix::to_dense);

    m.def("assemble_H", &assemble_H);
    m.def("assemble_jacobi", &assemble_jacobi, py::arg("p"), py::arg("interval"),
          py::arg("floor"));
    m.def("weighted_inner_product",
          [](const std::vector<double>& u, const std::vector<double>& h,
             const std::vector<double>& w) { return weighted_inner_product(u, h, w); });

    py::class_<GreensMatrix>(m, "GreensMatrix")
        .def_readonly("entries", &GreensMatrix::entries)
        .def_readonly("operator_norm", &GreensMatrix::operator_norm)
        .def_readonly("hs_norm", &GreensMatrix::hs_norm)
        .def_readonly("condition_estimate", &GreensMatrix::condition_estimate)
        .def("entry", &GreensMatrix::entry);

    m.def("greens", &greens);
    m.def("invert_tridiagonal", &invert_tridiagonal);

    py::class_<GoodnessVerdict>(m, "GoodnessVerdict")
        .def_readonly("norm_ok", &GoodnessVerdict::norm_ok)
        .def_readonly("decay_ok", &GoodnessVerdict::decay_ok)
        .def_readonly("norm_value", &GoodnessVerdict::norm_value)
        .def_readonly("worst_ratio", &GoodnessVerdict::worst_ratio)
        .def("good", &GoodnessVerdict::good);

    m.def("verify_ldt_bounds",
          [](const GreensMatrix& g, double b, double gamma, double scale, double prefactor) {
              return verify_ldt_bounds(g, b, gamma, scale, prefactor);
          },
          py::arg("g"), py::arg("b"), py::arg("gamma"), py::arg("scale"),
          py::arg("prefactor") = 10.0);

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("rate", &DecayFit::rate)
        .def_readonly("prefactor", &DecayFit::prefactor)
        .def_readonly("residual", &DecayFit::residual)
        .def_readonly("reliable", &DecayFit::reliable);

    m.def("decay_fit", &decay_fit);

    py::class_<EigenReport>(m, "EigenReport")
        .def_readonly("eigenvalues", &EigenReport::eigenvalues)
        .def_readonly("eigenvectors", &EigenReport::eigenvectors)
        .def_readonly("ipr", &EigenReport::ipr_values)
        .def_readonly("centers", &EigenReport::centers)
        .def_readonly("max_residual", &EigenReport::max_residual)
        .def_readonly("orthonormality_error", &EigenReport::orthonormality_error)
        .def_readonly("pencil_fallback", &EigenReport::pencil_fallback);

    m.def("eigensolve_jacobi", &eigensolve_jacobi, py::arg("p"), py::arg("interval"),
          py::arg("floor"));
    m.def("pencil_eigensolve",
          [](const TridiagonalMatrix& h0, const std::vector<double>& w) {
              PencilEigensystem sys = pencil_eigensolve(h0, w);
              return py::make_tuple(sys.eigenvalues, sys.eigenvectors);
          });
    m.def("ipr", &ipr);
    m.def("poisson_reconstruct", &poisson_reconstruct);
    m.def("decay_rate_of_eigenvector", &decay_rate_of_eigenvector, py::arg("psi"),
          py::arg("center_index"), py::arg("core_radius") = 5.0);

    py::class_<LyapunovEstimate>(m, "LyapunovEstimate")
        .def_readonly("energy", &LyapunovEstimate::energy)
        .def_readonly("gamma", &LyapunovEstimate::gamma)
        .def_readonly("steps", &LyapunovEstimate::steps);

    m.def("lyapunov", &lyapunov, py::arg("p"), py::arg("energy"), py::arg("steps"));

    py::class_<SpectrumDistance>(m, "SpectrumDistance")
        .def_readonly("eigenvalue_route", &SpectrumDistance::eigenvalue_route)
        .def_readonly("resolvent_route", &SpectrumDistance::resolvent_route)
        .def_readonly("relative_gap", &SpectrumDistance::relative_gap);

    m.def("distance_to_spectrum", &distance_to_spectrum, py::arg("energy"), py::arg("p"),
          py::arg("interval"), py::arg("floor"));

    py::class_<BadSetReport>(m, "BadSetReport")
        .def_readonly("scale", &BadSetReport::scale)
        .def_readonly("energy", &BadSetReport::energy)
        .def_readonly("samples", &BadSetReport::samples)
        .def_readonly("bad_count", &BadSetReport::bad_count)
        .def_readonly("bad_fraction", &BadSetReport::bad_fraction)
        .def_readonly("std_error", &BadSetReport::std_error)
        .def_readonly("threshold", &BadSetReport::threshold);

    m.def("bad_set_estimate",
          [](const ModelParameters& p, int scale, int resolution, int workers) {
              return bad_set_estimate(p, scale, PhaseSampler::grid(resolution), MsaExponents{},
                                      workers);
          },
          py::arg("p"), py::arg("scale"), py::arg("resolution") = 64, py::arg("workers") = 0);

    py::class_<OrbitHitReport>(m, "OrbitHitReport")
        .def_readonly("length", &OrbitHitReport::length)
        .def_readonly("hits", &OrbitHitReport::hits)
        .def_readonly("bound", &OrbitHitReport::bound)
        .def_readonly("longest_clear_run", &OrbitHitReport::longest_clear_run);

    m.def("orbit_hit_count",
          [](const Phase& start, const FrequencyVector& omega, long long length,
             const std::function<bool(double, double)>& bad, double delta) {
              return orbit_hit_count(
                  start, omega, length,
                  [&bad](const Phase& p) { return bad(p.x, p.y); }, delta);
          },
          py::arg("start"), py::arg("omega"), py::arg("length"), py::arg("bad"),
          py::arg("delta") = 0.32);

    py::register_exception<SingularRestrictionError>(m, "SingularRestrictionError");
    py::register_exception<WeightFloorError>(m, "WeightFloorError");
}
