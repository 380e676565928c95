// pybind11 module exposing the main operations of the library.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gwpt/coefficients.hpp"
#include "gwpt/error_model.hpp"
#include "gwpt/experiment.hpp"
#include "gwpt/overlap.hpp"
#include "gwpt/quadrature.hpp"
#include "gwpt/reconstruction.hpp"
#include "gwpt/summation_curve.hpp"

#include <sstream>

namespace py = pybind11;
using namespace gwpt;

namespace {

WavePacket make_packet(const Vec& q, const Vec& p, const WidthMatrix& width, double eps) {
    return WavePacket(PhaseSpacePoint(q, p), width, eps);
}

py::dict record_to_dict(const ErrorSweepRecord& r) {
    py::dict d;
    d["rule"] = r.rule;
    d["N"] = r.N;
    d["M"] = r.M;
    d["gamma"] = r.gamma;
    d["eps"] = r.eps;
    d["L_p"] = r.L_p ? py::object(py::float_(*r.L_p)) : py::object(py::none());
    d["sup_error"] = r.sup_error;
    d["predicted_bound"] =
        r.predicted_bound ? py::object(py::float_(*r.predicted_bound)) : py::object(py::none());
    d["wall_time_s"] = r.wall_time_s;
    return d;
}

}  // namespace

PYBIND11_MODULE(_gwpt, m) {
    m.doc() = "Gaussian wave packet transform: analytic overlaps, summation curves, "
              "quadrature grids, and reconstruction sweeps";

    py::class_<WidthMatrix>(m, "WidthMatrix")
        .def_static("validate", &WidthMatrix::validate, py::arg("raw"))
        .def_property_readonly("entries", &WidthMatrix::entries)
        .def_property_readonly("dim", &WidthMatrix::dim)
        .def_property_readonly("eig_values", &WidthMatrix::eig_values)
        .def_property_readonly("eig_vectors", &WidthMatrix::eig_vectors);
    m.def("validate_width", &WidthMatrix::validate, py::arg("raw"));
    m.def("scalar_width", &scalar_width, py::arg("gamma"));
    m.def("diagonal_width", &diagonal_width, py::arg("gammas"));

    py::class_<WavePacket>(m, "WavePacket")
        .def(py::init(&make_packet), py::arg("q"), py::arg("p"), py::arg("width"),
             py::arg("eps"))
        .def("__call__", &WavePacket::operator(), py::arg("x"))
        .def("envelope", &WavePacket::envelope, py::arg("y"))
        .def_property_readonly("eps", &WavePacket::eps)
        .def_property_readonly("dim", &WavePacket::dim);

    m.def("overlap", &overlap, py::arg("bra"), py::arg("ket"));
    m.def("overlap_oracle", &overlap_oracle, py::arg("bra"), py::arg("ket"),
          py::arg("box_halfwidth"), py::arg("points_per_dim"));

    py::class_<HermiteRule>(m, "HermiteRule")
        .def_readonly("nodes", &HermiteRule::nodes)
        .def_readonly("weights", &HermiteRule::weights);
    m.def("hermite_rule", &hermite_rule, py::arg("N"));
    m.def("hermite_scaled_weights", &hermite_scaled_weights, py::arg("N"), py::arg("nodes"));

    py::class_<MomentumGrid>(m, "MomentumGrid")
        .def_property_readonly("size", &MomentumGrid::size)
        .def_property_readonly("offsets", [](const MomentumGrid& g) { return g.offsets1d; })
        .def_property_readonly("weights", [](const MomentumGrid& g) { return g.weights1d; })
        .def_property_readonly("dp", [](const MomentumGrid& g) { return g.dp; })
        .def_property_readonly("N", [](const MomentumGrid& g) { return g.N; });
    m.def("tcm_grid", &tcm_grid, py::arg("N"), py::arg("L_p"), py::arg("p0"), py::arg("eps"),
          py::arg("d"));
    m.def("rs_grid", &rs_grid, py::arg("dp"), py::arg("p0"), py::arg("eps"), py::arg("d"),
          py::arg("tail_tol"));
    m.def("gh_grid", &gh_grid, py::arg("N"), py::arg("eps"), py::arg("p0"));
    m.def("gh_grid_scaled", &gh_grid_scaled, py::arg("N"), py::arg("eps"), py::arg("p0"),
          py::arg("scale"));

    py::enum_<GridMode>(m, "GridMode")
        .value("Finite", GridMode::Finite)
        .value("IntegerLattice", GridMode::IntegerLattice);
    py::class_<PositionGrid>(m, "PositionGrid")
        .def_static("finite", &PositionGrid::finite, py::arg("q0"), py::arg("L_q"),
                    py::arg("M"), py::arg("width"))
        .def_static("integer_lattice", &PositionGrid::integer_lattice, py::arg("q0"),
                    py::arg("dq"), py::arg("width"))
        .def_property_readonly("dq", &PositionGrid::dq)
        .def("point", py::overload_cast<std::size_t>(&PositionGrid::point, py::const_))
        .def_property_readonly("size", &PositionGrid::size);

    py::class_<SummationCurve>(m, "SummationCurve")
        .def(py::init<PositionGrid, WidthMatrix, double>(), py::arg("grid"), py::arg("width"),
             py::arg("eps"))
        .def("direct", &SummationCurve::direct, py::arg("x"))
        .def("partition_weight", &SummationCurve::partition_weight, py::arg("k"), py::arg("x"))
        .def("product", &SummationCurve::product, py::arg("x"));
    m.def("summation_expansion", &summation_expansion, py::arg("dq"), py::arg("gamma_i"),
          py::arg("eps"), py::arg("x"), py::arg("n_terms"));
    m.def("spectral_bound", &spectral_bound, py::arg("s"), py::arg("dq"), py::arg("gamma_i"),
          py::arg("eps"));
    m.def("summation_upper_bound", &summation_upper_bound, py::arg("dq"), py::arg("eps"),
          py::arg("gamma_i"));
    m.def("summation_lower_bound", &summation_lower_bound, py::arg("dq"), py::arg("eps"),
          py::arg("gamma_i"), py::arg("L_q"));

    py::class_<CoefficientTable>(m, "CoefficientTable")
        .def_property_readonly("values", &CoefficientTable::values)
        .def("at", py::overload_cast<std::size_t, std::size_t>(&CoefficientTable::at,
                                                               py::const_),
             py::arg("j_flat"), py::arg("k_flat"))
        .def("to_csv", [](const CoefficientTable& t) {
            std::ostringstream os;
            t.write_csv(os);
            return os.str();
        });
    m.def("coefficients", &coefficients, py::arg("pgrid"), py::arg("qgrid"),
          py::arg("basis_width"), py::arg("psi0"));

    py::class_<Reconstruction>(m, "Reconstruction")
        .def(py::init<CoefficientTable, SummationCurve>(), py::arg("table"), py::arg("curve"))
        .def("__call__", &Reconstruction::operator(), py::arg("x"))
        .def("evaluate_many", &Reconstruction::evaluate_many, py::arg("xs"));
    m.def("semi_discrete_I", &semi_discrete_I, py::arg("q_k"), py::arg("psi0"),
          py::arg("basis_width"), py::arg("x"));
    m.def("sup_error", &sup_error, py::arg("rec"), py::arg("psi0"), py::arg("L_q"),
          py::arg("samples_per_dim"));

    py::class_<PredictedConstants>(m, "PredictedConstants")
        .def_readonly("c_truncation", &PredictedConstants::c_truncation)
        .def_readonly("c_midpoint", &PredictedConstants::c_midpoint)
        .def_readonly("c_riemann", &PredictedConstants::c_riemann)
        .def_readonly("c_gh_shape", &PredictedConstants::c_gh_shape)
        .def_readonly("gh_absolute", &PredictedConstants::gh_absolute)
        .def_readonly("C_gamma_q", &PredictedConstants::C_gamma_q)
        .def_readonly("C_truncation", &PredictedConstants::C_truncation)
        .def_readonly("C_midpoint", &PredictedConstants::C_midpoint);
    m.def("predicted_constants", &predicted_constants, py::arg("d"), py::arg("eps"),
          py::arg("L_p"), py::arg("L_q"), py::arg("sigma_min"), py::arg("s"));

    m.def("fit_rate", [](const std::vector<py::dict>& rows) {
        std::vector<ErrorSweepRecord> records;
        for (const auto& row : rows) {
            ErrorSweepRecord r;
            r.N = row["N"].cast<int>();
            r.sup_error = row["sup_error"].cast<double>();
            records.push_back(r);
        }
        const RateFit fit = fit_rate(records);
        py::dict d;
        d["algebraic_slope"] = fit.algebraic_slope;
        d["plateau"] = fit.plateau ? py::object(py::float_(*fit.plateau)) : py::object(py::none());
        d["exp_rate"] =
            fit.exp_rate ? py::object(py::float_(*fit.exp_rate)) : py::object(py::none());
        return d;
    }, py::arg("records"));

    m.def("sweep_preset", &sweep_preset, py::arg("name"));
    m.def("summation_preset", &summation_preset, py::arg("name"));
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readwrite("samples_per_dim", &ExperimentConfig::samples_per_dim)
        .def("serialize", [](const ExperimentConfig& c) { return serialize_config(c); });
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("run_sweep", [](const ExperimentConfig& cfg, int jobs) {
        const auto records = run_sweep(cfg, jobs);
        std::vector<py::dict> out;
        out.reserve(records.size());
        for (const auto& r : records) out.push_back(record_to_dict(r));
        return out;
    }, py::arg("config"), py::arg("jobs") = 1);
    m.def("run_summation", [](const ExperimentConfig& cfg) {
        const auto rows = run_summation(cfg);
        std::ostringstream os;
        write_summation_csv(os, rows);
        return os.str();
    }, py::arg("config"));
}
