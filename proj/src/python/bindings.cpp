#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lpflow/appendix.hpp"
#include "lpflow/chain.hpp"
#include "lpflow/flow_classifier.hpp"
#include "lpflow/lp_model.hpp"
#include "lpflow/order_lab.hpp"
#include "lpflow/profile.hpp"
#include "lpflow/sampler.hpp"
#include "lpflow/special.hpp"

namespace py = pybind11;
using namespace lpflow;

PYBIND11_MODULE(_lpflow, m) {
    m.doc() = "numerical laboratory for lp-ball projection profiles";

    py::class_<BallParams>(m, "BallParams")
        .def(py::init<double, int>(), py::arg("p"), py::arg("n"))
        .def_readonly("p", &BallParams::p)
        .def_readonly("n", &BallParams::n)
        .def_readonly("alpha", &BallParams::alpha);

    py::class_<MomentSet>(m, "MomentSet")
        .def_readonly("volume", &MomentSet::volume)
        .def_readonly("v", &MomentSet::v)
        .def_readonly("m4", &MomentSet::m4)
        .def_readonly("delta", &MomentSet::delta)
        .def_readonly("big_r", &MomentSet::big_r)
        .def_readonly("c_norm", &MomentSet::c_norm);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init([](std::uint64_t seed, std::uint64_t stream_id) {
                 return RngStream{seed, stream_id};
             }),
             py::arg("seed"), py::arg("stream_id") = 0)
        .def_readwrite("seed", &RngStream::seed)
        .def_readwrite("stream_id", &RngStream::stream_id);

    py::class_<Direction>(m, "Direction")
        .def(py::init<std::vector<double>>(), py::arg("v"))
        .def_static("e1", &Direction::e1, py::arg("n"))
        .def_static("diagonal", &Direction::diagonal, py::arg("n"))
        .def_static("canonical", &Direction::canonical, py::arg("k"), py::arg("n"))
        .def_readonly("theta", &Direction::theta)
        .def_readonly("squared", &Direction::squared)
        .def("dim", &Direction::dim);

    py::class_<ProfileEstimate>(m, "ProfileEstimate")
        .def_readonly("value", &ProfileEstimate::value)
        .def_readonly("err", &ProfileEstimate::err)
        .def_readonly("samples_or_panels", &ProfileEstimate::samples_or_panels);

    py::class_<ChainEstimate>(m, "ChainEstimate")
        .def_readonly("values", &ChainEstimate::values)
        .def_readonly("ses", &ChainEstimate::ses)
        .def_readonly("gap_means", &ChainEstimate::gap_means)
        .def_readonly("gap_ses", &ChainEstimate::gap_ses)
        .def_readonly("samples", &ChainEstimate::samples);

    py::enum_<OrderVerdict>(m, "OrderVerdict")
        .value("ConsistentWithOrder", OrderVerdict::ConsistentWithOrder)
        .value("Violation", OrderVerdict::Violation)
        .value("Inconclusive", OrderVerdict::Inconclusive);

    py::class_<StopLossReport>(m, "StopLossReport")
        .def_readonly("thresholds", &StopLossReport::thresholds)
        .def_readonly("lhs", &StopLossReport::lhs)
        .def_readonly("rhs", &StopLossReport::rhs)
        .def_readonly("se", &StopLossReport::se)
        .def_readonly("verdict", &StopLossReport::verdict)
        .def_readonly("mean_u", &StopLossReport::mean_u)
        .def_readonly("mean_v", &StopLossReport::mean_v)
        .def_readonly("samples", &StopLossReport::samples);

    py::class_<SchurScanReport>(m, "SchurScanReport")
        .def_readonly("values", &SchurScanReport::values)
        .def_readonly("ses", &SchurScanReport::ses)
        .def_readonly("gap_means", &SchurScanReport::gap_means)
        .def_readonly("gap_ses", &SchurScanReport::gap_ses)
        .def_readonly("monotone", &SchurScanReport::monotone)
        .def_readonly("failing_pair", &SchurScanReport::failing_pair)
        .def_readonly("samples", &SchurScanReport::samples);

    py::class_<ChainReport>(m, "ChainReport")
        .def_readonly("values", &ChainReport::values)
        .def_readonly("errs", &ChainReport::errs)
        .def_readonly("strictly_decreasing", &ChainReport::strictly_decreasing)
        .def_readonly("failing_index", &ChainReport::failing_index)
        .def_readonly("deterministic", &ChainReport::deterministic);

    py::enum_<FlowVerdict>(m, "FlowVerdict")
        .value("Nonmonotone", FlowVerdict::Nonmonotone)
        .value("StrictlyDecreasing", FlowVerdict::StrictlyDecreasing);

    py::class_<FlowClassification>(m, "FlowClassification")
        .def_readonly("p", &FlowClassification::p)
        .def_readonly("n", &FlowClassification::n)
        .def_readonly("delta", &FlowClassification::delta)
        .def_readonly("big_r", &FlowClassification::big_r)
        .def_readonly("verdict", &FlowClassification::verdict)
        .def_readonly("has_witness", &FlowClassification::has_witness)
        .def_readonly("t_neg", &FlowClassification::t_neg)
        .def_readonly("t_pos", &FlowClassification::t_pos)
        .def_readonly("dphi_neg", &FlowClassification::dphi_neg)
        .def_readonly("dphi_pos", &FlowClassification::dphi_pos);

    m.def("log_gamma", &log_gamma, py::arg("x"));
    m.def("ball_volume", &ball_volume, py::arg("params"));
    m.def("coordinate_moment", &coordinate_moment, py::arg("params"), py::arg("r"));
    m.def("moment_set", &moment_set, py::arg("params"));
    m.def("coordinate_density", &coordinate_density, py::arg("params"), py::arg("u"));
    m.def("set_mc_threads", &set_mc_threads, py::arg("threads"));
    m.def(
        "sample_uniform_ball",
        [](const BallParams& params, RngStream stream) {
            return sample_uniform_ball(params, stream);
        },
        py::arg("params"), py::arg("stream"));
    m.def("laplace_m", &laplace_m, py::arg("params"), py::arg("t"), py::arg("dir"),
          py::arg("budget"), py::arg("stream"));
    m.def("laplace_m_chain", &laplace_m_chain, py::arg("params"), py::arg("t"), py::arg("dirs"),
          py::arg("budget"), py::arg("stream"));
    m.def("profile_a_tilde", &profile_a_tilde, py::arg("params"), py::arg("t"), py::arg("dir"),
          py::arg("budget"), py::arg("stream"));
    m.def(
        "coordinate_profile_phi",
        [](const BallParams& params, double t) { return coordinate_profile_phi(params, t); },
        py::arg("params"), py::arg("t"));
    m.def(
        "majorizes",
        [](const std::vector<double>& s, const std::vector<double>& r, double tol) {
            return majorizes(s, r, tol);
        },
        py::arg("s"), py::arg("r"), py::arg("tol") = 1e-9);
    m.def("convex_order_test", &convex_order_test, py::arg("params"), py::arg("theta"),
          py::arg("eta"), py::arg("grid"), py::arg("budget"), py::arg("stream"));
    m.def("schur_scan", &schur_scan, py::arg("params"), py::arg("t"), py::arg("chain"),
          py::arg("budget"), py::arg("stream"));
    m.def(
        "char_fn_phi", [](double p, double xi) { return char_fn_phi(p, xi); }, py::arg("p"),
        py::arg("xi"));
    m.def(
        "b_constant",
        [](double p, int k) {
            const EndpointConstants ec = b_constant(p, k);
            return py::make_tuple(ec.b, ec.err);
        },
        py::arg("p"), py::arg("k"));
    m.def(
        "endpoint_a0",
        [](const BallParams& params, int k) { return endpoint_a0(params, k); },
        py::arg("params"), py::arg("k"));
    m.def("cross_polytope_a0", &cross_polytope_a0, py::arg("n"), py::arg("k"));
    m.def(
        "chain_check",
        [](const BallParams& params, double t, long long budget, RngStream stream) {
            return chain_check(params, t, budget, stream);
        },
        py::arg("params"), py::arg("t"), py::arg("budget"), py::arg("stream"));
    m.def(
        "classify", [](const BallParams& params) { return classify(params); },
        py::arg("params"));
    m.def("threshold_n", &threshold_n, py::arg("p"));
    m.def("r_limit", &r_limit, py::arg("p"));
}
