#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "armax_reach/bench.hpp"
#include "armax_reach/conversion.hpp"
#include "armax_reach/reach.hpp"
#include "armax_reach/sampling.hpp"

namespace py = pybind11;
using namespace armax_reach;

namespace {

InitialOutputs to_initial(const std::vector<Eigen::VectorXd>& ys) {
  return InitialOutputs::from_vectors(ys);
}

Eigen::MatrixXd polygon_matrix(const SymbolicZonotope& z, Eigen::Index dx, Eigen::Index dy) {
  const auto vertices = project_polygon(z, dx, dy);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(vertices.size()), 2);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = vertices[i].transpose();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Set-based reachability of ARMAX input-output models";

  py::class_<LabelRegistry, std::shared_ptr<LabelRegistry>>(m, "LabelRegistry")
      .def(py::init<>())
      .def("fresh", &LabelRegistry::fresh)
      .def("fresh_block", &LabelRegistry::fresh_block, py::arg("count"));

  py::class_<Zonotope>(m, "Zonotope")
      .def(py::init([](Eigen::VectorXd c, Eigen::MatrixXd g) {
             Zonotope z{std::move(c), std::move(g)};
             z.validate();
             return z;
           }),
           py::arg("center"), py::arg("generators"))
      .def_readonly("center", &Zonotope::center)
      .def_readonly("generators", &Zonotope::generators);

  py::class_<IntervalHull>(m, "IntervalHull")
      .def_readonly("lower", &IntervalHull::lower)
      .def_readonly("upper", &IntervalHull::upper)
      .def("width", &IntervalHull::width);

  py::class_<SymbolicZonotope>(m, "SymbolicZonotope")
      .def(py::init<Eigen::VectorXd, Eigen::MatrixXd, std::vector<Label>>(),
           py::arg("center"), py::arg("generators"), py::arg("labels"))
      .def_static("point", &SymbolicZonotope::point, py::arg("center"))
      .def_property_readonly("center", &SymbolicZonotope::center)
      .def_property_readonly("generators", &SymbolicZonotope::generators)
      .def_property_readonly("labels", &SymbolicZonotope::labels)
      .def_property_readonly("dim", &SymbolicZonotope::dim)
      .def_property_readonly("num_generators", &SymbolicZonotope::num_generators)
      .def("point_from_factors", &SymbolicZonotope::point_from_factors, py::arg("factors"));

  m.def("to_symbolic", &to_symbolic, py::arg("zonotope"), py::arg("registry"));
  m.def("exact_add", &exact_add, py::arg("a"), py::arg("b"));
  m.def("minkowski_sum", &minkowski_sum, py::arg("a"), py::arg("b"));
  m.def("linear_map", &linear_map, py::arg("matrix"), py::arg("z"));
  m.def("cartesian_product", &cartesian_product, py::arg("a"), py::arg("b"));
  m.def("interval_hull", py::overload_cast<const SymbolicZonotope&>(&interval_hull),
        py::arg("z"));
  m.def("compact", &compact, py::arg("z"), py::arg("tol") = 1e-14);
  m.def("relabel_fresh", &relabel_fresh, py::arg("z"), py::arg("registry"));
  m.def("contains_point", &contains_point, py::arg("z"), py::arg("point"),
        py::arg("tol") = 1e-9);
  m.def("project_polygon", &polygon_matrix, py::arg("z"), py::arg("dim_x"), py::arg("dim_y"));

  py::class_<StateSpaceModel>(m, "StateSpaceModel")
      .def(py::init([](Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c,
                       Eigen::MatrixXd d) {
             StateSpaceModel ss{std::move(a), std::move(b), std::move(c), std::move(d)};
             ss.validate();
             return ss;
           }),
           py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"))
      .def_readonly("A", &StateSpaceModel::A)
      .def_readonly("B", &StateSpaceModel::B)
      .def_readonly("C", &StateSpaceModel::C)
      .def_readonly("D", &StateSpaceModel::D);

  py::class_<ArmaxModel>(m, "ArmaxModel")
      .def(py::init([](int p, Eigen::Index n_u, Eigen::Index n_w, Eigen::Index n_v,
                       std::vector<Eigen::MatrixXd> a_bar, std::vector<Eigen::MatrixXd> b_bar) {
             ArmaxModel mm;
             mm.p = p;
             mm.n_u = n_u;
             mm.n_w = n_w;
             mm.n_v = n_v;
             mm.n_y = a_bar.empty() ? 0 : a_bar.front().rows();
             mm.a_bar = std::move(a_bar);
             mm.b_bar = std::move(b_bar);
             mm.validate();
             return mm;
           }),
           py::arg("p"), py::arg("n_u"), py::arg("n_w"), py::arg("n_v"), py::arg("A_bar"),
           py::arg("B_bar"))
      .def_readonly("p", &ArmaxModel::p)
      .def_readonly("n_y", &ArmaxModel::n_y)
      .def_readonly("n_u", &ArmaxModel::n_u)
      .def_readonly("n_w", &ArmaxModel::n_w)
      .def_readonly("n_v", &ArmaxModel::n_v)
      .def_readonly("A_bar", &ArmaxModel::a_bar)
      .def_readonly("B_bar", &ArmaxModel::b_bar);

  m.def("observability_index", &observability_index, py::arg("ss"));
  m.def("deadbeat_gain", &deadbeat_gain, py::arg("ss"), py::arg("p"));
  m.def("deadbeat_residual", &deadbeat_residual, py::arg("ss"), py::arg("M"), py::arg("p"));
  m.def("ss_to_armax", &ss_to_armax, py::arg("ss"), py::arg("M"), py::arg("p"));
  m.def(
      "simulate_ss",
      [](const StateSpaceModel& ss, const Eigen::VectorXd& x0,
         const std::vector<Eigen::VectorXd>& u, const std::vector<Eigen::VectorXd>& w,
         const std::vector<Eigen::VectorXd>& v, int horizon) {
        return simulate_ss(ss, x0, u, w, v, horizon);
      },
      py::arg("ss"), py::arg("x0"), py::arg("u"), py::arg("w"), py::arg("v"),
      py::arg("horizon"));
  m.def(
      "simulate_armax",
      [](const ArmaxModel& mm, const std::vector<Eigen::VectorXd>& y_init,
         const std::vector<Eigen::VectorXd>& utilde, int horizon) {
        return simulate_armax(mm, to_initial(y_init), utilde, horizon);
      },
      py::arg("model"), py::arg("y_init"), py::arg("utilde"), py::arg("horizon"));

  py::class_<SetChannel>(m, "SetChannel")
      .def_static("constant", &SetChannel::constant, py::arg("set"))
      .def_static("per_step", &SetChannel::per_step, py::arg("sets"))
      .def_static("constant_point", &SetChannel::constant_point, py::arg("center"));

  py::class_<InputDecomposition>(m, "InputDecomposition")
      .def(py::init([](Zonotope u_c, std::vector<Eigen::VectorXd> u_v, bool constant) {
             InputDecomposition d;
             d.u_c = std::move(u_c);
             d.u_v = std::move(u_v);
             d.u_v_constant = constant;
             return d;
           }),
           py::arg("u_c"), py::arg("u_v"), py::arg("constant") = true);

  py::class_<UncertaintySpec>(m, "UncertaintySpec")
      .def(py::init<SetChannel, SetChannel, SetChannel, std::shared_ptr<LabelRegistry>>(),
           py::arg("u"), py::arg("w"), py::arg("v"),
           py::arg("registry") = std::shared_ptr<LabelRegistry>())
      .def("combined", &UncertaintySpec::combined, py::arg("k"),
           py::return_value_policy::copy)
      .def("set_decomposition", &UncertaintySpec::set_decomposition, py::arg("decomposition"));

  py::class_<ReachResult>(m, "ReachResult")
      .def_readonly("method", &ReachResult::method)
      .def_readonly("first_k", &ReachResult::first_k)
      .def_readonly("sets", &ReachResult::sets)
      .def_readonly("hulls", &ReachResult::hulls)
      .def_readonly("iteration_seconds", &ReachResult::iteration_seconds)
      .def_readonly("aux_generator_counts", &ReachResult::aux_generator_counts)
      .def("last_k", &ReachResult::last_k)
      .def("set_at", &ReachResult::set_at, py::arg("k"))
      .def("hull_at", &ReachResult::hull_at, py::arg("k"));

  m.def(
      "reach_dependent",
      [](const ArmaxModel& mm, const std::vector<Eigen::VectorXd>& y_init,
         UncertaintySpec& spec, int k_h) {
        return reach_dependent(mm, to_initial(y_init), spec, k_h);
      },
      py::arg("model"), py::arg("y_init"), py::arg("spec"), py::arg("k_h"));
  m.def(
      "reach_dependent_dp",
      [](const ArmaxModel& mm, const std::vector<Eigen::VectorXd>& y_init,
         UncertaintySpec& spec, int k_h) {
        return reach_dependent_dp(mm, to_initial(y_init), spec, k_h);
      },
      py::arg("model"), py::arg("y_init"), py::arg("spec"), py::arg("k_h"));
  m.def(
      "reach_oneshot",
      [](const ArmaxModel& mm, const std::vector<Eigen::VectorXd>& y_init,
         UncertaintySpec& spec, int k) {
        return reach_oneshot(mm, to_initial(y_init), spec, k);
      },
      py::arg("model"), py::arg("y_init"), py::arg("spec"), py::arg("k"));
  m.def("unstack", &unstack, py::arg("stacked"), py::arg("p"));
  m.def(
      "reach_alg1",
      [](const ArmaxModel& mm, const std::vector<Eigen::VectorXd>& y_init,
         UncertaintySpec& spec, int k_init, int k_h) {
        return reach_alg1(mm, to_initial(y_init), spec, k_init, k_h);
      },
      py::arg("model"), py::arg("y_init"), py::arg("spec"), py::arg("k_init"), py::arg("k_h"));
  m.def(
      "reach_alg2",
      [](const ArmaxModel& mm, const std::vector<Eigen::VectorXd>& y_init,
         UncertaintySpec& spec, int k_init, int k_h) {
        return reach_alg2(mm, to_initial(y_init), spec, k_init, k_h);
      },
      py::arg("model"), py::arg("y_init"), py::arg("spec"), py::arg("k_init"), py::arg("k_h"));
  m.def("reach_ss", &reach_ss, py::arg("ss"), py::arg("x0"), py::arg("spec"), py::arg("k"));
  m.def(
      "estimate_initial_state_set",
      [](const StateSpaceModel& ss, const std::vector<Eigen::VectorXd>& y_init,
         UncertaintySpec& spec, int p) {
        return estimate_initial_state_set(ss, to_initial(y_init), spec, p);
      },
      py::arg("ss"), py::arg("y_init"), py::arg("spec"), py::arg("p"));

  py::class_<SampleRun>(m, "SampleRun")
      .def_readonly("sample_index", &SampleRun::sample_index)
      .def_readonly("u", &SampleRun::u)
      .def_readonly("w", &SampleRun::w)
      .def_readonly("v", &SampleRun::v)
      .def_readonly("y", &SampleRun::y)
      .def_readonly("reformulation_error", &SampleRun::reformulation_error);

  py::class_<ContainmentReport>(m, "ContainmentReport")
      .def_readonly("first_k", &ContainmentReport::first_k)
      .def_readonly("total", &ContainmentReport::total)
      .def_readonly("fraction", &ContainmentReport::fraction)
      .def("min_fraction", &ContainmentReport::min_fraction);

  m.def(
      "run_samples",
      [](const ArmaxModel& mm, const std::vector<Eigen::VectorXd>& y_init,
         UncertaintySpec& spec, int k_h, int n_samples, std::uint64_t seed) {
        return run_samples(mm, to_initial(y_init), spec, k_h, n_samples, seed);
      },
      py::arg("model"), py::arg("y_init"), py::arg("spec"), py::arg("k_h"),
      py::arg("n_samples"), py::arg("seed"));
  m.def("containment_report", &containment_report, py::arg("runs"), py::arg("result"),
        py::arg("tol") = 1e-7);
}
