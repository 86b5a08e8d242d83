#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fwdsmile/errors.hpp"
#include "fwdsmile/harness.hpp"
#include "fwdsmile/limit.hpp"
#include "fwdsmile/montecarlo.hpp"
#include "fwdsmile/price.hpp"
#include "fwdsmile/reference.hpp"
#include "fwdsmile/smile.hpp"

namespace py = pybind11;
using namespace fwdsmile;

namespace {

py::dict table_to_dict(const Table& tb) {
    py::dict d;
    for (std::size_t c = 0; c < tb.header.size(); ++c) {
        py::list col;
        for (const auto& row : tb.rows) {
            if (const double* x = std::get_if<double>(&row[c])) col.append(*x);
            else col.append(std::get<std::string>(row[c]));
        }
        d[py::str(tb.header[c])] = col;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Large-maturity Heston forward smile asymptotics";

    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<HestonParams>(m, "HestonParams")
        .def(py::init<double, double, double, double, double>(), py::arg("v"), py::arg("theta"),
             py::arg("kappa"), py::arg("xi"), py::arg("rho"))
        .def_readonly("v", &HestonParams::v)
        .def_readonly("theta", &HestonParams::theta)
        .def_readonly("kappa", &HestonParams::kappa)
        .def_readonly("xi", &HestonParams::xi)
        .def_readonly("rho", &HestonParams::rho)
        .def_property_readonly("mu", &HestonParams::mu);

    py::class_<ForwardContext>(m, "ForwardContext")
        .def(py::init<const HestonParams&, double>(), py::arg("params"), py::arg("t"))
        .def_property_readonly("t", &ForwardContext::t)
        .def_property_readonly("regime", [](const ForwardContext& c) { return to_string(c.regime()); })
        .def_property_readonly("beta_t", &ForwardContext::beta_t)
        .def_property_readonly("rho_minus", &ForwardContext::rho_minus)
        .def_property_readonly("rho_plus", &ForwardContext::rho_plus)
        .def_property_readonly("u_minus", &ForwardContext::u_minus)
        .def_property_readonly("u_plus", &ForwardContext::u_plus)
        .def_property_readonly("u_star_minus", &ForwardContext::u_star_minus)
        .def_property_readonly("u_star_plus", &ForwardContext::u_star_plus)
        .def_property_readonly("d_infinity", [](const ForwardContext& c) { return c.d_infinity().str(); });

    m.def("V", [](const ForwardContext& c, double u) { return limit_V(c, u); }, py::arg("ctx"), py::arg("u"));
    m.def("V_prime", [](const ForwardContext& c, double u) { return eval_V(c, u).V1; }, py::arg("ctx"),
          py::arg("u"));
    m.def("H", [](const ForwardContext& c, double u) { return eval_H(c, u).H; }, py::arg("ctx"), py::arg("u"));
    m.def("saddlepoint", &saddlepoint_u_star, py::arg("ctx"), py::arg("k"));
    m.def("rate_function", &fenchel_V_star, py::arg("ctx"), py::arg("k"));

    m.def("forward_call_asymptotic",
          [](const ForwardContext& c, double k, double tau) {
              const ExpansionResult r = forward_call_asymptotic(c, k, tau);
              py::dict d;
              d["combination"] = to_string(r.combination.tag);
              d["price"] = r.price;
              d["intrinsic"] = r.intrinsic;
              d["rate"] = r.rate;
              d["correction"] = r.correction;
              d["phi"] = r.combination.phi;
              d["alpha"] = r.combination.alpha;
              d["remainder_order"] = r.remainder_order;
              return d;
          },
          py::arg("ctx"), py::arg("k"), py::arg("tau"));

    m.def("forward_smile_asymptotic",
          [](const ForwardContext& c, double k, double tau) {
              const SmilePoint s = forward_smile_asymptotic(c, k, tau);
              py::dict d;
              d["combination"] = to_string(s.combination);
              d["v0"] = s.v0;
              d["v1"] = s.v1;
              d["lambda"] = s.lambda;
              d["remainder"] = to_string(s.remainder);
              d["sigma2"] = s.sigma2;
              return d;
          },
          py::arg("ctx"), py::arg("k"), py::arg("tau"));

    m.def("svi",
          [](const ForwardContext& c, double k) {
              const SviParams p = svi_limit_params(c, k);
              py::dict d;
              d["region"] = to_string(p.region);
              d["a"] = p.a;
              d["b"] = p.b;
              d["r"] = p.r;
              d["m"] = p.m;
              d["s"] = p.s;
              d["sigma2"] = sigma2_svi(k, p);
              return d;
          },
          py::arg("ctx"), py::arg("k"));

    m.def("forward_call_fourier",
          [](const ForwardContext& c, double k, double tau) { return forward_call_fourier(c, k, tau); },
          py::arg("ctx"), py::arg("k"), py::arg("tau"));
    m.def("implied_vol", [](double price, double k, double tau) { return implied_vol(price, k, tau); },
          py::arg("price"), py::arg("k"), py::arg("tau"));
    m.def("bs_price", &bs_price, py::arg("k"), py::arg("tau"), py::arg("sigma"));

    m.def("mc_forward_call",
          [](const HestonParams& p, double t, double tau, const std::vector<double>& ks, std::int64_t paths,
             int steps, std::uint64_t seed) {
              py::list out;
              for (const auto& e : mc_forward_call(p, t, tau, ks, paths, steps, seed))
                  out.append(py::make_tuple(e.k, e.price, e.std_error));
              return out;
          },
          py::arg("params"), py::arg("t"), py::arg("tau"), py::arg("ks"), py::arg("paths") = 100000,
          py::arg("steps") = 200, py::arg("seed") = 20240521);

    m.def("reproduce", [](const std::string& fig) { return table_to_dict(reproduce_figure(fig)); },
          py::arg("figure"));
}
