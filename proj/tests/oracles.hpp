#pragma once

// Independent re-implementations used as oracles by the tests. Nothing here
// calls into the library's numerical code.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "fwdsmile/heston.hpp"

namespace oracle {

using cplx = std::complex<double>;

struct NamedSet {
    std::string name;
    fwdsmile::HestonParams p;
    double t;
};

// One parameter set per regime.
inline std::vector<NamedSet> regime_sets() {
    using fwdsmile::HestonParams;
    return {
        {"R1", HestonParams(0.07, 0.07, 1.5, 0.34, -0.25), 1.0},
        {"R2", HestonParams(0.07, 0.07, 1.5, 0.65, -0.8), 1.0},
        {"R3a", HestonParams(0.07, 0.07, 3.0, 0.8, 0.75), 2.0},
        {"R3b", HestonParams(0.07, 0.07, 1.0, 1.2, 0.9), 2.0},
        {"R4", HestonParams(0.07, 0.07, 0.1, 0.6, 0.5), 0.0},
    };
}

// Limiting lmgf written directly from its definition, valid for complex u.
inline cplx V(const fwdsmile::HestonParams& p, cplx u) {
    const cplx g = p.kappa - p.rho * p.xi * u;
    const cplx d = std::sqrt(g * g + u * (1.0 - u) * p.xi * p.xi);
    return p.kappa * p.theta / (p.xi * p.xi) * (g - d);
}

inline cplx H(const fwdsmile::HestonParams& p, double t, cplx u) {
    const double mu = 2.0 * p.kappa * p.theta / (p.xi * p.xi);
    const double beta = p.xi * p.xi / (4.0 * p.kappa) * (1.0 - std::exp(-p.kappa * t));
    const cplx g = p.kappa - p.rho * p.xi * u;
    const cplx d = std::sqrt(g * g + u * (1.0 - u) * p.xi * p.xi);
    const cplx v = V(p, u);
    const cplx D = p.kappa * p.theta - 2.0 * beta * v;
    const cplx gamma = (g - d) / (g + d);
    return v * p.v * std::exp(-p.kappa * t) / D - mu * std::log(D / (p.kappa * p.theta * (1.0 - gamma)));
}

// Truncated Taylor series f(x + e) = c0 + c1 e + c2 e^2 + c3 e^3; exact
// derivatives to rounding, the higher-order analogue of the complex step.
struct Jet {
    double c[4];
};

inline Jet operator+(Jet a, Jet b) { return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]}}; }
inline Jet operator-(Jet a, Jet b) { return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]}}; }
inline Jet operator*(double s, Jet a) { return {{s * a.c[0], s * a.c[1], s * a.c[2], s * a.c[3]}}; }
inline Jet operator+(double s, Jet a) { return {{s + a.c[0], a.c[1], a.c[2], a.c[3]}}; }
inline Jet operator*(Jet a, Jet b) {
    Jet r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; i + j < 4; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}
inline Jet sqrt(Jet a) {
    Jet s{};
    s.c[0] = std::sqrt(a.c[0]);
    s.c[1] = a.c[1] / (2 * s.c[0]);
    s.c[2] = (a.c[2] - s.c[1] * s.c[1]) / (2 * s.c[0]);
    s.c[3] = (a.c[3] - 2 * s.c[1] * s.c[2]) / (2 * s.c[0]);
    return s;
}

// V and its first three derivatives at real u.
inline std::array<double, 4> V_jet(const fwdsmile::HestonParams& p, double u0) {
    const Jet u{{u0, 1.0, 0.0, 0.0}};
    const Jet g = p.kappa + (-p.rho * p.xi) * u;
    const Jet d = sqrt(g * g + (p.xi * p.xi) * (u * (1.0 + (-1.0) * u)));
    const Jet v = (p.kappa * p.theta / (p.xi * p.xi)) * (g - d);
    return {v.c[0], v.c[1], 2 * v.c[2], 6 * v.c[3]};
}

// Complex-step first derivative of a holomorphic f at real x.
template <class F>
double complex_step(F&& f, double x, double h = 1e-30) {
    return std::imag(f(cplx(x, h))) / h;
}

// Five-point central first and second derivatives.
template <class F>
double fd1(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

template <class F>
double fd2(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Black-Scholes call on a unit forward, strike exp(k tau).
inline double bs_call(double k, double tau, double sigma) {
    const double s = sigma * std::sqrt(tau);
    const double d1 = -k * tau / s + s / 2.0;
    return norm_cdf(d1) - std::exp(k * tau) * norm_cdf(d1 - s);
}

}  // namespace oracle
