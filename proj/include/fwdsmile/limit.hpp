#pragma once

#include <complex>

#include "fwdsmile/heston.hpp"

namespace fwdsmile {

using cplx = std::complex<double>;

struct DGamma {
    cplx d;
    cplx gamma;
};

// d(u) with the Re(d) >= 0 branch and gamma(u) = (g - d)/(g + d), g = kappa - rho xi u.
DGamma eval_d_gamma(const ForwardContext& ctx, cplx u);

struct VDerivs {
    double V;
    double V1;
    double V2;
    double V3;
};

// Limiting lmgf and its first three derivatives on the open interval (u-, u+).
VDerivs eval_V(const ForwardContext& ctx, double u);

// V alone, valid on the closed interval [u-, u+].
double limit_V(const ForwardContext& ctx, double u);

struct HDerivs {
    double H;
    double H1;
};

HDerivs eval_H(const ForwardContext& ctx, double u);

// Unique solution of V'(u) = k.
double saddlepoint_u_star(const ForwardContext& ctx, double k);

// Fenchel-Legendre transform of V over D-infinity.
double fenchel_V_star(const ForwardContext& ctx, double k);

struct UpsilonValue {
    double value;
    bool degenerate;  // v == theta * Upsilon(a) to 1e-12 relative
};

UpsilonValue upsilon(const ForwardContext& ctx, int a);

// Leading coefficient of u*_tau(V'(a)) = a + alpha_a / tau + O(tau^-2).
double alpha_coeff(const ForwardContext& ctx, int a);

// Strikes where the applicable expansion changes.
struct TransitionStrikes {
    double k0;          // V'(0)
    double k1;          // V'(1); +inf when u+ = 1
    double k_crit;      // V'(u*+) in R2, V'(u*-) in R3, NaN otherwise
};

TransitionStrikes transition_strikes(const ForwardContext& ctx);

constexpr double kStrikeTol = 1e-12;

// Snaps k onto a transition strike lying within kStrikeTol of it.
double snap_strike(const TransitionStrikes& tr, double k);

bool at_strike(double k, double x);

// Throws DegenerateError if k sits on V'(a) and v = theta Upsilon(a).
void check_degenerate_strike(const ForwardContext& ctx, const TransitionStrikes& tr, double k);

}  // namespace fwdsmile
