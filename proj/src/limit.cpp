#include "fwdsmile/limit.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fwdsmile/errors.hpp"

namespace fwdsmile {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct DReal {
    double d, d1, d2, d3;
    double gpd;  // g + d
    double gmd;  // g - d
};

double radicand(const HestonParams& p, double u) {
    const double g = p.kappa - p.rho * p.xi * u;
    return g * g + u * (1.0 - u) * p.xi * p.xi;
}

// g +- d computed without cancellation, using d^2 - g^2 = u (1 - u) xi^2.
void fill_g_terms(const HestonParams& p, double u, DReal& r) {
    const double g = p.kappa - p.rho * p.xi * u;
    const double w = u * (1.0 - u) * p.xi * p.xi;
    r.gpd = g >= 0.0 ? g + r.d : w / (r.d - g);
    r.gmd = g <= 0.0 ? g - r.d : -w / (g + r.d);
}

DReal d_open(const ForwardContext& ctx, double u) {
    const HestonParams& p = ctx.params();
    if (!(u > ctx.u_minus() && u < ctx.u_plus()))
        throw DomainError("u outside the open interval (u-, u+)");
    const double xi2 = p.xi * p.xi;
    const double q = radicand(p, u);
    if (!(q > 0.0)) throw DomainError("d(u) vanishes");
    const double q1 = -2.0 * xi2 * (1.0 - p.rho * p.rho) * u + xi2 - 2.0 * p.kappa * p.rho * p.xi;
    const double q2 = -2.0 * xi2 * (1.0 - p.rho * p.rho);
    DReal r{};
    r.d = std::sqrt(q);
    r.d1 = q1 / (2.0 * r.d);
    r.d2 = (0.5 * q2 - r.d1 * r.d1) / r.d;
    r.d3 = -3.0 * r.d1 * r.d2 / r.d;
    fill_g_terms(p, u, r);
    return r;
}

}  // namespace

DGamma eval_d_gamma(const ForwardContext& ctx, cplx u) {
    const HestonParams& p = ctx.params();
    const cplx g = p.kappa - p.rho * p.xi * u;
    const cplx d = std::sqrt(g * g + u * (1.0 - u) * p.xi * p.xi);
    return {d, (g - d) / (g + d)};
}

VDerivs eval_V(const ForwardContext& ctx, double u) {
    const HestonParams& p = ctx.params();
    const DReal r = d_open(ctx, u);
    const double h = 0.5 * ctx.mu();
    return {h * r.gmd, h * (-p.rho * p.xi - r.d1), -h * r.d2, -h * r.d3};
}

double limit_V(const ForwardContext& ctx, double u) {
    const HestonParams& p = ctx.params();
    const double tol = 1e-12 * (1.0 + std::abs(u));
    if (u < ctx.u_minus() - tol || u > ctx.u_plus() + tol)
        throw DomainError("u outside [u-, u+]");
    DReal r{};
    r.d = std::sqrt(std::max(radicand(p, u), 0.0));
    fill_g_terms(p, u, r);
    if (r.d == 0.0) r.gmd = p.kappa - p.rho * p.xi * u;
    return 0.5 * ctx.mu() * r.gmd;
}

HDerivs eval_H(const ForwardContext& ctx, double u) {
    const HestonParams& p = ctx.params();
    const DReal r = d_open(ctx, u);
    const double h = 0.5 * ctx.mu();
    const double V = h * r.gmd;
    const double V1 = h * (-p.rho * p.xi - r.d1);
    const double kt = p.kappa * p.theta;
    const double D = kt - 2.0 * ctx.beta_t() * V;
    if (!(D > 0.0)) throw DomainError("kappa theta - 2 beta_t V(u) <= 0");
    if (!(r.gpd > 0.0)) throw DomainError("1 - gamma(u) <= 0");
    const double ve = p.v * std::exp(-p.kappa * ctx.t());
    const double mu = ctx.mu();
    HDerivs out{};
    out.H = V * ve / D - mu * (std::log(D / kt) + std::log(r.gpd / (2.0 * r.d)));
    out.H1 = ve * kt * V1 / (D * D) +
             mu * (2.0 * ctx.beta_t() * V1 / D + r.d1 / r.d - (r.d1 - p.rho * p.xi) / r.gpd);
    return out;
}

double saddlepoint_u_star(const ForwardContext& ctx, double k) {
    const HestonParams& p = ctx.params();
    const double kt = p.kappa * p.theta;
    const double s = std::sqrt(k * k * p.xi * p.xi + 2.0 * k * kt * p.rho * p.xi + kt * kt);
    return (p.xi - 2.0 * p.kappa * p.rho + (kt * p.rho + k * p.xi) * ctx.eta_const() / s) /
           (2.0 * p.xi * (1.0 - p.rho * p.rho));
}

double fenchel_V_star(const ForwardContext& ctx, double k) {
    auto W = [&](double u) { return u * k - limit_V(ctx, u); };
    const auto tr = transition_strikes(ctx);
    switch (ctx.regime()) {
        case Regime::R1:
            return W(saddlepoint_u_star(ctx, k));
        case Regime::R2:
            return k <= tr.k_crit ? W(saddlepoint_u_star(ctx, k)) : W(*ctx.u_star_plus());
        case Regime::R3a:
            return k < tr.k_crit ? W(*ctx.u_star_minus()) : W(saddlepoint_u_star(ctx, k));
        case Regime::R3b:
            if (k < tr.k_crit) return W(*ctx.u_star_minus());
            if (k <= tr.k1) return W(saddlepoint_u_star(ctx, k));
            return W(1.0);
        case Regime::R4:
            return k <= tr.k1 ? W(saddlepoint_u_star(ctx, k)) : W(1.0);
    }
    throw InternalError("unhandled regime");
}

UpsilonValue upsilon(const ForwardContext& ctx, int a) {
    const HestonParams& p = ctx.params();
    if (a != 0 && a != 1) throw DomainError("Upsilon is defined for a in {0, 1}");
    double val = 1.0;
    if (a == 1) {
        const double den = p.kappa - p.rho * p.xi;
        if (den == 0.0) throw DomainError("Upsilon(1) undefined when kappa = rho xi");
        val = 1.0 + p.rho * p.xi * std::exp(p.kappa * ctx.t()) / den;
    }
    const double target = p.theta * val;
    const bool degenerate = std::abs(p.v - target) <= 1e-12 * std::max(std::abs(p.v), std::abs(target));
    return {val, degenerate};
}

double alpha_coeff(const ForwardContext& ctx, int a) {
    const HestonParams& p = ctx.params();
    const double eta2 = ctx.eta_const() * ctx.eta_const();
    const double e = std::exp(-p.kappa * ctx.t());
    if (a == 0) return 2.0 * e * (p.v - p.theta) * p.kappa / (p.theta * eta2);
    const double g = p.kappa - p.rho * p.xi;
    return 2.0 * e * g * g / (p.kappa * p.theta * eta2) * (p.theta * upsilon(ctx, 1).value - p.v);
}

TransitionStrikes transition_strikes(const ForwardContext& ctx) {
    TransitionStrikes tr{};
    tr.k0 = -0.5 * ctx.params().theta;
    tr.k1 = ctx.u_plus() > 1.0 ? eval_V(ctx, 1.0).V1 : kInf;
    tr.k_crit = kNaN;
    if (ctx.regime() == Regime::R2) tr.k_crit = eval_V(ctx, *ctx.u_star_plus()).V1;
    if (ctx.regime() == Regime::R3a || ctx.regime() == Regime::R3b)
        tr.k_crit = eval_V(ctx, *ctx.u_star_minus()).V1;
    return tr;
}

bool at_strike(double k, double x) { return std::isfinite(x) && std::abs(k - x) <= kStrikeTol; }

double snap_strike(const TransitionStrikes& tr, double k) {
    for (double x : {tr.k0, tr.k1, tr.k_crit})
        if (at_strike(k, x)) return x;
    return k;
}

void check_degenerate_strike(const ForwardContext& ctx, const TransitionStrikes& tr, double k) {
    for (int a : {0, 1}) {
        if (at_strike(k, a == 0 ? tr.k0 : tr.k1) && upsilon(ctx, a).degenerate)
            throw DegenerateError("strike V'(" + std::to_string(a) +
                                  ") is excluded when v = theta * Upsilon(" + std::to_string(a) + ")");
    }
}

}  // namespace fwdsmile
