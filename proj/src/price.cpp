#include "fwdsmile/price.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fwdsmile/errors.hpp"
#include "fwdsmile/limit.hpp"

namespace fwdsmile {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

bool at(double k, double x) { return at_strike(k, x); }

double one_minus_gamma(const ForwardContext& ctx, double u) {
    const DGamma dg = eval_d_gamma(ctx, cplx(u, 0.0));
    return 1.0 - dg.gamma.real();
}

}  // namespace

std::string to_string(Combination c) {
    switch (c) {
        case Combination::H0: return "H0";
        case Combination::HtildePlus: return "Htilde+";
        case Combination::HtildeMinus: return "Htilde-";
        case Combination::HPlus: return "H+";
        case Combination::HMinus: return "H-";
        case Combination::H1: return "H1";
        case Combination::H2: return "H2";
    }
    return "?";
}

Exponents combination_exponents(Combination c, double mu) {
    switch (c) {
        case Combination::H0: return {0.5, 1.0, 0.0};
        case Combination::HtildePlus:
        case Combination::HtildeMinus: return {0.5 - mu / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        case Combination::HPlus:
        case Combination::HMinus: return {0.75 - mu / 2.0, 0.5, 0.5};
        case Combination::H1: return {-mu / 2.0, 0.5, 0.0};
        case Combination::H2: return {-mu, 1.0, 0.0};
    }
    throw InternalError("unhandled combination");
}

Combination combination_for_strike(const ForwardContext& ctx, double k) {
    const TransitionStrikes tr = transition_strikes(ctx);
    Combination c = Combination::H0;
    switch (ctx.regime()) {
        case Regime::R1:
            break;
        case Regime::R2:
            if (at(k, tr.k_crit)) c = Combination::HtildePlus;
            else if (k > tr.k_crit) c = Combination::HPlus;
            break;
        case Regime::R3a:
            if (at(k, tr.k_crit)) c = Combination::HtildeMinus;
            else if (k < tr.k_crit) c = Combination::HMinus;
            break;
        case Regime::R3b:
            if (at(k, tr.k_crit)) c = Combination::HtildeMinus;
            else if (k < tr.k_crit) c = Combination::HMinus;
            else if (at(k, tr.k1)) c = Combination::H1;
            else if (k > tr.k1) c = Combination::H2;
            break;
        case Regime::R4:
            if (at(k, tr.k1)) c = Combination::H1;
            else if (k > tr.k1) c = Combination::H2;
            break;
    }
    if (c == Combination::H0) check_degenerate_strike(ctx, tr, k);
    return c;
}

HpmCoeffs coeffs_Hpm(const ForwardContext& ctx, double k, int side) {
    const HestonParams& p = ctx.params();
    const double u = ctx.critical_u(side);
    const VDerivs vd = eval_V(ctx, u);
    const double V1 = vd.V1, V2 = vd.V2;
    const double D = k - V1;
    if (!(side * D > 0.0)) throw DomainError("strike is not beyond the critical strike on this side");
    const double E = std::exp(-p.kappa * ctx.t());
    const double kt = p.kappa * p.theta;
    const double b = ctx.beta_t();
    const double mu = ctx.mu();

    HpmCoeffs c{};
    c.zeta2 = 4.0 * b * std::sqrt(V1 * D * D * D / (kt * p.v * E));
    c.a1 = -side * 2.0 * std::abs(D) / c.zeta2;
    c.a2 = mu * E / (16.0 * b * b) * (p.xi * p.xi * p.v * V2 - 8.0 * b * b / E * V1 * D) / (V1 * D * D);
    c.e0 = -2.0 * b * c.a1 * V1;
    c.e1 = -b * (V2 * c.a1 * c.a1 + 2.0 * V1 * c.a2);
    c.c0 = -2.0 * c.a1 * D;
    c.c2 = std::pow(kt * one_minus_gamma(ctx, u) / c.e0, mu);
    c.c1 = p.v * E * (c.a1 * V1 / c.e0 - kt * c.e1 / (2.0 * c.e0 * c.e0 * b)) - c.a2 * D +
           0.5 * c.a1 * c.a1 * V2;
    c.phi = c.c2 * std::exp(c.c1) / (std::sqrt(c.zeta2) * u * (u - 1.0) * std::sqrt(2.0 * kPi));
    return c;
}

HtildeCoeffs coeffs_Htilde(const ForwardContext& ctx, int side) {
    const HestonParams& p = ctx.params();
    const double u = ctx.critical_u(side);
    const VDerivs vd = eval_V(ctx, u);
    const double V1 = vd.V1, V2 = vd.V2, V3 = vd.V3;
    const double E = std::exp(-p.kappa * ctx.t());
    const double kt = p.kappa * p.theta;
    const double b = ctx.beta_t();
    const double mu = ctx.mu();
    const double xi2 = p.xi * p.xi;

    HtildeCoeffs c{};
    c.a1t = -side * std::cbrt(std::abs(E * kt * p.v / (4.0 * V1 * V2 * b * b)));
    c.a2t = -std::pow(kt * E, 2.0 / 3.0) / (12.0 * xi2 * std::cbrt(p.v) * std::pow(b, 4.0 / 3.0)) *
            (16.0 * V1 * V2 * b * b / E + xi2 * p.v * V3) /
            (std::cbrt(2.0) * std::pow(std::abs(V1), 2.0 / 3.0) * std::pow(V2, 5.0 / 3.0));
    c.e0t = -2.0 * b * c.a1t * V1;
    c.e1t = -b * (V2 * c.a1t * c.a1t + 2.0 * V1 * c.a2t);
    c.c0t = 1.5 * c.a1t * c.a1t * V2;
    c.c2t = std::pow(kt * one_minus_gamma(ctx, u) / c.e0t, mu);
    c.c1t = p.v * E * (c.a1t * V1 / c.e0t - kt * c.e1t / (2.0 * c.e0t * c.e0t * b)) +
            c.a1t * c.a2t * V2 + c.a1t * c.a1t * c.a1t * V3 / 6.0;
    c.phit = c.c2t * std::exp(c.c1t) / (u * (u - 1.0) * std::sqrt(6.0 * kPi * V2));
    return c;
}

H12Coeffs coeffs_H12(const ForwardContext& ctx, double k) {
    if (ctx.regime() != Regime::R3b && ctx.regime() != Regime::R4)
        throw DomainError("H1/H2 coefficients require regime R3b or R4");
    const HestonParams& p = ctx.params();
    const double V1 = limit_V(ctx, 1.0);
    const double Dd = p.kappa * p.theta - 2.0 * ctx.beta_t() * V1;
    if (!(Dd > 0.0)) throw DomainError("kappa theta - 2 beta_t V(1) <= 0");
    const VDerivs vd = eval_V(ctx, 1.0);
    const double mu = ctx.mu();
    const double g = p.kappa - p.rho * p.xi;
    H12Coeffs c{};
    c.g0 = p.v * std::exp(-p.kappa * ctx.t()) * V1 / Dd;
    c.phi1 = -std::exp(c.g0) / (2.0 * std::tgamma(1.0 + mu / 2.0)) *
             std::pow(mu * g * g * std::sqrt(2.0 * vd.V2) / Dd, mu);
    c.phi2 = kNaN;
    if (k > vd.V1)
        c.phi2 = -std::exp(c.g0) / std::tgamma(1.0 + mu) * std::pow(2.0 * mu * g * g * (k - vd.V1) / Dd, mu);
    return c;
}

double phi0(const ForwardContext& ctx, double k) {
    if (combination_for_strike(ctx, k) != Combination::H0)
        throw DomainError("phi0 requires the H0 expansion at this strike");
    const TransitionStrikes tr = transition_strikes(ctx);
    for (int a : {0, 1}) {
        if (!at(k, a == 0 ? tr.k0 : tr.k1)) continue;
        const double ua = a;
        const VDerivs vd = eval_V(ctx, ua);
        const HDerivs hd = eval_H(ctx, ua);
        const double sg = k >= 0.0 ? 1.0 : -1.0;
        return (-1.0 - sg * (vd.V3 / (6.0 * vd.V2) - hd.H1)) / std::sqrt(2.0 * kPi * vd.V2);
    }
    const double u = saddlepoint_u_star(ctx, k);
    const VDerivs vd = eval_V(ctx, u);
    const HDerivs hd = eval_H(ctx, u);
    return std::exp(hd.H) / (u * (u - 1.0)) / std::sqrt(2.0 * kPi * vd.V2);
}

double intrinsic_I(double k, double tau, double a, double b, double c) {
    if (!(a < b)) throw DomainError("intrinsic function requires a < b");
    const double ek = std::exp(k * tau);
    double r = 0.0;
    if (k < a) r += 1.0 - ek;
    if (a < k && k < b) r += 1.0;
    if (b <= k) r += c;
    if (k == b) r += 0.5 * (1.0 - c);
    if (k == a) r += 1.0 - 0.5 * ek;
    return r;
}

CombinationSpec combination_spec(const ForwardContext& ctx, double k) {
    const Combination tag = combination_for_strike(ctx, k);
    const Exponents ex = combination_exponents(tag, ctx.mu());
    CombinationSpec s{tag, ex.alpha, ex.beta, ex.gamma, 0.0, 0.0};
    switch (tag) {
        case Combination::H0:
            s.phi = phi0(ctx, k);
            break;
        case Combination::HtildePlus:
        case Combination::HtildeMinus: {
            const HtildeCoeffs c = coeffs_Htilde(ctx, tag == Combination::HtildePlus ? 1 : -1);
            s.phi = c.phit;
            s.psi = c.c0t;
            break;
        }
        case Combination::HPlus:
        case Combination::HMinus: {
            const HpmCoeffs c = coeffs_Hpm(ctx, k, tag == Combination::HPlus ? 1 : -1);
            s.phi = c.phi;
            s.psi = c.c0;
            break;
        }
        case Combination::H1:
            s.phi = coeffs_H12(ctx, k).phi1;
            break;
        case Combination::H2:
            s.phi = coeffs_H12(ctx, k).phi2;
            break;
    }
    return s;
}

ExpansionResult forward_call_asymptotic(const ForwardContext& ctx, double k, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
    const TransitionStrikes tr = transition_strikes(ctx);
    k = snap_strike(tr, k);
    ExpansionResult r{};
    r.combination = combination_spec(ctx, k);
    const double c = ctx.params().kappa < ctx.params().rho * ctx.params().xi ? 1.0 : 0.0;
    r.intrinsic = intrinsic_I(k, tau, tr.k0, tr.k1, c);
    r.rate = fenchel_V_star(ctx, k) - k;
    r.correction = r.combination.psi * std::pow(tau, r.combination.gamma);
    r.log_prefactor = std::log(std::abs(r.combination.phi)) - r.combination.alpha * std::log(tau);
    const double sg = r.combination.phi < 0.0 ? -1.0 : 1.0;
    r.price = r.intrinsic + sg * std::exp(r.log_prefactor - tau * r.rate + r.correction);
    r.remainder_order = r.combination.beta;
    return r;
}

double bs_call_expansion(double k, double tau, double a, double b) {
    if (!(a > 0.0)) throw DomainError("variance rate a must be positive");
    if (!(tau > 0.0) || !(a + b / tau > 0.0)) throw DomainError("a + b / tau must be positive");
    const double rate = (k - 0.5 * a) * (k - 0.5 * a) / (2.0 * a);
    double phi;
    if (k == 0.5 * a || k == -0.5 * a)
        phi = (b - 2.0) / (2.0 * std::sqrt(2.0 * a * kPi));
    else
        phi = 4.0 * std::pow(a, 1.5) / ((4.0 * k * k - a * a) * std::sqrt(2.0 * kPi)) *
              std::exp(b * (k * k / (2.0 * a * a) - 0.125));
    return intrinsic_I(k, tau, -0.5 * a, 0.5 * a, 0.0) + phi / std::sqrt(tau) * std::exp(-tau * rate);
}

}  // namespace fwdsmile
