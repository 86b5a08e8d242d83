#include "fwdsmile/smile.hpp"

#include <cmath>

#include "fwdsmile/errors.hpp"
#include "fwdsmile/limit.hpp"
#include "fwdsmile/price.hpp"

namespace fwdsmile {

std::string to_string(SmileCombination c) {
    switch (c) {
        case SmileCombination::P0: return "P0";
        case SmileCombination::PtildePlus: return "Ptilde+";
        case SmileCombination::PtildeMinus: return "Ptilde-";
        case SmileCombination::PPlus: return "P+";
        case SmileCombination::PMinus: return "P-";
        case SmileCombination::P1: return "P1";
    }
    return "?";
}

std::string to_string(RemainderClass r) {
    switch (r) {
        case RemainderClass::BigO2Lambda: return "O(tau^-2lambda)";
        case RemainderClass::LittleOLambda: return "o(tau^-lambda)";
        case RemainderClass::LittleO1: return "o(1)";
    }
    return "?";
}

std::string to_string(SviRegion r) {
    switch (r) {
        case SviRegion::S0: return "S0";
        case SviRegion::SPlus: return "S+";
        case SviRegion::SMinus: return "S-";
        case SviRegion::S1: return "S1";
    }
    return "?";
}

SmileCombination smile_combination_for_strike(const ForwardContext& ctx, double k) {
    switch (combination_for_strike(ctx, k)) {
        case Combination::H0: return SmileCombination::P0;
        case Combination::HtildePlus: return SmileCombination::PtildePlus;
        case Combination::HtildeMinus: return SmileCombination::PtildeMinus;
        case Combination::HPlus: return SmileCombination::PPlus;
        case Combination::HMinus: return SmileCombination::PMinus;
        case Combination::H1:
        case Combination::H2: return SmileCombination::P1;
    }
    throw InternalError("unhandled combination");
}

double v0_infty(const ForwardContext& ctx, double k) {
    const TransitionStrikes tr = transition_strikes(ctx);
    const HestonParams& p = ctx.params();
    const double vs = fenchel_V_star(ctx, k);
    double z = 1.0;
    if (k < tr.k0) z = -1.0;
    else if (k > tr.k1) z = p.rho * p.xi - p.kappa >= 0.0 ? 1.0 : -1.0;
    const double rad = std::max(vs * (vs - k), 0.0);
    return 2.0 * (2.0 * vs - k + 2.0 * z * std::sqrt(rad));
}

FirstOrder v1_infty(const ForwardContext& ctx, double k) {
    const TransitionStrikes tr = transition_strikes(ctx);
    k = snap_strike(tr, k);
    const SmileCombination comb = smile_combination_for_strike(ctx, k);
    FirstOrder out{comb, 0.0, 0.0, RemainderClass::LittleO1};
    if (comb == SmileCombination::P1) return out;

    const double v0 = v0_infty(ctx, k);
    double chi = 0.0;
    switch (comb) {
        case SmileCombination::P0: {
            out.lambda = 1.0;
            out.remainder = RemainderClass::BigO2Lambda;
            for (int a : {0, 1}) {
                if (!at_strike(k, a == 0 ? tr.k0 : tr.k1)) continue;
                const VDerivs vd = eval_V(ctx, a);
                const HDerivs hd = eval_H(ctx, a);
                const double sg = k >= 0.0 ? 1.0 : -1.0;
                out.v1 = 2.0 * (1.0 - std::sqrt(v0 / vd.V2) * (1.0 + sg * (vd.V3 / (6.0 * vd.V2) - hd.H1)));
                return out;
            }
            const double u = saddlepoint_u_star(ctx, k);
            const VDerivs vd = eval_V(ctx, u);
            const HDerivs hd = eval_H(ctx, u);
            chi = hd.H + std::log((4.0 * k * k - v0 * v0) /
                                  (4.0 * (u - 1.0) * u * std::pow(v0, 1.5) * std::sqrt(vd.V2)));
            break;
        }
        case SmileCombination::PtildePlus:
        case SmileCombination::PtildeMinus:
            out.lambda = 2.0 / 3.0;
            out.remainder = RemainderClass::LittleOLambda;
            chi = coeffs_Htilde(ctx, comb == SmileCombination::PtildePlus ? 1 : -1).c0t;
            break;
        case SmileCombination::PPlus:
        case SmileCombination::PMinus:
            out.lambda = 0.5;
            out.remainder = std::abs(ctx.mu() - 0.5) < 1e-12 ? RemainderClass::BigO2Lambda
                                                              : RemainderClass::LittleOLambda;
            chi = coeffs_Hpm(ctx, k, comb == SmileCombination::PPlus ? 1 : -1).c0;
            break;
        case SmileCombination::P1:
            break;
    }
    const double den = 4.0 * k * k - v0 * v0;
    if (den == 0.0) throw DomainError("4k^2 - v0^2 vanishes");
    out.v1 = 8.0 * v0 * v0 / den * chi;
    return out;
}

SmilePoint forward_smile_asymptotic(const ForwardContext& ctx, double k, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
    const FirstOrder f = v1_infty(ctx, k);
    SmilePoint sp{};
    sp.k = k;
    sp.tau = tau;
    sp.v0 = v0_infty(ctx, k);
    sp.v1 = f.v1;
    sp.lambda = f.lambda;
    sp.combination = f.combination;
    sp.remainder = f.remainder;
    sp.sigma2 = sp.v0 + sp.v1 * std::pow(tau, -sp.lambda);
    return sp;
}

namespace {

SviParams svi_s0(const ForwardContext& ctx) {
    const HestonParams& p = ctx.params();
    const double r2 = 1.0 - p.rho * p.rho;
    const double g = 2.0 * p.kappa - p.rho * p.xi;
    const double w1 = 2.0 * ctx.mu() / r2 * (std::sqrt(g * g + p.xi * p.xi * r2) - g);
    const double w2 = p.xi / (p.kappa * p.theta);
    return {SviRegion::S0, w1 * r2 / 2.0, w1 * w2 / 2.0, p.rho, -p.rho / w2, std::sqrt(r2) / w2, 1.0, 1.0, 0.0};
}

SviParams svi_spm(const ForwardContext& ctx, int side) {
    const double u = ctx.critical_u(side);
    const double kt = ctx.params().kappa * ctx.params().theta;
    const double a = kt / (2.0 * (u - 1.0) * u * ctx.beta_t());
    const double b = 4.0 * std::sqrt((u - 1.0) * u);
    return {side > 0 ? SviRegion::SPlus : SviRegion::SMinus,
            a, b, 2.0 * (2.0 * u - 1.0) / b, (u - 0.5) * a, a / 2.0, -1.0, 1.0, 0.0};
}

SviParams svi_s1(const ForwardContext& ctx) {
    const HestonParams& p = ctx.params();
    const double m = ctx.mu() * (p.kappa - p.rho * p.xi);
    return {SviRegion::S1, -2.0 * m, 4.0 * std::sqrt(-m), 1.0 / (2.0 * std::sqrt(-m)), m, 0.0, 1.0, 0.0, 1.0};
}

}  // namespace

SviParams svi_limit_params(const ForwardContext& ctx, double k) {
    const TransitionStrikes tr = transition_strikes(ctx);
    k = snap_strike(tr, k);
    SviRegion region = SviRegion::S0;
    switch (ctx.regime()) {
        case Regime::R1:
            break;
        case Regime::R2:
            if (k >= tr.k_crit) region = SviRegion::SPlus;
            break;
        case Regime::R3a:
            if (k <= tr.k_crit) region = SviRegion::SMinus;
            break;
        case Regime::R3b:
            if (k <= tr.k_crit) region = SviRegion::SMinus;
            else if (k >= tr.k1) region = SviRegion::S1;
            break;
        case Regime::R4:
            if (k >= tr.k1) region = SviRegion::S1;
            break;
    }
    switch (region) {
        case SviRegion::S0:
            check_degenerate_strike(ctx, tr, k);
            return svi_s0(ctx);
        case SviRegion::SPlus: return svi_spm(ctx, 1);
        case SviRegion::SMinus: return svi_spm(ctx, -1);
        case SviRegion::S1: return svi_s1(ctx);
    }
    throw InternalError("unhandled SVI region");
}

double sigma2_svi(double k, const SviParams& p) {
    const double x = k - p.m;
    double rad = p.i1 * x * x + p.i2 * x + p.i0 * p.s * p.s;
    const double scale = p.i1 * x * x + std::abs(p.i2 * x) + p.s * p.s;
    if (rad < 0.0 && rad > -1e-13 * scale) rad = 0.0;
    return p.a + p.b * (p.r * x + p.i0 * std::sqrt(rad));
}

}  // namespace fwdsmile
