#include "fwdsmile/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "fwdsmile/errors.hpp"
#include "fwdsmile/limit.hpp"
#include "fwdsmile/price.hpp"

namespace fwdsmile {

namespace {

using boost::math::quadrature::gauss_kronrod;

struct LmgfParts {
    cplx tau_lambda;
    cplx log_arg_a;  // (1 - gamma e^{-d tau}) / (1 - gamma)
    cplx log_arg_b;  // 1 - 2 beta_t B
};

LmgfParts lmgf_parts(const ForwardContext& ctx, cplx u, double tau) {
    const HestonParams& p = ctx.params();
    const double xi2 = p.xi * p.xi;
    const cplx g = p.kappa - p.rho * p.xi * u;
    const cplx d = std::sqrt(g * g + u * (1.0 - u) * xi2);
    const cplx gam = (g - d) / (g + d);
    const cplx e = std::exp(-d * tau);
    LmgfParts r;
    r.log_arg_a = (1.0 - gam * e) / (1.0 - gam);
    const cplx A = 0.5 * ctx.mu() * ((g - d) * tau - 2.0 * std::log(r.log_arg_a));
    const cplx B = (g - d) / xi2 * (1.0 - e) / (1.0 - gam * e);
    r.log_arg_b = 1.0 - 2.0 * ctx.beta_t() * B;
    r.tau_lambda = A + B * p.v * std::exp(-p.kappa * ctx.t()) / r.log_arg_b - ctx.mu() * std::log(r.log_arg_b);
    if (u == 0.0) r.tau_lambda = 0.0;
    return r;
}

struct SafeSet {
    double lo;
    double hi;
};

// Real abscissae whose moments stay finite for every maturity.
SafeSet safe_damping_set(const ForwardContext& ctx) {
    const HestonParams& p = ctx.params();
    SafeSet s{ctx.u_minus(), ctx.u_plus()};
    if (p.rho < 0.0) {
        if (auto up = ctx.u_star_plus(); up && std::isfinite(*up) && *up > 1.0) s.hi = std::min(s.hi, *up);
    } else {
        if (auto um = ctx.u_star_minus(); um && std::isfinite(*um) && *um < 0.0) s.lo = std::max(s.lo, *um);
        if (ctx.large_correlation()) s.hi = 1.0;
    }
    return s;
}

double truncation_scale(const ForwardContext& ctx, double tau) {
    const HestonParams& p = ctx.params();
    const double sr = std::sqrt(1.0 - p.rho * p.rho);
    double rate = 0.5 * ctx.mu() * p.xi * sr * tau;
    if (ctx.t() == 0.0) rate += p.v * sr / p.xi;
    return std::clamp(40.0 / rate, 1.0, 1e4);
}

// Principal-branch logs are only valid if the arguments never wind across the negative axis.
void check_branch_continuity(const ForwardContext& ctx, double R, double tau, double L) {
    const int n = 1024;
    double prev_a = 0.0, prev_b = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double v = L * i / n;
        const LmgfParts lp = lmgf_parts(ctx, cplx(R, v), tau);
        const double ca = std::arg(lp.log_arg_a), cb = std::arg(lp.log_arg_b);
        if (i > 0 && (std::abs(ca - prev_a) > std::numbers::pi || std::abs(cb - prev_b) > std::numbers::pi))
            throw ConvergenceError("complex logarithm crosses its branch cut along the contour");
        prev_a = ca;
        prev_b = cb;
    }
}

}  // namespace

cplx forward_lmgf(const ForwardContext& ctx, cplx u, double tau) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    const LmgfParts lp = lmgf_parts(ctx, u, tau);
    if (u.imag() == 0.0) {
        const double scale = 1.0 + std::abs(lp.tau_lambda);
        if (!(lp.log_arg_b.real() > 0.0) || !std::isfinite(lp.tau_lambda.real()) ||
            std::abs(lp.tau_lambda.imag()) > 1e-8 * scale)
            throw DomainError("real part of u lies outside the moment domain at this maturity");
    }
    return lp.tau_lambda / tau;
}

double choose_damping(const ForwardContext& ctx, double k, const PricingConfig& cfg) {
    const SafeSet s = safe_damping_set(ctx);
    if (cfg.damping) {
        const double R = *cfg.damping;
        if (!(R > s.lo && R < s.hi) || std::abs(R) < 1e-8 || std::abs(R - 1.0) < 1e-8)
            throw DomainError("damping outside the admissible contour set");
        return R;
    }
    const double w = s.hi - s.lo;
    const double a = s.lo + std::min(0.05 * w, -0.5 * s.lo);
    const double b = s.hi > 1.0 ? s.hi - std::min(0.05 * w, 0.5 * (s.hi - 1.0)) : s.hi;
    const double target = saddlepoint_u_star(ctx, k);
    const double delta = 0.05;
    auto admissible = [&](double x) {
        return x >= a && x <= b && std::abs(x) >= delta && std::abs(x - 1.0) >= delta;
    };
    const double cands[] = {std::clamp(target, a, b), -delta, delta, 1.0 - delta, 1.0 + delta, a, b, 0.5};
    double best = 0.5;
    for (double x : cands)
        if (admissible(x) && std::abs(x - target) < std::abs(best - target)) best = x;
    return best;
}

double forward_call_fourier(const ForwardContext& ctx, double k, double tau, const PricingConfig& cfg) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
    const double R = choose_damping(ctx, k, cfg);
    const double kt = k * tau;
    auto f = [&](double v) {
        const cplx u(R, v);
        const cplx z = lmgf_parts(ctx, u, tau).tau_lambda + (1.0 - u) * kt;
        return (std::exp(z) / (u * (u - 1.0))).real() / std::numbers::pi;
    };

    double L = cfg.trunc_initial > 0.0 ? cfg.trunc_initial : truncation_scale(ctx, tau);
    double total = 0.0, err_total = 0.0, l1_total = 0.0;
    double lo = 0.0, covered = 0.0;
    bool done = false;
    int quiet = 0;
    for (int i = 0; i <= cfg.trunc_max_doublings; ++i) {
        double err = 0.0, l1 = 0.0;
        const double piece =
            gauss_kronrod<double, 31>::integrate(f, lo, L, cfg.quad_max_depth, cfg.quad_rel_tol, &err, &l1);
        if (!std::isfinite(piece)) throw ConvergenceError("non-finite Fourier integrand");
        total += piece;
        err_total += err;
        l1_total += l1;
        if (i > 0 && l1 < cfg.quad_abs_tol) {
            if (++quiet >= 2) {
                covered = L;
                done = true;
                break;
            }
        } else {
            quiet = 0;
        }
        lo = L;
        L *= 2.0;
    }
    if (!done) throw ConvergenceError("Fourier integrand tail did not decay below tolerance");
    if (err_total > std::max(cfg.quad_abs_tol, cfg.quad_rel_tol * l1_total) * 10.0)
        throw ConvergenceError("Fourier quadrature did not meet tolerance");
    check_branch_continuity(ctx, R, tau, covered);

    if (R > 1.0) return total;
    if (R > 0.0) return total + 1.0;
    return total + 1.0 - std::exp(kt);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Out-of-the-money leg: the call for k >= 0, the put for k < 0.
double bs_time_value(double k, double tau, double sigma) {
    const double K = std::exp(k * tau);
    const double s = sigma * std::sqrt(tau);
    if (!(s > 0.0)) return 0.0;
    const double dp = -k * tau / s + 0.5 * s;
    const double dm = dp - s;
    if (k >= 0.0) return normal_cdf(dp) - K * normal_cdf(dm);
    return K * normal_cdf(-dm) - normal_cdf(-dp);
}

}  // namespace

double bs_price(double k, double tau, double sigma) {
    return std::max(1.0 - std::exp(k * tau), 0.0) + bs_time_value(k, tau, sigma);
}

double implied_vol(double price, double k, double tau, const PricingConfig& cfg) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    const double K = std::exp(k * tau);
    const double lower = std::max(1.0 - K, 0.0);
    if (!(price > lower && price < 1.0)) throw DomainError("price outside the no-arbitrage band");
    const double target = price - lower;
    auto g = [&](double s) { return bs_time_value(k, tau, s) - target; };
    const double flo = g(cfg.iv_lo), fhi = g(cfg.iv_hi);
    if (flo == 0.0) return cfg.iv_lo;
    if (fhi == 0.0) return cfg.iv_hi;
    if (flo > 0.0 || fhi < 0.0) throw ConvergenceError("implied volatility outside the search bracket");
    std::uintmax_t iters = 200;
    auto tol = [&](double a, double b) { return std::abs(b - a) <= cfg.iv_tol; };
    const auto r = boost::math::tools::toms748_solve(g, cfg.iv_lo, cfg.iv_hi, flo, fhi, tol, iters);
    if (iters >= 200) throw ConvergenceError("implied volatility root-finding did not converge");
    return 0.5 * (r.first + r.second);
}

double numeric_saddlepoint(const ForwardContext& ctx, double k, double tau, const PricingConfig& cfg) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    const TransitionStrikes tr = transition_strikes(ctx);
    k = snap_strike(tr, k);
    const Combination comb = combination_for_strike(ctx, k);

    double lo_dom = ctx.u_minus(), hi_dom = ctx.u_plus();
    if (ctx.regime() == Regime::R2) hi_dom = *ctx.u_star_plus();
    if (ctx.regime() == Regime::R3a || ctx.regime() == Regime::R3b) lo_dom = *ctx.u_star_minus();
    if (ctx.large_correlation()) hi_dom = 1.0;
    auto inset = [](double x) { return 1e-10 * std::max(1.0, std::abs(x)); };
    lo_dom += inset(lo_dom);
    hi_dom -= inset(hi_dom);

    auto f = [&](double u) { return eval_V(ctx, u).V1 + eval_H(ctx, u).H1 / tau - k; };

    double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
    const double width = hi_dom - lo_dom;
    bool found = false;
    if (comb == Combination::HPlus || comb == Combination::HtildePlus || comb == Combination::H1 ||
        comb == Combination::H2) {
        hi = hi_dom;
        fhi = f(hi);
        for (double h = 1e-6 * width; h < width; h *= 2.0) {
            lo = hi_dom - h;
            flo = f(lo);
            if (flo < 0.0) {
                found = fhi > 0.0;
                break;
            }
        }
    } else if (comb == Combination::HMinus || comb == Combination::HtildeMinus) {
        lo = lo_dom;
        flo = f(lo);
        for (double h = 1e-6 * width; h < width; h *= 2.0) {
            hi = lo_dom + h;
            fhi = f(hi);
            if (fhi > 0.0) {
                found = flo < 0.0;
                break;
            }
        }
    } else {
        const double c = std::clamp(saddlepoint_u_star(ctx, k), lo_dom, hi_dom);
        const double f0 = f(c);
        if (f0 == 0.0) return c;
        double h = std::max(1e-8, 4.0 * std::abs(f0) / eval_V(ctx, c).V2);
        for (int i = 0; i < 200 && !found; ++i, h *= 2.0) {
            lo = std::max(c - h, lo_dom);
            hi = std::min(c + h, hi_dom);
            flo = f(lo);
            fhi = f(hi);
            found = flo < 0.0 && fhi > 0.0;
            if (lo == lo_dom && hi == hi_dom) break;
        }
    }
    if (!found) throw DomainError("no valid saddlepoint bracket for this strike and maturity");

    std::uintmax_t iters = 300;
    auto tol = [&](double a, double b) { return std::abs(b - a) <= cfg.saddle_tol * std::max(1.0, std::abs(a)); };
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    if (iters >= 300) throw ConvergenceError("saddlepoint root-finding did not converge");
    return 0.5 * (r.first + r.second);
}

}  // namespace fwdsmile
