#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "fwdsmile/heston.hpp"

namespace fwdsmile {

struct PricingConfig {
    std::optional<double> damping;  // contour abscissa; chosen from the strike when empty
    double quad_rel_tol = 1e-10;
    double quad_abs_tol = 1e-12;
    double trunc_initial = 0.0;     // first truncation length; 0 picks one from tau
    int trunc_max_doublings = 40;
    int quad_max_depth = 18;
    double iv_lo = 1e-6;
    double iv_hi = 5.0;
    double iv_tol = 1e-12;
    double saddle_tol = 1e-12;
    std::int64_t mc_paths = 1000000;
    int mc_steps = 500;
    std::uint64_t mc_seed = 20240521;
};

// Re-normalised forward lmgf Lambda_tau(u) = log E exp(u X_tau) / tau.
std::complex<double> forward_lmgf(const ForwardContext& ctx, std::complex<double> u, double tau);

// Contour abscissa used for strike k: inside the finite-maturity moment domain, away from 0 and 1.
double choose_damping(const ForwardContext& ctx, double k, const PricingConfig& cfg = {});

// E(exp(X_tau) - exp(k tau))^+ for the forward-start return.
double forward_call_fourier(const ForwardContext& ctx, double k, double tau, const PricingConfig& cfg = {});

double normal_cdf(double x);

// Black-Scholes call on a unit forward with strike exp(k tau).
double bs_price(double k, double tau, double sigma);

double implied_vol(double price, double k, double tau, const PricingConfig& cfg = {});

// Solves V'(u) + H'(u)/tau = k.
double numeric_saddlepoint(const ForwardContext& ctx, double k, double tau, const PricingConfig& cfg = {});

}  // namespace fwdsmile
