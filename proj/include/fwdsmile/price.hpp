#pragma once

#include <string>

#include "fwdsmile/heston.hpp"

namespace fwdsmile {

enum class Combination { H0, HtildePlus, HtildeMinus, HPlus, HMinus, H1, H2 };

std::string to_string(Combination c);

struct Exponents {
    double alpha;  // prefactor power, phi / tau^alpha
    double beta;   // remainder O(tau^-beta)
    double gamma;  // correction exp(psi tau^gamma)
};

Exponents combination_exponents(Combination c, double mu);

struct CombinationSpec {
    Combination tag;
    double alpha;
    double beta;
    double gamma;
    double phi;
    double psi;
};

// Which expansion is in force at k; transition strikes matched to 1e-12.
Combination combination_for_strike(const ForwardContext& ctx, double k);

struct HpmCoeffs {
    double a1, a2, zeta2, e0, e1, c0, c1, c2, phi;
};

// side = +1 for the u*+ boundary (R2), -1 for u*- (R3a/R3b).
HpmCoeffs coeffs_Hpm(const ForwardContext& ctx, double k, int side);

struct HtildeCoeffs {
    double a1t, a2t, e0t, e1t, c0t, c1t, c2t, phit;
};

HtildeCoeffs coeffs_Htilde(const ForwardContext& ctx, int side);

struct H12Coeffs {
    double g0;
    double phi1;
    double phi2;  // NaN unless k > V'(1)
};

H12Coeffs coeffs_H12(const ForwardContext& ctx, double k);

double phi0(const ForwardContext& ctx, double k);

double intrinsic_I(double k, double tau, double a, double b, double c);

struct ExpansionResult {
    CombinationSpec combination;
    double intrinsic;
    double rate;           // V*(k) - k
    double correction;     // psi tau^gamma
    double log_prefactor;  // log|phi| - alpha log(tau)
    double price;
    double remainder_order;
};

ExpansionResult forward_call_asymptotic(const ForwardContext& ctx, double k, double tau);

CombinationSpec combination_spec(const ForwardContext& ctx, double k);

double bs_call_expansion(double k, double tau, double a, double b);

}  // namespace fwdsmile
