#pragma once

#include <string>

#include "fwdsmile/heston.hpp"

namespace fwdsmile {

enum class SmileCombination { P0, PtildePlus, PtildeMinus, PPlus, PMinus, P1 };

std::string to_string(SmileCombination c);

enum class RemainderClass { BigO2Lambda, LittleOLambda, LittleO1 };

std::string to_string(RemainderClass r);

SmileCombination smile_combination_for_strike(const ForwardContext& ctx, double k);

double v0_infty(const ForwardContext& ctx, double k);

struct FirstOrder {
    SmileCombination combination;
    double v1;
    double lambda;
    RemainderClass remainder;
};

FirstOrder v1_infty(const ForwardContext& ctx, double k);

struct SmilePoint {
    double k;
    double tau;
    double v0;
    double v1;
    double lambda;
    SmileCombination combination;
    RemainderClass remainder;
    double sigma2;  // v0 + v1 tau^-lambda
};

SmilePoint forward_smile_asymptotic(const ForwardContext& ctx, double k, double tau);

enum class SviRegion { S0, SPlus, SMinus, S1 };

std::string to_string(SviRegion r);

struct SviParams {
    SviRegion region;
    double a, b, r, m, s;
    double i0, i1, i2;
};

SviParams svi_limit_params(const ForwardContext& ctx, double k);

double sigma2_svi(double k, const SviParams& p);

}  // namespace fwdsmile
