#pragma once

#include <cstdint>
#include <vector>

#include "fwdsmile/heston.hpp"

namespace fwdsmile {

struct McEstimate {
    double k;
    double price;
    double std_error;
};

// Forward-start calls E(exp(X_{t+tau} - X_t) - exp(k tau))^+ by full-truncation Euler.
// Deterministic for a fixed seed regardless of thread count.
std::vector<McEstimate> mc_forward_call(const HestonParams& p, double t, double tau, const std::vector<double>& ks,
                                        std::int64_t paths, int steps, std::uint64_t seed);

}  // namespace fwdsmile
