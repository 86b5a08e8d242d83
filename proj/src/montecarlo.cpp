#include "fwdsmile/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "fwdsmile/errors.hpp"

namespace fwdsmile {

namespace {

constexpr std::int64_t kChunk = 20000;

struct ChunkSums {
    std::vector<double> sum;
    std::vector<double> sum2;
};

ChunkSums run_chunk(const HestonParams& p, double t, double tau, const std::vector<double>& strikes,
                    std::int64_t n, int steps, std::uint64_t seed, std::int64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    const double sr = std::sqrt(1.0 - p.rho * p.rho);
    const int pre_steps = t > 0.0 ? std::max(1, static_cast<int>(std::ceil(steps * t / tau))) : 0;
    const double dt_pre = pre_steps ? t / pre_steps : 0.0;
    const double dt = tau / steps;
    ChunkSums out{std::vector<double>(strikes.size(), 0.0), std::vector<double>(strikes.size(), 0.0)};
    for (std::int64_t i = 0; i < n; ++i) {
        double var = p.v;
        for (int s = 0; s < pre_steps; ++s) {
            const double vp = std::max(var, 0.0);
            var += p.kappa * (p.theta - vp) * dt_pre + p.xi * std::sqrt(vp * dt_pre) * normal(rng);
        }
        double x = 0.0;
        for (int s = 0; s < steps; ++s) {
            const double vp = std::max(var, 0.0);
            const double sq = std::sqrt(vp * dt);
            const double z1 = normal(rng);
            const double z2 = normal(rng);
            x += -0.5 * vp * dt + sq * z1;
            var += p.kappa * (p.theta - vp) * dt + p.xi * sq * (p.rho * z1 + sr * z2);
        }
        const double s_end = std::exp(x);
        for (std::size_t j = 0; j < strikes.size(); ++j) {
            const double pay = std::max(s_end - strikes[j], 0.0);
            out.sum[j] += pay;
            out.sum2[j] += pay * pay;
        }
    }
    return out;
}

}  // namespace

std::vector<McEstimate> mc_forward_call(const HestonParams& p, double t, double tau, const std::vector<double>& ks,
                                        std::int64_t paths, int steps, std::uint64_t seed) {
    if (!(tau > 0.0) || t < 0.0) throw ParamError("Monte Carlo requires tau > 0 and t >= 0");
    if (paths < 2 || steps < 1) throw ParamError("Monte Carlo requires at least 2 paths and 1 step");
    std::vector<double> strikes;
    for (double k : ks) strikes.push_back(std::exp(k * tau));

    const std::int64_t nchunks = (paths + kChunk - 1) / kChunk;
    std::vector<ChunkSums> results(nchunks);
    const unsigned nthreads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), nchunks));
    auto worker = [&](unsigned w) {
        for (std::int64_t c = w; c < nchunks; c += nthreads) {
            const std::int64_t n = std::min(kChunk, paths - c * kChunk);
            results[c] = run_chunk(p, t, tau, strikes, n, steps, seed, c);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < nthreads; ++w) pool.emplace_back(worker, w);
    worker(0);
    for (auto& th : pool) th.join();

    std::vector<McEstimate> out;
    for (std::size_t j = 0; j < strikes.size(); ++j) {
        double s = 0.0, s2 = 0.0;
        for (const auto& r : results) {
            s += r.sum[j];
            s2 += r.sum2[j];
        }
        const double n = static_cast<double>(paths);
        const double mean = s / n;
        const double var = std::max(s2 / n - mean * mean, 0.0) * n / (n - 1.0);
        out.push_back({ks[j], mean, std::sqrt(var / n)});
    }
    return out;
}

}  // namespace fwdsmile
