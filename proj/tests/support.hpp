#pragma once
// shared helpers for the test suite

#include <random>

#include <enclose.hpp>

namespace enclose::test {

inline Environment env_at(double theta, double lbar, double mu = 0.0, double tau = 0.0) {
    Environment env;
    env.theta = theta;
    env.lbar = lbar;
    env.mu = mu;
    env.tau = tau;
    return env;
}

// uniform draw helper around one shared engine per test binary
inline double draw(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace enclose::test
