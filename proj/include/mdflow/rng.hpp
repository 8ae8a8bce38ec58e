#pragma once

#include <array>
#include <cmath>
#include <cstdint>

// Counter-based random numbers (Philox4x32-10, Salmon et al. SC 2011).
// Every draw is a pure function of (seed, stream, counter), so ensemble
// members can be generated on any number of threads in any order and the
// results stay bit-identical.

namespace mdflow {

namespace philox {

constexpr uint32_t kW32A = 0x9E3779B9u;
constexpr uint32_t kW32B = 0xBB67AE85u;
constexpr uint32_t kM4x32A = 0xD2511F53u;
constexpr uint32_t kM4x32B = 0xCD9E8D57u;

inline void mul_hilo(uint32_t a, uint32_t b, uint32_t& lo, uint32_t& hi) {
    uint64_t p = static_cast<uint64_t>(a) * b;
    lo = static_cast<uint32_t>(p);
    hi = static_cast<uint32_t>(p >> 32);
}

inline std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr,
                                     std::array<uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        uint32_t lo0, hi0, lo1, hi1;
        mul_hilo(kM4x32A, ctr[0], lo0, hi0);
        mul_hilo(kM4x32B, ctr[2], lo1, hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW32A;
        key[1] += kW32B;
    }
    return ctr;
}

inline double to_unit(uint32_t hi, uint32_t lo) {
    // 53 random bits -> [0,1)
    uint64_t u = (static_cast<uint64_t>(hi) << 32) | lo;
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

}  // namespace philox

// Sequential stream view of the Philox generator. `stream` picks an
// independent substream (path index, module tag, ...) under one seed.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    uint64_t next_u64() {
        auto b = raw(counter_++);
        return (static_cast<uint64_t>(b[0]) << 32) | b[1];
    }

    // uniform on [0,1)
    double next_double() {
        auto b = raw(counter_++);
        return philox::to_unit(b[0], b[1]);
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // integer in [0, n)
    uint64_t next_below(uint64_t n) { return next_u64() % n; }

    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        auto b = raw(counter_++);
        double z0, z1;
        box_muller(b, z0, z1);
        spare_ = z1;
        have_spare_ = true;
        return z0;
    }

    static void box_muller(const std::array<uint32_t, 4>& b, double& z0,
                           double& z1) {
        double u1 = 1.0 - philox::to_unit(b[0], b[1]);  // (0,1]
        double u2 = philox::to_unit(b[2], b[3]);
        double r = std::sqrt(-2.0 * std::log(u1));
        z0 = r * std::cos(2.0 * M_PI * u2);
        z1 = r * std::sin(2.0 * M_PI * u2);
    }

  private:
    std::array<uint32_t, 4> raw(uint64_t counter) const {
        // top bit marks the sequential-stream domain so it cannot collide
        // with the (path, step) blocks drawn by step_normals below
        std::array<uint32_t, 4> ctr = {
            static_cast<uint32_t>(counter), static_cast<uint32_t>(counter >> 32),
            static_cast<uint32_t>(stream_),
            static_cast<uint32_t>(stream_ >> 32) | 0x80000000u};
        std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed_),
                                       static_cast<uint32_t>(seed_ >> 32)};
        return philox::block(ctr, key);
    }

    uint64_t seed_, stream_;
    uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Fills `out[0..m)` with the standard normal increments of one integrator
// step. Keyed by (seed, path, step): reproducible regardless of how paths
// are scheduled over threads.
inline void step_normals(uint64_t seed, uint64_t path, uint64_t step, int m,
                         double* out) {
    int blocks = (m + 1) / 2;
    for (int blk = 0; blk < blocks; ++blk) {
        std::array<uint32_t, 4> ctr = {
            static_cast<uint32_t>(step), static_cast<uint32_t>(step >> 32),
            static_cast<uint32_t>(path), static_cast<uint32_t>(blk)};
        std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed),
                                       static_cast<uint32_t>(seed >> 32)};
        auto b = philox::block(ctr, key);
        double z0, z1;
        CounterRng::box_muller(b, z0, z1);
        out[2 * blk] = z0;
        if (2 * blk + 1 < m) out[2 * blk + 1] = z1;
    }
}

}  // namespace mdflow
