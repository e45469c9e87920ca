#pragma once

/// Deterministic sample generation: a Halton low-discrepancy sequence for
/// grid coverage plus a seeded Mersenne Twister stream.  Uniform doubles
/// are built from raw 64-bit draws, so sequences are identical across
/// platforms and standard libraries.

#include <cstdint>
#include <random>
#include <vector>

#include "aholo/region.hpp"

namespace aholo {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

namespace detail {

inline const int kPrimes[] = {2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,
                              43,  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101,
                              103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
                              173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229};

inline double radical_inverse(int base, std::uint64_t index) {
    double inv_base = 1.0 / base;
    double factor = inv_base;
    double value = 0.0;
    while (index > 0) {
        value += factor * static_cast<double>(index % static_cast<std::uint64_t>(base));
        index /= static_cast<std::uint64_t>(base);
        factor *= inv_base;
    }
    return value;
}

}  // namespace detail

/// Halton point #index (index >= 1) in [0,1)^dims.  Fifty prime bases cover
/// every shape this library works at (dims = 2*n*m).
inline std::vector<double> halton_point(std::uint64_t index, int dims) {
    constexpr int n_primes = static_cast<int>(sizeof(detail::kPrimes) / sizeof(int));
    std::vector<double> p(static_cast<std::size_t>(dims));
    for (int d = 0; d < dims; ++d)
        p[static_cast<std::size_t>(d)] = detail::radical_inverse(detail::kPrimes[d % n_primes], index);
    return p;
}

class DeterministicRng {
  public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0,1) from the top 53 bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::vector<double> uniform_vector(int dims) {
        std::vector<double> p(static_cast<std::size_t>(dims));
        for (int d = 0; d < dims; ++d) p[static_cast<std::size_t>(d)] = uniform();
        return p;
    }

  private:
    std::mt19937_64 engine_;
};

/// The standard verification sample set: `grid` Halton points followed by
/// `random` seeded points, all strictly interior to the domain.
inline std::vector<AModuleVector> sample_domain(const DomainDescriptor& domain, int grid,
                                                int random, std::uint64_t seed = kDefaultSeed) {
    const int dims = 2 * domain.vars() * domain.algebra_dim();
    std::vector<AModuleVector> out;
    out.reserve(static_cast<std::size_t>(grid + random));
    for (int i = 1; i <= grid; ++i)
        out.push_back(domain.sample(halton_point(static_cast<std::uint64_t>(i), dims)));
    DeterministicRng rng(seed);
    for (int i = 0; i < random; ++i) out.push_back(domain.sample(rng.uniform_vector(dims)));
    return out;
}

}  // namespace aholo
