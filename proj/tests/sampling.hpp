#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "srf/errors.hpp"
#include "srf/region.hpp"

namespace srf::testing {

// Deterministic rejection sampler over window x (0, 2] for property tests.
inline std::vector<HelixParams> sample_feasible(std::size_t count, std::uint64_t seed,
                                                int m_max = kDefaultMMax) {
    std::mt19937_64 rng(seed);
    const OmegaWindow w = omega_window();
    std::uniform_real_distribution<double> om(w.lo, w.hi);
    std::uniform_real_distribution<double> al(1e-3, 2.0);
    std::vector<HelixParams> out;
    out.reserve(count);
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 20000 * (count + 1))
            throw Error("feasible-point sampler stalled; region unexpectedly thin");
        const HelixParams p{om(rng), al(rng)};
        if (in_compact_region(p, m_max).inside) out.push_back(p);
    }
    return out;
}

}  // namespace srf::testing
