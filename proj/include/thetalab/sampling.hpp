#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace thetalab {

// z = u + v tau with u, v uniform in [-1/2, 1/2); deterministic in seed.
std::vector<std::complex<double>> sample_points(std::complex<double> tau, int n, uint64_t seed);

}  // namespace thetalab
