#include "thetalab/sampling.hpp"

#include <random>

namespace thetalab {

std::vector<std::complex<double>> sample_points(std::complex<double> tau, int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    // explicit 53-bit mapping keeps the stream identical across standard libraries
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    std::vector<std::complex<double>> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        double u = unit();
        double v = unit();
        out.push_back(u + v * tau);
    }
    return out;
}

}  // namespace thetalab
