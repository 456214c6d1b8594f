#pragma once

#include "cesaro/series.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace cesaro {

/// Seeded generator whose outputs are identical on every platform
/// (std:: distributions are implementation-defined, so they are avoided).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    Complex unit_circle() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

    /// Coefficients uniform in the square [-1,1]^2, top coefficient forced nonzero.
    PowerSeries series(std::size_t degree) {
        std::vector<Complex> c(degree + 1);
        for (auto& x : c) {
            x = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        }
        if (c.back() == Complex{}) {
            c.back() = 1.0;
        }
        return PowerSeries(std::move(c));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace cesaro
