#pragma once

#include "raqmod/series.hpp"

#include <random>

namespace raqmod::test {

// Sparse random series with small rational and zeta-weighted coefficients.
struct Random {
    std::mt19937_64 g;
    explicit Random(std::uint64_t seed) : g(seed) {}
    int uniform(int a, int b) { return std::uniform_int_distribution<int>(a, b)(g); }

    PeriodScalar scalar()
    {
        int p = 0;
        while (p == 0)
            p = uniform(-7, 7);
        PeriodScalar c(ratio(p, uniform(1, 5)));
        if (uniform(0, 3) == 0)
            c = c * PeriodScalar::zeta(3);
        return c;
    }

    RAForm form(int N, int terms = 5)
    {
        int r = uniform(-2, 4), s = uniform(-2, 4);
        BiSeries f(N);
        for (int t = 0; t < terms; ++t)
            f.add(uniform(0, N), uniform(0, N), uniform(-3, 3), scalar());
        return RAForm(r, s, f);
    }
};

} // namespace raqmod::test
