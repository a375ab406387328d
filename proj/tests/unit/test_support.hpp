#pragma once

// Seeded generators shared by the unit and acceptance tests.

#include "schurlab/free_space.hpp"
#include "schurlab/numeric.hpp"

#include <random>
#include <vector>

namespace schurlab::fixtures {

inline Rational random_rational(std::mt19937_64& rng, int lo, int hi, int max_den = 6) {
    int den = std::uniform_int_distribution<int>(1, max_den)(rng);
    std::uniform_int_distribution<int> num(lo * den, hi * den);
    return make_rational(num(rng), den);
}

/// Points with rational coordinates in a cube under the l1 metric, so the
/// triangle inequality holds by construction, then perturbed by adding one
/// positive constant to every off-diagonal distance.
inline free_space::FiniteMetricSpace random_metric_space(std::mt19937_64& rng, std::size_t points,
                                                         std::size_t dim = 3) {
    std::vector<std::vector<Rational>> coords(points, std::vector<Rational>(dim));
    for (auto& p : coords)
        for (auto& c : p) c = random_rational(rng, 0, 4);
    Rational shift = random_rational(rng, 0, 1);
    free_space::FiniteMetricSpace space;
    for (std::size_t i = 0; i < points; ++i) space.labels.push_back("p" + std::to_string(i));
    space.distance.assign(points, std::vector<Rational>(points));
    for (std::size_t i = 0; i < points; ++i)
        for (std::size_t j = 0; j < points; ++j) {
            if (i == j) continue;
            Rational d = 0;
            for (std::size_t k = 0; k < dim; ++k) d += abs(coords[i][k] - coords[j][k]);
            space.distance[i][j] = d + shift + make_rational(1, 8);
        }
    space.base = rng() % points;
    return space;
}

/// Distances drawn independently from [a, b] with b <= 2a; any such matrix
/// is a metric because d(x,z) <= b <= 2a <= d(x,y) + d(y,z).
inline free_space::FiniteMetricSpace random_separated_space(std::mt19937_64& rng, std::size_t points) {
    Rational a = random_rational(rng, 1, 3, 4);
    Rational b = a * (1 + random_rational(rng, 0, 1, 8));
    free_space::FiniteMetricSpace space;
    for (std::size_t i = 0; i < points; ++i) space.labels.push_back("q" + std::to_string(i));
    space.distance.assign(points, std::vector<Rational>(points));
    std::uniform_int_distribution<int> step(0, 16);
    for (std::size_t i = 0; i < points; ++i)
        for (std::size_t j = i + 1; j < points; ++j) {
            Rational d = a + (b - a) * make_rational(step(rng), 16);
            space.distance[i][j] = d;
            space.distance[j][i] = d;
        }
    return space;
}

inline std::vector<Rational> random_coefficients(std::mt19937_64& rng, std::size_t n, double density = 0.7) {
    std::vector<Rational> c(n);
    std::bernoulli_distribution keep(density);
    for (auto& v : c)
        if (keep(rng)) v = random_rational(rng, -3, 3);
    return c;
}

inline free_space::FreeVector random_free_vector(std::mt19937_64& rng, const free_space::FiniteMetricSpace& space) {
    free_space::FreeVector mu;
    mu.coefficients = random_coefficients(rng, space.size());
    mu.coefficients[space.base] = 0;
    return mu;
}

}  // namespace schurlab::fixtures
