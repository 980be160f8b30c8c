// Copyright 2026 The goodturing Authors
// SPDX-License-Identifier: Apache-2.0

#include "goodturing/mixture.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "goodturing/errors.hpp"
#include "goodturing/numeric.hpp"
#include "goodturing/quadrature.hpp"

namespace goodturing {

namespace {

// stirlerr(m) = ln(m!) - [m ln m - m + 0.5 ln(2 pi m)].
// Small arguments go through lgamma, where its absolute error is harmless;
// larger ones use the Stirling series so that no large nearly-cancelling
// logarithms ever meet.
double stirlerr(double m) {
    if (m <= 15.5) {
        static const std::array<double, 16> table = [] {
            std::array<double, 16> t{};
            t[0] = 0.0;
            for (int i = 1; i < 16; ++i) {
                const double x = i;
                t[i] = std::lgamma(x + 1.0) -
                       ((x + 0.5) * std::log(x) - x +
                        0.5 * std::log(2.0 * std::numbers::pi));
            }
            return t;
        }();
        return table[static_cast<std::size_t>(m + 0.5)];
    }
    const double inv2 = 1.0 / (m * m);
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 -
            inv2 / 1188.0) * inv2) * inv2) * inv2) / m;
}

// Binomial deviance bd0(x, m) = x ln(x/m) + m - x, evaluated by series when
// x is close to m to dodge the catastrophic cancellation in the direct form.
double bd0(double x, double m) {
    if (std::abs(x - m) < 0.1 * (x + m)) {
        const double v = (x - m) / (x + m);
        double s = (x - m) * v;
        double ej = 2.0 * x * v;
        const double v2 = v * v;
        for (int j = 1;; ++j) {
            ej *= v2;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return x * std::log(x / m) + m - x;
}

double binomial_coefficient_small(std::uint64_t n, std::uint64_t k) {
    if (k > n - k) k = n - k;
    double c = 1.0;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

constexpr double kLambdaTol = 1e-10;

}  // namespace

double g_binomial(std::uint64_t n, std::uint64_t k, double y) {
    if (k > n) {
        throw DomainError("g_binomial requires 0 <= k <= n");
    }
    if (!std::isfinite(y) || y < 0.0 || y > static_cast<double>(n)) {
        std::ostringstream msg;
        msg << "g_binomial requires 0 <= y <= n, got y = " << y;
        throw DomainError(msg.str());
    }
    const double nd = static_cast<double>(n);
    if (y == 0.0) return k == 0 ? 1.0 : 0.0;
    if (y == nd) return k == n ? 1.0 : 0.0;

    if (n <= 30) {
        const double p = y / nd;
        const double q = (nd - y) / nd;
        return binomial_coefficient_small(n, k) *
               std::pow(p, static_cast<double>(k)) *
               std::pow(q, static_cast<double>(n - k));
    }

    const double nq = nd - y;  // n * (1 - y/n) without rounding through p
    if (k == 0) {
        if (y < 0.1 * nd) return std::exp(-bd0(nd, nq) - y);
        return std::exp(nd * std::log(nq / nd));
    }
    if (k == n) {
        if (nq < 0.1 * nd) return std::exp(-bd0(nd, y) - nq);
        return std::exp(nd * std::log(y / nd));
    }
    const double kd = static_cast<double>(k);
    const double nk = static_cast<double>(n - k);
    const double lc = stirlerr(nd) - stirlerr(kd) - stirlerr(nk) -
                      bd0(kd, y) - bd0(nk, nq);
    return std::exp(lc) *
           std::sqrt(nd / (2.0 * std::numbers::pi * kd * nk));
}

double g_poisson(std::uint64_t k, double y) {
    if (!std::isfinite(y) || y < 0.0) {
        throw DomainError("g_poisson requires y >= 0");
    }
    if (y == 0.0) return k == 0 ? 1.0 : 0.0;
    if (k == 0) return std::exp(-y);
    const double kd = static_cast<double>(k);
    return std::exp(-stirlerr(kd) - bd0(kd, y)) /
           std::sqrt(2.0 * std::numbers::pi * kd);
}

PoissonMixtureVector poisson_mixture(const MixingDistribution& Q,
                                     std::uint64_t kmax) {
    PoissonMixtureVector result;
    result.lambda.resize(kmax + 1);

    const auto& grid = Q.density_grid();
    const auto& values = Q.density_values();
    std::size_t segments = 0;
    for (std::size_t i = 0; Q.has_density() && i + 1 < grid.size(); ++i) {
        if (grid[i + 1] > grid[i]) ++segments;
    }

    KahanSum total;
    for (std::uint64_t k = 0; k <= kmax; ++k) {
        KahanSum lam;
        for (const MixingAtom& a : Q.atoms()) {
            lam.add(a.weight * g_poisson(k, a.y));
        }
        if (segments > 0) {
            const double tol = kLambdaTol / static_cast<double>(segments);
            for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
                const double a = grid[i];
                const double b = grid[i + 1];
                if (b <= a) continue;  // zero-width: a jump marker
                const double v0 = values[i];
                const double v1 = values[i + 1];
                auto integrand = [&](double t) {
                    const double w = v0 + (t - a) / (b - a) * (v1 - v0);
                    return w * g_poisson(k, t);
                };
                lam.add(adaptive_simpson(integrand, a, b, tol));
            }
        }
        result.lambda[k] = lam.value();
        total.add(result.lambda[k]);
    }
    result.tail_mass = 1.0 - total.value();
    if (result.tail_mass < -1e-8) {
        throw QuadratureError("poisson_mixture produced mass above 1");
    }
    return result;
}

double expected_xi(const DistributionSpec& dist, std::uint64_t n,
                   std::uint64_t k) {
    if (n == 0) throw DomainError("expected_xi requires n >= 1");
    if (k > n) throw DomainError("expected_xi requires k <= n");
    KahanSum s;
    const double nd = static_cast<double>(n);
    for (const Atom& a : dist.atoms()) {
        s.add(static_cast<double>(a.multiplicity) * a.prob *
              g_binomial(n, k, nd * a.prob));
    }
    if (k == 0) s.add(dist.continuous_mass());
    return s.value();
}

double expected_zeta(const DistributionSpec& dist, std::uint64_t n,
                     std::uint64_t k) {
    if (n == 0) throw DomainError("expected_zeta requires n >= 1");
    if (k >= n) throw DomainError("expected_zeta requires k <= n - 1");
    KahanSum s;
    const double md = static_cast<double>(n - 1);
    for (const Atom& a : dist.atoms()) {
        s.add(static_cast<double>(a.multiplicity) * a.prob *
              g_binomial(n - 1, k, md * a.prob));
    }
    if (k == 0) s.add(dist.continuous_mass());
    return s.value();
}

}  // namespace goodturing
