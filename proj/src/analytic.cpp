#include "spreadnet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace spreadnet::analytic {

namespace {

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("analytic: empty time grid");
    if (grid.front() < 0.0) throw std::invalid_argument("analytic: negative time");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("analytic: grid not strictly increasing");
}

// Bisection for a continuous g with g(lo) and g(hi) of opposite sign.
double bisect(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm <= 0.0) == (glo <= 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

ErSolution solve_er(const SpreadParams& params, double lambda, std::span<const double> grid, ErForm form,
                    const ode::OdeOptions& opt) {
    params.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("solve_er: lambda must be positive");
    check_grid(grid);

    const double p = params.p, q = params.q, i0 = params.i0;
    if (form == ErForm::automatic) form = lambda > kErFormSwitchLambda ? ErForm::z_form : ErForm::y_form;

    ErSolution sol;
    sol.form_used = form;
    sol.f.times.assign(grid.begin(), grid.end());
    sol.y.times = sol.f.times;
    sol.z.times = sol.f.times;
    sol.f.values.resize(grid.size());
    sol.y.values.resize(grid.size());
    sol.z.values.resize(grid.size());

    if (form == ErForm::y_form) {
        auto rhs = [p, q, i0, lambda](double t, double y) {
            return q / lambda * (-y + (1.0 - i0) * std::exp(-p * t - lambda * (1.0 - y)));
        };
        auto yv = ode::integrate_scalar(rhs, 1.0, 0.0, grid, opt);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double y = yv[i];
            sol.y.values[i] = y;
            sol.z.values[i] = lambda * (1.0 - y);
            sol.f.values[i] = 1.0 - (1.0 - i0) * std::exp(-p * grid[i] - lambda * (1.0 - y));
        }
    } else {
        auto rhs = [p, q, i0, lambda](double t, double z) {
            return -q * (z / lambda - 1.0 + (1.0 - i0) * std::exp(-p * t - z));
        };
        auto zv = ode::integrate_scalar(rhs, 0.0, 0.0, grid, opt);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double z = zv[i];
            sol.z.values[i] = z;
            sol.y.values[i] = 1.0 - z / lambda;
            sol.f.values[i] = 1.0 - (1.0 - i0) * std::exp(-p * grid[i] - z);
        }
    }
    return sol;
}

DregSolution solve_dreg(const SpreadParams& params, int d, std::span<const double> grid,
                        const ode::OdeOptions& opt) {
    params.validate();
    if (d < 2) throw std::invalid_argument("solve_dreg: d must be at least 2");
    check_grid(grid);

    const double p = params.p, q = params.q, i0 = params.i0;
    const double dd = static_cast<double>(d);
    const double log1mi0 = std::log(1.0 - i0);
    // a(t) = p t - log(1-i0) >= 0, so exponents below are computed as sums of
    // logs and can only underflow, never overflow.
    auto a_of = [p, log1mi0](double t) { return p * t - log1mi0; };

    auto y_rhs = [&](double t, double y) {
        double growth = 0.0;
        if (y > 0.0) growth = std::exp((dd - 3.0) * a_of(t) + (dd - 1.0) * std::log(y));
        return -(p + q / dd) * y + q / dd * growth;
    };
    auto yv = ode::integrate_scalar(y_rhs, 1.0 - i0, 0.0, grid, opt);

    DregSolution sol;
    sol.f.times.assign(grid.begin(), grid.end());
    sol.y.times = sol.f.times;
    sol.s.times = sol.f.times;
    sol.f.values.resize(grid.size());
    sol.y.values.resize(grid.size());
    sol.s.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y = yv[i];
        sol.y.values[i] = y;
        const double s = y > 0.0 ? std::exp((dd - 1.0) * a_of(grid[i]) + dd * std::log(y)) : 0.0;
        sol.s.values[i] = s;
        sol.f.values[i] = 1.0 - s;
    }

    // Independent route: integrate the direct [S] equation and record the
    // worst disagreement with the y-mapped values.
    auto s_rhs = [&](double t, double s) {
        if (s <= 0.0) return 0.0;
        const double bs = std::exp((1.0 - 2.0 / dd) * std::log(s) - 2.0 / dd * a_of(t));
        return -s * (p + q * (1.0 - bs));
    };
    auto sv = ode::integrate_scalar(s_rhs, 1.0 - i0, 0.0, grid, opt);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(sv[i] - sol.s.values[i]));
    sol.s_ode_sup_deviation = worst;
    return sol;
}

double f_isolated(double t, double p, double i0) {
    if (!(p >= 0.0)) throw std::invalid_argument("f_isolated: p must be nonnegative");
    return 1.0 - (1.0 - i0) * std::exp(-p * t);
}

Trajectory f_compartmental(const SpreadParams& params, std::span<const double> grid,
                           const ode::OdeOptions& opt) {
    params.validate();
    check_grid(grid);
    const double p = params.p, q = params.q;
    auto rhs = [p, q](double, double f) { return (1.0 - f) * (p + q * f); };
    Trajectory out;
    out.times.assign(grid.begin(), grid.end());
    out.values = ode::integrate_scalar(rhs, params.i0, 0.0, grid, opt);
    return out;
}

double f_compartmental_closed(double t, double p, double q) {
    if (!(p > 0.0)) throw std::invalid_argument("f_compartmental_closed: requires p > 0");
    const double e = std::exp(-(p + q) * t);
    return (1.0 - e) / (1.0 + q / p * e);
}

double f_1d(double t, const SpreadParams& params) {
    params.validate();
    const double p = params.p, q = params.q, i0 = params.i0;
    if (p == 0.0) return 1.0 - (1.0 - i0) * std::exp(-q * i0 * t);
    const double ramp = -std::expm1(-p * t) / p; // (1 - e^{-pt}) / p
    return 1.0 - (1.0 - i0) * std::exp(-(p + q) * t + q * (1.0 - i0) * ramp);
}

double final_infection_level(double lambda, double i0) {
    if (!(lambda > 0.0)) throw std::invalid_argument("final_infection_level: lambda must be positive");
    if (!(i0 > 0.0 && i0 < 1.0)) throw std::invalid_argument("final_infection_level: i0 must lie in (0,1)");
    auto g = [lambda, i0](double f) { return f - 1.0 + (1.0 - i0) * std::exp(-lambda * f); };
    return bisect(g, 0.0, 1.0); // g(0) = -i0 < 0, g(1) = (1-i0) e^{-lambda} > 0
}

double giant_component(double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("giant_component: lambda must be nonnegative");
    if (lambda <= 1.0) return 0.0;
    auto g = [lambda](double x) { return x + std::expm1(-lambda * x); };
    return bisect(g, 1e-12, 1.0); // g < 0 just above 0 for lambda > 1, g(1) = e^{-lambda} > 0
}

double ysi_infinity(double lambda, double i0) {
    if (!(lambda > 0.0)) throw std::invalid_argument("ysi_infinity: lambda must be positive");
    if (!(i0 > 0.0 && i0 < 1.0)) throw std::invalid_argument("ysi_infinity: i0 must lie in (0,1)");
    auto h = [lambda, i0](double y) { return (1.0 - i0) * std::exp(-lambda * (1.0 - y)) - y; };
    return bisect(h, 0.0, 1.0); // h(0) > 0, h(1) = -i0 < 0
}

namespace {

// Bracketed search for the first crossing of 1/2 of a monotone curve.
// T_max = 1e3 / (p + q * max(i0, p/(p+q))) always lands past the crossing for
// the Bass family; SI curves may plateau below 1/2, which is reported.
double half_life_of(const SpreadParams& params, const std::function<double(double)>& f_at) {
    const double p = params.p, q = params.q, i0 = params.i0;
    if (f_at(0.0) >= 0.5) return 0.0;
    const double t_max = 1e3 / (p + q * std::max(i0, p / (p + q)));
    if (f_at(t_max) < 0.5) throw no_crossing_error("half_life: curve does not reach 1/2");
    double lo = 0.0, hi = t_max;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f_at(mid);
        if (std::abs(fm - 0.5) <= 1e-6) return mid;
        (fm < 0.5 ? lo : hi) = mid;
        if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double half_life_isolated(const SpreadParams& params) {
    params.validate();
    if (params.i0 >= 0.5) return 0.0;
    if (params.p == 0.0) throw no_crossing_error("half_life: isolated nodes with p = 0 stay at i0");
    // 1 - (1-i0) e^{-pT} = 1/2
    return std::log(2.0 * (1.0 - params.i0)) / params.p;
}

double half_life_compartmental(const SpreadParams& params) {
    params.validate();
    return half_life_of(params, [&](double t) {
        if (t == 0.0) return params.i0;
        const double grid[2] = {0.0, t};
        return f_compartmental(params, grid).values[1];
    });
}

double half_life_er(const SpreadParams& params, double lambda) {
    params.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("half_life_er: lambda must be positive");
    return half_life_of(params, [&](double t) {
        if (t == 0.0) return params.i0;
        const double grid[2] = {0.0, t};
        return solve_er(params, lambda, grid).f.values[1];
    });
}

double half_life_dreg(const SpreadParams& params, int d) {
    params.validate();
    if (d < 2) throw std::invalid_argument("half_life_dreg: d must be at least 2");
    return half_life_of(params, [&](double t) {
        if (t == 0.0) return params.i0;
        const double grid[2] = {0.0, t};
        return solve_dreg(params, d, grid).f.values[1];
    });
}

} // namespace spreadnet::analytic
