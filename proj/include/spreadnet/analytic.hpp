#pragma once

#include <span>
#include <vector>

#include "spreadnet/graph.hpp"
#include "spreadnet/ode.hpp"

namespace spreadnet::analytic {

/// Which auxiliary ODE form solve_er integrates. The y-form loses precision
/// for large lambda (q/lambda prefactor, lambda*(1-y) exponent); the
/// z-substitution z = lambda*(1-y) stays well conditioned there and exposes
/// the lambda -> infinity compartmental limit.
enum class ErForm { automatic, y_form, z_form };

/// Switch-over point for ErForm::automatic.
inline constexpr double kErFormSwitchLambda = 50.0;

/// Expected adoption/infection level on sparse ER networks:
///   f(t) = 1 - (1-i0) * exp(-p t - lambda (1 - y(t))),
///   dy/dt = (q/lambda) * (-y + (1-i0) exp(-p t - lambda (1 - y))), y(0) = 1.
struct ErSolution {
    Trajectory f;
    Trajectory y;
    Trajectory z; // z = lambda * (1 - y)
    ErForm form_used = ErForm::y_form;
};

ErSolution solve_er(const SpreadParams& params, double lambda, std::span<const double> grid,
                    ErForm form = ErForm::automatic, const ode::OdeOptions& opt = {});

/// Expected level on random d-regular networks, via the auxiliary ODE
///   dy/dt + (p + q/d) y = (q/d) * (e^{pt}/(1-i0))^{d-3} * y^{d-1},
///   y(0) = 1 - i0,
/// mapped through [S] = (e^{pt}/(1-i0))^{d-1} * y^d and f = 1 - [S].
/// `s_ode_sup_deviation` holds the sup-norm difference against an independent
/// integration of the direct [S] equation
///   d[S]/dt = -[S] ( p + q (1 - ([S] e^{pt}/(1-i0))^{-2/d} [S]) ).
struct DregSolution {
    Trajectory f;
    Trajectory y;
    Trajectory s; // [S] = 1 - f
    double s_ode_sup_deviation = 0.0;
};

DregSolution solve_dreg(const SpreadParams& params, int d, std::span<const double> grid,
                        const ode::OdeOptions& opt = {});

/// f on isolated nodes: i0 + (1-i0)(1 - e^{-pt}).
double f_isolated(double t, double p, double i0);

/// Compartmental (mean-field) level: df/dt = (1-f)(p+qf), f(0) = i0.
Trajectory f_compartmental(const SpreadParams& params, std::span<const double> grid,
                           const ode::OdeOptions& opt = {});

/// Closed form of the compartmental model for i0 = 0; requires p > 0.
double f_compartmental_closed(double t, double p, double q);

/// Infinite line / circle closed form, with an exact branch at p = 0.
double f_1d(double t, const SpreadParams& params);

/// Final infection level of the SI model: unique root in (0,1) of
/// f = 1 - (1-i0) e^{-lambda f}. Bisection to 1e-12.
double final_infection_level(double lambda, double i0);

/// Giant-component fraction: 0 for lambda <= 1, else the positive root of
/// X = 1 - e^{-lambda X}.
double giant_component(double lambda);

/// Unique root in (0,1) of y = (1-i0) e^{-lambda (1-y)}; equals
/// 1 - final_infection_level(lambda, i0).
double ysi_infinity(double lambda, double i0);

/// First time f reaches 1/2 (tolerance 1e-6 in f). Throws no_crossing_error
/// when the curve plateaus below 1/2.
double half_life_isolated(const SpreadParams& params);
double half_life_compartmental(const SpreadParams& params);
double half_life_er(const SpreadParams& params, double lambda);
double half_life_dreg(const SpreadParams& params, int d);

} // namespace spreadnet::analytic
