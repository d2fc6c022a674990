#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace spreadnet::ode {

struct OdeOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    double h_max = std::numeric_limits<double>::infinity();
};

// Adaptive embedded Runge-Kutta pair of orders 5(4) (Dormand-Prince
// coefficients). Instead of interpolating dense output, the controller clips
// steps so that each requested sample time is hit by an accepted step exactly;
// every reported value is a genuine solution point under the error control.
//
// Rhs:      void(double t, const std::vector<double>& y, std::vector<double>& dydt)
// Observer: void(std::size_t sample_index, double t, const std::vector<double>& y)
//
// `sample_times` must be sorted ascending and start at >= t0.
template <typename Rhs, typename Observer>
void integrate_at(Rhs&& rhs, std::vector<double> y, double t0, std::span<const double> sample_times,
                  const OdeOptions& opt, Observer&& observe) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - bhat, for the embedded 4th-order error estimate.
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const std::size_t n = y.size();
    std::size_t next_sample = 0;
    double t = t0;

    while (next_sample < sample_times.size() && sample_times[next_sample] <= t) {
        observe(next_sample, t, y);
        ++next_sample;
    }
    if (next_sample >= sample_times.size()) return;
    const double t_end = sample_times.back();

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    rhs(t, y, k1);

    auto err_norm = [&](const std::vector<double>& yerr) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = yerr[i] / sc;
            acc += r * r;
        }
        return std::sqrt(acc / static_cast<double>(n == 0 ? 1 : n));
    };

    // Crude but safe starting step; the controller corrects it within a few
    // rejections at most.
    double f0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) f0 = std::max(f0, std::abs(k1[i]));
    double h = std::min({(t_end - t) / 10.0, opt.h_max, 0.1 / (1.0 + f0)});
    h = std::max(h, 1e-12);

    int consecutive_rejects = 0;
    while (t < t_end) {
        const double target = sample_times[next_sample];
        bool hit_sample = false;
        double h_unclipped = h;
        if (t + h >= target - 1e-14 * std::max(1.0, std::abs(target))) {
            h = target - t;
            hit_sample = true;
        }
        if (!(h > 0.0)) throw std::runtime_error("ode: step size underflow");

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew, k7);

        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double err = err_norm(ytmp);

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7); // FSAL
            consecutive_rejects = 0;
            if (hit_sample) {
                t = target;
                while (next_sample < sample_times.size() &&
                       sample_times[next_sample] <= t + 1e-14 * std::max(1.0, std::abs(t))) {
                    observe(next_sample, t, y);
                    ++next_sample;
                }
                if (next_sample >= sample_times.size()) return;
            }
            const double fac = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            // A step clipped to land on a sample says nothing about the
            // natural step size, so grow from the unclipped proposal.
            h = std::min(std::max(h * fac, hit_sample ? h_unclipped : 0.0), opt.h_max);
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            if (++consecutive_rejects > 200) throw std::runtime_error("ode: step control failed to converge");
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t))) throw std::runtime_error("ode: step size underflow");
    }
}

// Scalar convenience wrapper: returns the solution sampled at `sample_times`.
template <typename ScalarRhs>
std::vector<double> integrate_scalar(ScalarRhs&& rhs, double y0, double t0,
                                     std::span<const double> sample_times, const OdeOptions& opt = {}) {
    std::vector<double> out(sample_times.size());
    integrate_at(
        [&rhs](double t, const std::vector<double>& y, std::vector<double>& dydt) { dydt[0] = rhs(t, y[0]); },
        std::vector<double>{y0}, t0, sample_times, opt,
        [&out](std::size_t i, double, const std::vector<double>& y) { out[i] = y[0]; });
    return out;
}

} // namespace spreadnet::ode
