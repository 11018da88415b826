#pragma once

#include <cmath>
#include <numbers>

namespace dlz {

template <class F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, bool maximize, double tol,
                                         std::size_t max_steps) {
    const double inv_phi = std::numbers::phi - 1.0;
    auto better = [maximize](double a, double b) { return maximize ? a > b : a < b; };

    double a = std::log(lo), b = std::log(hi);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(std::exp(c));
    double fd = f(std::exp(d));

    double best_x = std::exp(c), best_f = fc;
    auto consider = [&](double x, double fx) {
        if (better(fx, best_f) || (fx == best_f && x < best_x)) {
            best_x = x;
            best_f = fx;
        }
    };
    consider(std::exp(d), fd);

    for (std::size_t i = 0; i < max_steps && (b - a) > tol; ++i) {
        if (better(fc, fd) || fc == fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(std::exp(c));
            consider(std::exp(c), fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(std::exp(d));
            consider(std::exp(d), fd);
        }
    }
    return {best_x, best_f};
}

} // namespace dlz
