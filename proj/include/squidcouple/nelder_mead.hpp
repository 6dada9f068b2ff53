// nelder_mead.hpp: Derivative-free simplex minimizer with restart on stall

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace squidcouple {

struct NelderMeadOptions {
    int max_evaluations{1000};
    double f_target{-std::numeric_limits<double>::infinity()};  // stop once f <= f_target
    double x_tol{1e-10};
    double f_tol{1e-14};
    int max_restarts{3};
    bool adaptive{true};  // dimension-dependent coefficients
};

template <typename Scalar = double>
struct NelderMeadResult {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
    Scalar f{};
    int evaluations{0};
    int restarts{0};
    bool reached_target{false};
};

/// Minimizes f starting from x0 with initial per-coordinate step sizes.
/// Deterministic for a deterministic objective.
template <typename Scalar = double, typename Objective>
NelderMeadResult<Scalar> nelder_mead(Objective&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0,
                                     const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& step,
                                     const NelderMeadOptions& opt = {})
{
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const int n = static_cast<int>(x0.size());
    const Scalar dim = static_cast<Scalar>(n);
    const Scalar alpha = 1;
    const Scalar gamma = opt.adaptive ? 1 + 2 / dim : 2;
    const Scalar rho = opt.adaptive ? Scalar(0.75) - 1 / (2 * dim) : Scalar(0.5);
    const Scalar sigma = opt.adaptive ? 1 - 1 / dim : Scalar(0.5);

    NelderMeadResult<Scalar> res;
    res.x = x0;
    auto eval = [&](const Vec& x) {
        ++res.evaluations;
        return static_cast<Scalar>(f(x));
    };
    res.f = eval(x0);
    if (res.f <= opt.f_target) {
        res.reached_target = true;
        return res;
    }

    Vec scale = step;
    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        res.restarts = restart;
        std::vector<Vec> pts(n + 1, res.x);
        std::vector<Scalar> vals(n + 1, res.f);
        for (int i = 0; i < n; ++i) {
            pts[i + 1](i) += scale(i);
            if (res.evaluations >= opt.max_evaluations) return res;
            vals[i + 1] = eval(pts[i + 1]);
        }
        std::vector<int> order(n + 1);
        while (res.evaluations < opt.max_evaluations) {
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
            const int best = order.front(), worst = order.back(), second = order[n - 1];
            if (vals[best] < res.f) {
                res.f = vals[best];
                res.x = pts[best];
            }
            if (res.f <= opt.f_target) {
                res.reached_target = true;
                return res;
            }
            Scalar spread = 0;
            for (int i = 0; i <= n; ++i) spread = std::max(spread, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
            if (spread <= opt.x_tol && std::abs(vals[worst] - vals[best]) <= opt.f_tol) break;

            Vec centroid = Vec::Zero(n);
            for (int i = 0; i <= n; ++i)
                if (i != worst) centroid += pts[i];
            centroid /= dim;

            const Vec xr = centroid + alpha * (centroid - pts[worst]);
            const Scalar fr = eval(xr);
            if (fr < vals[best]) {
                const Vec xe = centroid + gamma * (xr - centroid);
                const Scalar fe = eval(xe);
                if (fe < fr) { pts[worst] = xe; vals[worst] = fe; }
                else { pts[worst] = xr; vals[worst] = fr; }
                continue;
            }
            if (fr < vals[second]) {
                pts[worst] = xr;
                vals[worst] = fr;
                continue;
            }
            const bool outside = fr < vals[worst];
            const Vec xc = outside ? Vec(centroid + rho * (xr - centroid))
                                   : Vec(centroid + rho * (pts[worst] - centroid));
            const Scalar fc = eval(xc);
            if (fc < (outside ? fr : vals[worst])) {
                pts[worst] = xc;
                vals[worst] = fc;
                continue;
            }
            for (int i = 0; i <= n; ++i) {
                if (i == best) continue;
                pts[i] = pts[best] + sigma * (pts[i] - pts[best]);
                if (res.evaluations >= opt.max_evaluations) break;
                vals[i] = eval(pts[i]);
            }
        }
        for (int i = 0; i <= n; ++i)
            if (vals[i] < res.f) { res.f = vals[i]; res.x = pts[i]; }
        // Restart with a smaller simplex around the incumbent.
        scale *= Scalar(0.5);
    }
    return res;
}

}  // namespace squidcouple
