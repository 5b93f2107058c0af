#include "bgsusy/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "bgsusy/errors.hpp"

namespace bgsusy {

Grid make_grid(double x_min, double x_max, int n_points) {
    if (!(x_min < x_max)) throw std::invalid_argument("make_grid: need x_min < x_max");
    if (n_points < 3) throw std::invalid_argument("make_grid: need n_points >= 3");
    Grid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_points = n_points;
    g.h = (x_max - x_min) / (n_points - 1);
    g.points.resize(n_points);
    for (int i = 0; i < n_points; ++i) g.points[i] = x_min + i * g.h;
    g.points.back() = x_max;
    return g;
}

SampledFunction differentiate(const SampledFunction& f, int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("differentiate: order must be 1 or 2");
    const int n = f.grid.n_points;
    if (n < 5) throw std::invalid_argument("differentiate: need at least 5 grid points");
    const double h = f.grid.h;
    const auto& v = f.values;
    SampledFunction out;
    out.grid = f.grid;
    out.values.resize(n);
    auto& d = out.values;

    if (order == 1) {
        d[0] = (-11.0 * v[0] + 18.0 * v[1] - 9.0 * v[2] + 2.0 * v[3]) / (6.0 * h);
        d[1] = (-2.0 * v[0] - 3.0 * v[1] + 6.0 * v[2] - v[3]) / (6.0 * h);
        for (int i = 2; i < n - 2; ++i)
            d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
        d[n - 2] = (v[n - 4] - 6.0 * v[n - 3] + 3.0 * v[n - 2] + 2.0 * v[n - 1]) / (6.0 * h);
        d[n - 1] = (11.0 * v[n - 1] - 18.0 * v[n - 2] + 9.0 * v[n - 3] - 2.0 * v[n - 4]) / (6.0 * h);
    } else {
        const double h2 = h * h;
        d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
        d[1] = (v[0] - 2.0 * v[1] + v[2]) / h2;
        for (int i = 2; i < n - 2; ++i)
            d[i] = (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) /
                   (12.0 * h2);
        d[n - 2] = (v[n - 3] - 2.0 * v[n - 2] + v[n - 1]) / h2;
        d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    }
    return out;
}

namespace {

double simpson(const RealFn& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

}  // namespace

double integrate(const RealFn& f, double a, double b, double rel_tol) {
    if (!(a < b)) throw std::invalid_argument("integrate: need a < b");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate: need rel_tol > 0");
    int panels = 8;
    double prev = simpson(f, a, b, panels);
    for (int iter = 0; iter < 24; ++iter) {
        panels *= 2;
        const double cur = simpson(f, a, b, panels);
        const double scale = std::max(std::abs(cur), std::abs(prev));
        if (std::abs(cur - prev) < rel_tol * scale || std::abs(cur - prev) < 1e-14) return cur;
        prev = cur;
    }
    throw ConvergenceError("integrate: Simpson refinement did not converge");
}

double integrate(const SampledFunction& f) {
    const int n = f.grid.n_points;
    const double h = f.grid.h;
    const auto& v = f.values;
    if (n < 3) throw std::invalid_argument("integrate: need at least 3 samples");
    double s = 0.0;
    int last = n - 1;
    if ((n - 1) % 2 != 0) {
        // odd panel count: Simpson 3/8 on the final three cells
        s += 3.0 * h / 8.0 * (v[n - 4] + 3.0 * v[n - 3] + 3.0 * v[n - 2] + v[n - 1]);
        last = n - 4;
        if (last == 0) return s;
    }
    double acc = v[0] + v[last];
    for (int i = 1; i < last; ++i) acc += (i % 2 ? 4.0 : 2.0) * v[i];
    return s + acc * h / 3.0;
}

SampledFunction wronskian(const SampledFunction& f, const SampledFunction& g) {
    if (!f.grid.same_as(g.grid)) throw std::invalid_argument("wronskian: grid mismatch");
    SampledFunction df = differentiate(f, 1);
    SampledFunction dg = differentiate(g, 1);
    SampledFunction out;
    out.grid = f.grid;
    out.values.resize(f.grid.n_points);
    for (int i = 0; i < f.grid.n_points; ++i)
        out.values[i] = f.values[i] * dg.values[i] - df.values[i] * g.values[i];
    return out;
}

SampledFunction wronskian(const Grid& grid, const RealFn& f, const RealFn& g,
                          const RealFn& df, const RealFn& dg) {
    SampledFunction out;
    out.grid = grid;
    out.values.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.points[i];
        out.values[i] = f(x) * dg(x) - df(x) * g(x);
    }
    return out;
}

namespace {
// 5-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kGx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                           0.5384693101056831, 0.9061798459386640};
constexpr double kGw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                           0.4786286704993665, 0.2369268850561891};
}  // namespace

double CumulativeIntegral::cell(double a, double b) const {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += kGw[i] * f_(c + r * kGx[i]);
    return s * r;
}

CumulativeIntegral::CumulativeIntegral(RealFn f, const Grid& grid)
    : f_(std::move(f)), grid_(grid) {
    const int n = grid_.n_points;
    pre_.resize(n);
    suf_.resize(n);
    pre_[0] = 0.0;
    for (int i = 1; i < n; ++i)
        pre_[i] = pre_[i - 1] + cell(grid_.points[i - 1], grid_.points[i]);
    suf_[n - 1] = 0.0;
    for (int i = n - 2; i >= 0; --i)
        suf_[i] = suf_[i + 1] + cell(grid_.points[i], grid_.points[i + 1]);
    total_ = pre_[n - 1];
}

double CumulativeIntegral::prefix(double x) const {
    if (x <= grid_.x_min) return 0.0;
    if (x >= grid_.x_max) return total_;
    const int i = static_cast<int>((x - grid_.x_min) / grid_.h);
    const int j = std::min(i, grid_.n_points - 2);
    return pre_[j] + (x > grid_.points[j] ? cell(grid_.points[j], x) : 0.0);
}

double CumulativeIntegral::suffix(double x) const {
    if (x <= grid_.x_min) return total_;
    if (x >= grid_.x_max) return 0.0;
    const int i = static_cast<int>((x - grid_.x_min) / grid_.h);
    const int j = std::min(i + 1, grid_.n_points - 1);
    return suf_[j] + (x < grid_.points[j] ? cell(x, grid_.points[j]) : 0.0);
}

}  // namespace bgsusy
