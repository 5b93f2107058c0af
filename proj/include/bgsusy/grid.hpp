#pragma once

#include <vector>

namespace bgsusy {

// Uniform 1-D discretization. Shared substrate for all sampled quantities.
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    int n_points = 0;
    double h = 0.0;
    std::vector<double> points;

    bool same_as(const Grid& other) const {
        return x_min == other.x_min && x_max == other.x_max && n_points == other.n_points;
    }
};

Grid make_grid(double x_min, double x_max, int n_points);

// Real-valued samples on a grid.
struct SampledFunction {
    Grid grid;
    std::vector<double> values;
};

}  // namespace bgsusy
