#include "wigsim/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wigsim/errors.hpp"

namespace wigsim {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int n_points, double half_width) : n_(n_points), half_width_(half_width) {
    if (!is_pow2(n_points) || n_points < 8)
        throw ConfigError("Grid: n_points must be a power of two >= 8, got " +
                          std::to_string(n_points));
    if (!(half_width > 0.0))
        throw ConfigError("Grid: half_width must be positive");
    dx_ = 2.0 * half_width_ / n_;
    dp_ = std::numbers::pi / half_width_;  // 2*pi / (n*dx)
}

double Grid::wrap(double x) const {
    const double period = 2.0 * half_width_;
    double r = std::fmod(x + half_width_, period);
    if (r < 0.0) r += period;
    return r - half_width_;
}

std::vector<double> Grid::positions() const {
    std::vector<double> xs(n_);
    for (int i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
}

std::vector<double> Grid::momenta() const {
    std::vector<double> ps(n_);
    for (int i = 0; i < n_; ++i) ps[i] = p(i);
    return ps;
}

bool operator==(const Grid& a, const Grid& b) {
    return a.n() == b.n() && a.half_width() == b.half_width();
}

}  // namespace wigsim
