#pragma once

#include <vector>

namespace wigsim {

// Uniform periodic position grid, symmetric about x = 0.  Samples sit at
// x_i = (i - n/2) * dx for i in [0, n), so x = 0 is the sample at n/2 and
// reflection about the origin is the exact index map i -> (n - i) mod n
// (the leftmost sample -L is its own mirror image modulo the period 2L).
//
// Momentum samples follow FFT ordering: p_i = 2*pi/(n*dx) * s(i) with
// s(i) = i for i < n/2 and i - n for i >= n/2.
class Grid {
public:
    Grid(int n_points, double half_width);

    int n() const { return n_; }
    double half_width() const { return half_width_; }
    double dx() const { return dx_; }
    double dp() const { return dp_; }

    double x(int i) const { return (i - n_ / 2) * dx_; }
    double p(int i) const { return dp_ * (i < n_ / 2 ? i : i - n_); }

    int reflect(int i) const { return i == 0 ? 0 : n_ - i; }

    // Wraps an arbitrary coordinate into [-L, L).
    double wrap(double x) const;

    std::vector<double> positions() const;
    std::vector<double> momenta() const;

private:
    int n_;
    double half_width_;
    double dx_;
    double dp_;
};

bool operator==(const Grid& a, const Grid& b);
inline bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

}  // namespace wigsim
