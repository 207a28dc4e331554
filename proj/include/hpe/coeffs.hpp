// Pointwise symmetric 3x3 matrix fields and the (a, b, b0, h) drift
// coefficient bundle shared by the noise and dynamics modules.

#pragma once

#include "hpe/grid.hpp"

#include <array>
#include <vector>

namespace hpe {

// Symmetric matrix per grid point, components ordered xx,xy,xz,yy,yz,zz.
struct MatrixField {
    GridSpec grid;
    std::vector<double> m;

    MatrixField() = default;
    explicit MatrixField(const GridSpec& g) : grid(g) {
        grid.validate();
        m.assign(std::size_t(g.points()) * 6, 0.0);
    }

    static MatrixField identity(const GridSpec& g, double scale = 1.0) {
        MatrixField f(g);
        const std::size_t n = std::size_t(g.points());
        for (std::size_t i = 0; i < n; ++i) {
            f.m[6 * i + 0] = scale; // xx
            f.m[6 * i + 3] = scale; // yy
            f.m[6 * i + 5] = scale; // zz
        }
        return f;
    }

    double* at(std::size_t point) { return m.data() + 6 * point; }
    const double* at(std::size_t point) const { return m.data() + 6 * point; }

    // Entry (r,c) of the symmetric matrix at a point.
    static int entry(int r, int c) {
        static constexpr int map[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        return map[r][c];
    }
};

// Drift data for the Ito form: viscous tensor a, first-order drift b,
// per-channel pressure weights b0, and the Ito correction weight h.
struct DriftCoeffs {
    MatrixField a;
    RealField b;                 // 3 components; empty means zero
    std::vector<RealField> b0;   // scalar field per channel; empty means zero
    double h = 0.0;
    double nu0 = 0.0;            // min_x lambda_min(a(x)); implicit split weight

    static DriftCoeffs isotropic(const GridSpec& g, double nu);
};

// Smallest eigenvalue of a(x) over all grid points.
double min_eigenvalue(const MatrixField& a);

} // namespace hpe
