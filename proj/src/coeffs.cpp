#include "hpe/coeffs.hpp"

#include <Eigen/Dense>

namespace hpe {

DriftCoeffs DriftCoeffs::isotropic(const GridSpec& g, double nu) {
    DriftCoeffs c;
    c.a = MatrixField::identity(g, nu);
    c.h = 0.0;
    c.nu0 = nu;
    return c;
}

double min_eigenvalue(const MatrixField& a) {
    const std::size_t n = std::size_t(a.grid.points());
    double lo = std::numeric_limits<double>::infinity();
    Eigen::Matrix3d m;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
    for (std::size_t i = 0; i < n; ++i) {
        const double* e = a.at(i);
        m << e[0], e[1], e[2],
             e[1], e[3], e[4],
             e[2], e[4], e[5];
        // iterative path: computeDirect loses ~eps^(2/3) on repeated roots,
        // and rank-deficient a (constant sigma) hits exactly that case
        solver.compute(m, Eigen::EigenvaluesOnly);
        lo = std::min(lo, solver.eigenvalues()(0));
    }
    return lo;
}

} // namespace hpe
