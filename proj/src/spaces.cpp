#include "hpe/spaces.hpp"

#include "hpe/rng.hpp"
#include "hpe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hpe {

namespace {

// Pointwise Euclidean magnitude over components.
std::vector<double> magnitude(const RealField& f) {
    const std::size_t n = std::size_t(f.grid.points());
    std::vector<double> r(n, 0.0);
    for (int c = 0; c < f.components; ++c) {
        const double* p = f.component(c);
        for (std::size_t i = 0; i < n; ++i) r[i] += p[i] * p[i];
    }
    for (std::size_t i = 0; i < n; ++i) r[i] = std::sqrt(r[i]);
    return r;
}

} // namespace

double lebesgue_norm(const RealField& f, double q, double zeta) {
    if (q < 1.0 || zeta < 1.0)
        throw std::invalid_argument("lebesgue_norm: exponents must be >= 1");
    const auto& g = f.grid;
    std::vector<double> mag = magnitude(f);
    double outer = 0.0;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const double* col = mag.data() + (std::size_t(ix) * g.ny + iy) * g.nz;
            double inner = 0.0;
            for (int iz = 0; iz < g.nz; ++iz) inner += std::pow(col[iz], zeta);
            inner /= double(g.nz);
            outer += std::pow(inner, q / zeta);
        }
    outer /= double(g.nx) * double(g.ny);
    return std::pow(outer, 1.0 / q);
}

double bessel_norm(const RealField& f, double s, double q, double zeta) {
    SpectralField F = bessel_multiplier(to_spectral(f), s);
    return lebesgue_norm(to_physical(F), q, zeta);
}

namespace {

// Smooth cutoff: 1 on t <= 1, 0 on t >= 2.
double cutoff(double t) {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    auto bump = [](double x) { return std::exp(-1.0 / x); };
    double a = bump(2.0 - t), b = bump(t - 1.0);
    return a / (a + b);
}

double psi(int j, double m) { return cutoff(m / double(1 << j)); } // j >= 0

} // namespace

double besov_block_weight(int j, double m) {
    if (j == -1) return psi(0, m);
    return psi(j + 1, m) - psi(j, m);
}

int besov_block_count(const GridSpec& g) {
    double kmax = 0.5 * std::sqrt(double(g.nx) * g.nx + double(g.ny) * g.ny +
                                  double(g.nz) * g.nz);
    int j = 0;
    while ((1 << j) < kmax) ++j;
    return j + 1; // blocks -1 .. j-1 can be nonzero
}

double besov_norm(const RealField& f, double s, double q, double zeta, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("besov_norm: p must be >= 1 (or infinity)");
    const auto& g = f.grid;
    SpectralField F = to_spectral(f);
    const bool p_inf = std::isinf(p);
    const int jmax = besov_block_count(g) - 2; // highest block index

    double acc = 0.0;
    SpectralField block(g, f.components);
    for (int j = -1; j <= jmax; ++j) {
        bool nonzero = false;
        for (int c = 0; c < f.components; ++c)
            for (int ix = 0; ix < g.nx; ++ix)
                for (int iy = 0; iy < g.ny; ++iy)
                    for (int iz = 0; iz < g.nz; ++iz) {
                        double kx = wavenumber(ix, g.nx);
                        double ky = wavenumber(iy, g.ny);
                        double kz = wavenumber(iz, g.nz);
                        double m = std::sqrt(kx * kx + ky * ky + kz * kz);
                        double w = besov_block_weight(j, m);
                        std::complex<double> v = w * F.at(c, ix, iy, iz);
                        block.at(c, ix, iy, iz) = v;
                        nonzero |= (v != std::complex<double>(0.0, 0.0));
                    }
        if (!nonzero) continue;
        double nrm = lebesgue_norm(to_physical(block), q, zeta);
        double weight = (j == -1) ? 1.0 : std::pow(2.0, double(j) * s);
        if (p_inf)
            acc = std::max(acc, weight * nrm);
        else
            acc += std::pow(weight * nrm, p);
    }
    return p_inf ? acc : std::pow(acc, 1.0 / p);
}

namespace {

struct PairScanInput {
    GridSpec grid;
    std::vector<const double*> comps; // all components of all member fields
};

double holder_scan(const PairScanInput& in, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("holder_norm: gamma must lie in (0,1)");
    const auto& g = in.grid;
    const int nx = g.nx, ny = g.ny, nz = g.nz;
    const std::size_t npts = std::size_t(g.points());

    auto flat = [&](int ix, int iy, int iz) {
        return (std::size_t(ix) * ny + iy) * nz + iz;
    };
    auto diff = [&](std::size_t a, std::size_t b) {
        double acc = 0.0;
        for (const double* p : in.comps) {
            double d = p[a] - p[b];
            acc += d * d;
        }
        return std::sqrt(acc);
    };
    auto torus = [](double d) {
        d = std::abs(d);
        return std::min(d, 1.0 - d);
    };

    double sup = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        double acc = 0.0;
        for (const double* p : in.comps) acc += p[i] * p[i];
        sup = std::max(sup, acc);
    }
    sup = std::sqrt(sup);

    double semi = 0.0;
    auto consider = [&](std::size_t a, std::size_t b, double dist) {
        semi = std::max(semi, diff(a, b) / std::pow(dist, gamma));
    };

    // Every pair on every axis-aligned grid line.
    for (int iy = 0; iy < ny; ++iy)
        for (int iz = 0; iz < nz; ++iz)
            for (int i1 = 0; i1 < nx; ++i1)
                for (int i2 = i1 + 1; i2 < nx; ++i2)
                    consider(flat(i1, iy, iz), flat(i2, iy, iz),
                             torus(double(i2 - i1) / nx));
    for (int ix = 0; ix < nx; ++ix)
        for (int iz = 0; iz < nz; ++iz)
            for (int i1 = 0; i1 < ny; ++i1)
                for (int i2 = i1 + 1; i2 < ny; ++i2)
                    consider(flat(ix, i1, iz), flat(ix, i2, iz),
                             torus(double(i2 - i1) / ny));
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            for (int i1 = 0; i1 < nz; ++i1)
                for (int i2 = i1 + 1; i2 < nz; ++i2)
                    consider(flat(ix, iy, i1), flat(ix, iy, i2),
                             torus(double(i2 - i1) / nz));

    // Seeded off-axis sample: 10 pairs per grid point.
    const std::uint64_t key = 0x686f6c64u; // arbitrary fixed tag
    for (std::size_t t = 0; t < 10 * npts; ++t) {
        PhiloxOut r1 = philox4x32(std::uint32_t(t), std::uint32_t(t >> 32), 0, 1,
                                  std::uint32_t(key), std::uint32_t(key >> 32));
        PhiloxOut r2 = philox4x32(std::uint32_t(t), std::uint32_t(t >> 32), 0, 2,
                                  std::uint32_t(key), std::uint32_t(key >> 32));
        int ax = int(r1.v[0] % nx), ay = int(r1.v[1] % ny), az = int(r1.v[2] % nz);
        int bx = int(r2.v[0] % nx), by = int(r2.v[1] % ny), bz = int(r2.v[2] % nz);
        if (ax == bx && ay == by && az == bz) continue;
        double dx = torus(double(ax - bx) / nx);
        double dy = torus(double(ay - by) / ny);
        double dz = torus(double(az - bz) / nz);
        consider(flat(ax, ay, az), flat(bx, by, bz),
                 std::sqrt(dx * dx + dy * dy + dz * dz));
    }

    return sup + semi;
}

} // namespace

double holder_norm(const RealField& f, double gamma) {
    PairScanInput in;
    in.grid = f.grid;
    for (int c = 0; c < f.components; ++c) in.comps.push_back(f.component(c));
    return holder_scan(in, gamma);
}

double holder_norm(const std::vector<RealField>& family, double gamma) {
    if (family.empty()) throw std::invalid_argument("holder_norm: empty family");
    PairScanInput in;
    in.grid = family.front().grid;
    for (const auto& f : family) {
        if (!(f.grid == in.grid))
            throw std::invalid_argument("holder_norm: family members on different grids");
        for (int c = 0; c < f.components; ++c) in.comps.push_back(f.component(c));
    }
    return holder_scan(in, gamma);
}

bool verify_embedding(const SpaceParams& src, const SpaceParams& dst) {
    constexpr double eps = 1e-9;
    if (dst.q + eps < src.q) return false;
    if (dst.zeta + eps < src.zeta) return false;
    if (dst.p + eps < src.p) return false;
    if (dst.s > src.s + eps) return false;
    double src_surplus = src.s - (2.0 / src.q + 1.0 / src.zeta);
    double dst_surplus = dst.s - (2.0 / dst.q + 1.0 / dst.zeta);
    return src_surplus + eps >= dst_surplus;
}

} // namespace hpe
