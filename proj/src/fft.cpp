#include "hpe/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace hpe {
namespace {

// FFTW planning is not thread safe and repeated planning is wasteful, so we
// keep one in-place c2c plan per (shape, sign).  Plans are executed through
// fftw_execute_dft on caller-owned buffers, which FFTW permits for plans
// created with the same alignment and in-place layout.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    void execute(const GridSpec& g, int sign, std::complex<double>* data) {
        execute_impl(g.nx, g.ny, g.nz, sign, data);
    }

    // nz = 0 selects a 2d transform.
    void execute_impl(int nx, int ny, int nz, int sign, std::complex<double>* data) {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto key = std::make_tuple(nx, ny, nz, sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                std::size_t count = std::size_t(nx) * ny * std::max(nz, 1);
                fftw_complex* buf = fftw_alloc_complex(count);
                plan = (nz == 0)
                           ? fftw_plan_dft_2d(nx, ny, buf, buf, sign, FFTW_ESTIMATE)
                           : fftw_plan_dft_3d(nx, ny, nz, buf, buf, sign, FFTW_ESTIMATE);
                fftw_free(buf);
                it = plans_.emplace(key, plan).first;
            }
            plan = it->second;
        }
        auto* raw = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(plan, raw, raw);
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

} // namespace

SpectralField to_spectral(const RealField& f) {
    SpectralField F(f.grid, f.components);
    const std::size_t n = std::size_t(f.grid.points());
    const double scale = 1.0 / double(n);
    for (int c = 0; c < f.components; ++c) {
        auto* dst = F.component(c);
        const double* src = f.component(c);
        for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
        PlanCache::instance().execute(f.grid, FFTW_FORWARD, dst);
        for (std::size_t i = 0; i < n; ++i) dst[i] *= scale;
    }
    return F;
}

double hermitian_defect(const SpectralField& F) {
    const auto& g = F.grid;
    double worst = 0.0;
    for (int c = 0; c < F.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz) {
                    int jx = (g.nx - ix) % g.nx;
                    int jy = (g.ny - iy) % g.ny;
                    int jz = (g.nz - iz) % g.nz;
                    std::complex<double> d =
                        F.at(c, ix, iy, iz) - std::conj(F.at(c, jx, jy, jz));
                    worst = std::max(worst, std::abs(d));
                }
    return worst;
}

RealField to_physical(const SpectralField& F, double hermitian_tol) {
    double scale = 0.0;
    for (const auto& z : F.coeffs) scale = std::max(scale, std::abs(z));
    double defect = hermitian_defect(F);
    if (defect > hermitian_tol * std::max(scale, 1.0))
        throw std::invalid_argument("to_physical: coefficients are not Hermitian-symmetric");

    RealField f(F.grid, F.components);
    const std::size_t n = std::size_t(F.grid.points());
    std::vector<std::complex<double>> work(n);
    for (int c = 0; c < F.components; ++c) {
        const auto* src = F.component(c);
        for (std::size_t i = 0; i < n; ++i) work[i] = src[i];
        PlanCache::instance().execute(F.grid, FFTW_BACKWARD, work.data());
        double* dst = f.component(c);
        for (std::size_t i = 0; i < n; ++i) dst[i] = work[i].real();
    }
    return f;
}

double l2_norm(const RealField& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v * v;
    return std::sqrt(acc / double(f.grid.points()));
}

double l2_norm(const SpectralField& F) {
    double acc = 0.0;
    for (const auto& z : F.coeffs) acc += std::norm(z);
    return std::sqrt(acc);
}

SpectralField2 to_spectral(const Field2& f) {
    SpectralField2 F(f.nx, f.ny, f.components);
    const std::size_t n = std::size_t(f.nx) * f.ny;
    const double scale = 1.0 / double(n);
    for (int c = 0; c < f.components; ++c) {
        auto* dst = F.coeffs.data() + std::size_t(c) * n;
        const double* src = f.values.data() + std::size_t(c) * n;
        for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
        PlanCache::instance().execute_impl(f.nx, f.ny, 0, FFTW_FORWARD, dst);
        for (std::size_t i = 0; i < n; ++i) dst[i] *= scale;
    }
    return F;
}

Field2 to_physical(const SpectralField2& F, double hermitian_tol) {
    double scale = 0.0;
    for (const auto& z : F.coeffs) scale = std::max(scale, std::abs(z));
    double worst = 0.0;
    for (int c = 0; c < F.components; ++c)
        for (int ix = 0; ix < F.nx; ++ix)
            for (int iy = 0; iy < F.ny; ++iy) {
                int jx = (F.nx - ix) % F.nx;
                int jy = (F.ny - iy) % F.ny;
                worst = std::max(worst,
                                 std::abs(F.at(c, ix, iy) - std::conj(F.at(c, jx, jy))));
            }
    if (worst > hermitian_tol * std::max(scale, 1.0))
        throw std::invalid_argument("to_physical: coefficients are not Hermitian-symmetric");

    Field2 f(F.nx, F.ny, F.components);
    const std::size_t n = std::size_t(F.nx) * F.ny;
    std::vector<std::complex<double>> work(n);
    for (int c = 0; c < F.components; ++c) {
        const auto* src = F.coeffs.data() + std::size_t(c) * n;
        for (std::size_t i = 0; i < n; ++i) work[i] = src[i];
        PlanCache::instance().execute_impl(F.nx, F.ny, 0, FFTW_BACKWARD, work.data());
        double* dst = f.values.data() + std::size_t(c) * n;
        for (std::size_t i = 0; i < n; ++i) dst[i] = work[i].real();
    }
    return f;
}

double l2_norm(const Field2& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v * v;
    return std::sqrt(acc / (double(f.nx) * f.ny));
}

} // namespace hpe
