#include "hpe/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hpe {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool lex_dominates(const std::array<int, 3>& k) {
    for (int c : k) {
        if (c > 0) return true;
        if (c < 0) return false;
    }
    return false; // k = 0
}

double norm3(const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

// Orthonormal basis of the plane k.y = 0.  Integer cross products keep the
// orthogonality exact before normalization.
std::vector<std::array<double, 3>> directions_for(int d, const std::array<int, 3>& k) {
    if (d == 2) {
        double n = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1]);
        return {{{-k[1] / n, k[0] / n, 0.0}}};
    }
    int least = 0;
    for (int axis = 1; axis < 3; ++axis)
        if (std::abs(k[axis]) < std::abs(k[least])) least = axis;
    std::array<double, 3> e{{0.0, 0.0, 0.0}};
    e[least] = 1.0;
    std::array<double, 3> kd{{double(k[0]), double(k[1]), double(k[2])}};
    std::array<double, 3> m1 = cross(kd, e);
    std::array<double, 3> m2 = cross(kd, m1);
    double n1 = norm3(m1), n2 = norm3(m2);
    return {{{m1[0] / n1, m1[1] / n1, m1[2] / n1}},
            {{m2[0] / n2, m2[1] / n2, m2[2] / n2}}};
}

} // namespace

NoiseEnsemble NoiseEnsemble::constant(const std::array<double, 3>& direction,
                                      double amplitude) {
    NoiseEnsemble e;
    e.d = 3;
    e.alpha = 0.0;
    e.kmax = 0;
    e.vertical_lift = true;
    NoiseMode m;
    m.k = {0, 0, 0};
    m.ell = 1;
    m.parity = Parity::cosine;
    m.amplitude = amplitude;
    m.direction = direction;
    e.modes.push_back(m);
    return e;
}

NoiseEnsemble build_kraichnan(int d, double alpha, int kmax) {
    if (d != 2 && d != 3) throw std::invalid_argument("build_kraichnan: d must be 2 or 3");
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("build_kraichnan: alpha must lie in (0,2]");
    if (kmax < 1) throw std::invalid_argument("build_kraichnan: kmax must be >= 1");

    std::vector<std::array<int, 3>> reps;
    const int zlo = (d == 2) ? 0 : -kmax;
    const int zhi = (d == 2) ? 0 : kmax;
    for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kz = zlo; kz <= zhi; ++kz) {
                std::array<int, 3> k{{kx, ky, kz}};
                long long k2 = (long long)kx * kx + (long long)ky * ky + (long long)kz * kz;
                if (k2 == 0 || k2 > (long long)kmax * kmax) continue;
                if (!lex_dominates(k)) continue;
                reps.push_back(k);
            }
    std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
        long long a2 = (long long)a[0] * a[0] + (long long)a[1] * a[1] + (long long)a[2] * a[2];
        long long b2 = (long long)b[0] * b[0] + (long long)b[1] * b[1] + (long long)b[2] * b[2];
        if (a2 != b2) return a2 < b2;
        return a < b;
    });

    NoiseEnsemble e;
    e.d = d;
    e.alpha = alpha;
    e.kmax = kmax;
    for (const auto& k : reps) {
        double mag = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2]);
        // E_alpha(k)^(1/2) / |k|^((d-1)/2) with E_alpha(k) = |k|^(-1-alpha)
        double amp = std::pow(mag, -0.5 * (1.0 + alpha) - 0.5 * (d - 1));
        auto dirs = directions_for(d, k);
        for (int ell = 1; ell <= d - 1; ++ell)
            for (Parity par : {Parity::cosine, Parity::sine}) {
                NoiseMode m;
                m.k = k;
                m.ell = ell;
                m.parity = par;
                m.amplitude = amp;
                m.direction = dirs[std::size_t(ell - 1)];
                e.modes.push_back(m);
            }
    }
    return e;
}

NoiseEnsemble lift_horizontal(NoiseEnsemble e) {
    if (e.vertical_lift) return e;
    if (e.d != 2) throw std::invalid_argument("lift_horizontal: requires a d = 2 ensemble");
    e.vertical_lift = true;
    return e;
}

std::vector<RealField> evaluate_modes(const NoiseEnsemble& e, const GridSpec& g) {
    const int ncomp = (e.d == 2 && !e.vertical_lift) ? 2 : 3;
    std::vector<RealField> out;
    out.reserve(e.modes.size());
    for (const auto& m : e.modes) {
        RealField f(g, ncomp);
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz) {
                    double phase = two_pi * (double(m.k[0]) * ix / g.nx +
                                             double(m.k[1]) * iy / g.ny +
                                             double(m.k[2]) * iz / g.nz);
                    double t = (m.parity == Parity::cosine) ? std::cos(phase)
                                                            : std::sin(phase);
                    double v = m.amplitude * t;
                    for (int c = 0; c < ncomp; ++c) f.at(c, ix, iy, iz) = v * m.direction[c];
                }
        out.push_back(std::move(f));
    }
    return out;
}

MatrixField sigma_outer_sum(const NoiseEnsemble& e, const GridSpec& g) {
    MatrixField s(g);
    for (const auto& m : e.modes) {
        const double a2 = m.amplitude * m.amplitude;
        std::size_t pt = 0;
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz, ++pt) {
                    double phase = two_pi * (double(m.k[0]) * ix / g.nx +
                                             double(m.k[1]) * iy / g.ny +
                                             double(m.k[2]) * iz / g.nz);
                    double t = (m.parity == Parity::cosine) ? std::cos(phase)
                                                            : std::sin(phase);
                    double w = a2 * t * t;
                    double* dst = s.at(pt);
                    dst[0] += w * m.direction[0] * m.direction[0];
                    dst[1] += w * m.direction[0] * m.direction[1];
                    dst[2] += w * m.direction[0] * m.direction[2];
                    dst[3] += w * m.direction[1] * m.direction[1];
                    dst[4] += w * m.direction[1] * m.direction[2];
                    dst[5] += w * m.direction[2] * m.direction[2];
                }
    }
    return s;
}

double parabolicity_margin(const NoiseEnsemble& e, const MatrixField& a) {
    MatrixField s = sigma_outer_sum(e, a.grid);
    MatrixField diff(a.grid);
    for (std::size_t i = 0; i < diff.m.size(); ++i) diff.m[i] = a.m[i] - 0.5 * s.m[i];
    return min_eigenvalue(diff);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need >= 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

RegularityReport regularity_report(int d, double alpha, const std::vector<int>& K_list,
                                   double gamma) {
    if (K_list.size() < 2) throw std::invalid_argument("regularity_report: need >= 2 K values");
    for (std::size_t i = 1; i < K_list.size(); ++i)
        if (K_list[i] <= K_list[i - 1])
            throw std::invalid_argument("regularity_report: K_list must increase");
    if (d != 2 && d != 3) throw std::invalid_argument("regularity_report: d must be 2 or 3");

    RegularityReport rep;
    rep.K = K_list;
    rep.gamma = gamma;

    const int kmax = K_list.back();
    // Bucket lattice sums per |k|^2 <= kmax^2, then accumulate per K.
    std::vector<double> h(K_list.size(), 0.0), cg(K_list.size(), 0.0);
    const int zlo = (d == 2) ? 0 : -kmax;
    const int zhi = (d == 2) ? 0 : kmax;
    for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kz = zlo; kz <= zhi; ++kz) {
                long long k2 = (long long)kx * kx + (long long)ky * ky + (long long)kz * kz;
                if (k2 == 0 || k2 > (long long)kmax * kmax) continue;
                double mag2 = double(k2);
                double mag = std::sqrt(mag2);
                // (d-1) directions; cos/sin pairs traverse the whole lattice.
                double amp2 = double(d - 1) * std::pow(mag, -(1.0 + alpha) - (d - 1.0));
                double h_term = std::pow(1.0 + mag2, 0.5 * alpha) * amp2;
                double c_term = amp2 * std::pow(two_pi * mag, 2.0 * gamma);
                for (std::size_t i = 0; i < K_list.size(); ++i)
                    if (k2 <= (long long)K_list[i] * K_list[i]) {
                        h[i] += h_term;
                        cg[i] += c_term;
                    }
            }
    rep.h_partial = h;
    rep.c_gamma_partial = cg;

    std::vector<double> logk;
    for (int K : K_list) logk.push_back(std::log(double(K)));
    LineFit fit = fit_line(logk, h);
    rep.h_slope = fit.slope;
    rep.h_intercept = fit.intercept;
    rep.h_r2 = fit.r2;

    for (std::size_t i = 2; i < K_list.size(); ++i) {
        double prev = cg[i - 1] - cg[i - 2];
        double cur = cg[i] - cg[i - 1];
        rep.c_tail_ratios.push_back(cur / prev);
    }
    return rep;
}

SpectrumReport spectrum_slope(const NoiseEnsemble& e) {
    int shells = 0;
    while ((2 << shells) <= e.kmax + 1) ++shells;
    if (shells < 3)
        throw std::invalid_argument("spectrum_slope: need kmax >= 8 (3 dyadic shells)");

    SpectrumReport rep;
    std::vector<double> sum(std::size_t(shells), 0.0);
    std::vector<double> la, lk;
    for (const auto& m : e.modes) {
        double mag = std::sqrt(double(m.k[0]) * m.k[0] + double(m.k[1]) * m.k[1] +
                               double(m.k[2]) * m.k[2]);
        if (mag > 0.0) {
            la.push_back(std::log(m.amplitude));
            lk.push_back(std::log(mag));
        }
        int j = int(std::floor(std::log2(mag)));
        if (j >= 0 && j < shells) sum[std::size_t(j)] += m.amplitude * m.amplitude;
    }
    std::vector<double> lx, ly;
    for (int j = 0; j < shells; ++j) {
        double width = double(1 << j);
        double kc = double(1 << j) * std::numbers::sqrt2;
        rep.shell_k.push_back(kc);
        rep.shell_energy.push_back(sum[std::size_t(j)] / width);
        lx.push_back(std::log(kc));
        ly.push_back(std::log(rep.shell_energy.back()));
    }
    rep.slope = fit_line(lx, ly).slope;
    rep.amplitude_slope = fit_line(lk, la).slope;
    return rep;
}

void save_ensemble(std::ostream& os, const NoiseEnsemble& e) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "# kraichnan d=%d alpha=%.17g kmax=%d\n", e.d, e.alpha,
                  e.kmax);
    os << buf;
    for (const auto& m : e.modes) {
        std::snprintf(buf, sizeof buf, "%d %d %d %d %s %.17g %.17g %.17g %.17g\n", m.k[0],
                      m.k[1], m.k[2], m.ell, m.parity == Parity::cosine ? "cos" : "sin",
                      m.amplitude, m.direction[0], m.direction[1], m.direction[2]);
        os << buf;
    }
}

NoiseEnsemble load_ensemble(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("load_ensemble: empty input");
    NoiseEnsemble e;
    {
        std::istringstream hs(line);
        std::string hash, tag, kv;
        hs >> hash >> tag;
        if (hash != "#" || tag != "kraichnan")
            throw std::runtime_error("load_ensemble: bad header '" + line + "'");
        while (hs >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("load_ensemble: bad header field '" + kv + "'");
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "d") e.d = std::stoi(val);
            else if (key == "alpha") e.alpha = std::stod(val);
            else if (key == "kmax") e.kmax = std::stoi(val);
            else throw std::runtime_error("load_ensemble: unknown header key '" + key + "'");
        }
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        NoiseMode m;
        std::string parity;
        if (!(ls >> m.k[0] >> m.k[1] >> m.k[2] >> m.ell >> parity >> m.amplitude >>
              m.direction[0] >> m.direction[1] >> m.direction[2]))
            throw std::runtime_error("load_ensemble: bad mode line '" + line + "'");
        if (parity == "cos") m.parity = Parity::cosine;
        else if (parity == "sin") m.parity = Parity::sine;
        else throw std::runtime_error("load_ensemble: bad parity '" + parity + "'");
        e.modes.push_back(m);
    }
    return e;
}

} // namespace hpe
