#include "ruledricci/quadrature.hpp"

#include <cmath>

namespace rr {

namespace {

double simpson(double h, double fa, double fm, double fb) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double simpson_adaptive(const std::function<double(double)>& f, double a, double m, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth,
                        int max_depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm)) {
        throw NumericError("non-finite integrand");
    }
    const double h = b - a;
    const double left = simpson(0.5 * h, fa, flm, fm);
    const double right = simpson(0.5 * h, fm, frm, fb);
    const double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol || depth >= max_depth) {
        return left + right + err;
    }
    return simpson_adaptive(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_adaptive(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    if (sign < 0.0) std::swap(a, b);
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
        throw NumericError("non-finite integrand");
    }
    const double whole = simpson(b - a, fa, fm, fb);
    return sign * simpson_adaptive(f, a, m, b, fa, fm, fb, whole, abs_tol, 0, max_depth);
}

namespace detail {

const std::array<double, 6>& lobatto_nodes() {
    static const std::array<double, 6> nodes = [] {
        std::array<double, 6> n{};
        for (int k = 0; k < 6; ++k) n[k] = -std::cos(k * M_PI / 5.0);
        n[0] = -1.0;
        n[5] = 1.0;
        return n;
    }();
    return nodes;
}

const std::array<std::array<double, 6>, 6>& lobatto_inverse_vandermonde() {
    static const std::array<std::array<double, 6>, 6> inv = [] {
        const auto& nodes = lobatto_nodes();
        // augmented Gauss-Jordan on V[i][j] = nodes[i]^j
        double a[6][12] = {};
        for (int i = 0; i < 6; ++i) {
            double p = 1.0;
            for (int j = 0; j < 6; ++j) {
                a[i][j] = p;
                p *= nodes[i];
            }
            a[i][6 + i] = 1.0;
        }
        for (int col = 0; col < 6; ++col) {
            int pivot = col;
            for (int r = col + 1; r < 6; ++r) {
                if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
            }
            for (int j = 0; j < 12; ++j) std::swap(a[col][j], a[pivot][j]);
            const double d = a[col][col];
            for (int j = 0; j < 12; ++j) a[col][j] /= d;
            for (int r = 0; r < 6; ++r) {
                if (r == col) continue;
                const double factor = a[r][col];
                for (int j = 0; j < 12; ++j) a[r][j] -= factor * a[col][j];
            }
        }
        std::array<std::array<double, 6>, 6> out{};
        // c = V^{-1} f: row r of the coefficient map is row r of the inverse
        for (int r = 0; r < 6; ++r) {
            for (int k = 0; k < 6; ++k) out[r][k] = a[r][6 + k];
        }
        return out;
    }();
    return inv;
}

}  // namespace detail

}  // namespace rr
