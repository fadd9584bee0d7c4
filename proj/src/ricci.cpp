#include "ruledricci/ricci.hpp"

#include <cmath>

#include "ruledricci/errors.hpp"
#include "ruledricci/numfmt.hpp"
#include "ruledricci/parallel.hpp"

namespace rr {

namespace {

constexpr double kNormalizationEps = 1e-30;  // in units of |K|^3

struct MetricInverse {
    double gtt, gtu, guu, det;
};

MetricInverse inverse_at(const MetricField& field, double t, double u) {
    const double E = field.E(t, u), F = field.F(t, u), G = field.G(t, u);
    const double det = E * G - F * F;
    if (!(det > 0.0)) {
        throw NumericError("metric not positive definite at (t, u) = (" + format_double(t) +
                           ", " + format_double(u) + ")");
    }
    return {G / det, -F / det, E / det, det};
}

void check_margin(const MetricField& field, double t, double u, double margin) {
    if (t - margin < field.t_range.lo || t + margin > field.t_range.hi ||
        u - margin < field.u_range.lo || u + margin > field.u_range.hi) {
        throw ValidationError("point (" + format_double(t) + ", " + format_double(u) +
                              ") violates the interior margin " + format_double(margin));
    }
}

}  // namespace

MetricField metric_field_from_patch(const RuledPatch& patch) {
    MetricField field;
    const RuledPatch p = patch;  // captured by value; curves share state
    field.E = [p](double t, double u) {
        return p.alpha.jet(t).d1.squaredNorm() + u * u;
    };
    field.F = [p](double t, double) { return p.alpha.jet(t).d1.dot(p.beta.position(t)); };
    field.G = [](double, double) { return 1.0; };
    field.K = [p](double t, double u) { return gauss_curvature_closed(p, t, u); };
    field.t_range = patch.t_range;
    field.u_range = patch.u_range;
    field.provenance = "patch";
    return field;
}

MetricField metric_field_from_ansatz(ScalarJetFn f, ScalarJetFn lambda, Interval t_range,
                                     Interval u_range) {
    MetricField field;
    field.E = [f](double t, double u) {
        const double fv = f(t).d0;
        return fv * fv + u * u;
    };
    field.F = [f, lambda](double t, double) {
        const double fv = f(t).d0;
        const double lv = lambda(t).d0;
        const double q = fv * fv - lv * lv;
        if (q < -1e-12) throw ValidationError("ansatz requires f^2 >= lambda^2");
        return std::sqrt(std::max(q, 0.0));
    };
    field.G = [](double, double) { return 1.0; };
    field.K = [lambda](double t, double u) {
        const double lv = lambda(t).d0;
        const double q = lv * lv + u * u;
        return -lv * lv / (q * q);
    };
    field.t_range = t_range;
    field.u_range = u_range;
    field.provenance = "ansatz";
    return field;
}

double grad_norm_sq(const MetricField& field, double t, double u, double h) {
    check_margin(field, t, u, 2.0 * h);
    const double kt = (field.K(t + h, u) - field.K(t - h, u)) / (2.0 * h);
    const double ku = (field.K(t, u + h) - field.K(t, u - h)) / (2.0 * h);
    const MetricInverse gi = inverse_at(field, t, u);
    return gi.gtt * kt * kt + 2.0 * gi.gtu * kt * ku + gi.guu * ku * ku;
}

namespace {

double k_dt5(const MetricField& field, double p, double q, double h) {
    return (-field.K(p + 2.0 * h, q) + 8.0 * field.K(p + h, q) - 8.0 * field.K(p - h, q) +
            field.K(p - 2.0 * h, q)) /
           (12.0 * h);
}

double k_du5(const MetricField& field, double p, double q, double h) {
    return (-field.K(p, q + 2.0 * h) + 8.0 * field.K(p, q + h) - 8.0 * field.K(p, q - h) +
            field.K(p, q - 2.0 * h)) /
           (12.0 * h);
}

double flux_t(const MetricField& field, double p, double q, double h) {
    const MetricInverse gi = inverse_at(field, p, q);
    return std::sqrt(gi.det) * (gi.gtt * k_dt5(field, p, q, h) + gi.gtu * k_du5(field, p, q, h));
}

double flux_u(const MetricField& field, double p, double q, double h) {
    const MetricInverse gi = inverse_at(field, p, q);
    return std::sqrt(gi.det) * (gi.gtu * k_dt5(field, p, q, h) + gi.guu * k_du5(field, p, q, h));
}

}  // namespace

double laplace_beltrami(const MetricField& field, double t, double u, double h) {
    check_margin(field, t, u, 2.5 * h);
    const MetricInverse gi = inverse_at(field, t, u);
    const double div =
        (flux_t(field, t + 0.5 * h, u, h) - flux_t(field, t - 0.5 * h, u, h)) / h +
        (flux_u(field, t, u + 0.5 * h, h) - flux_u(field, t, u - 0.5 * h, h)) / h;
    return div / std::sqrt(gi.det);
}

RicciReport ricci_residual_fd(const MetricField& field, int n_t, int n_u, double h,
                              bool refine) {
    if (n_t < 2 || n_u < 2) throw ValidationError("residual grid needs at least 2x2 points");
    if (!(h > 0.0)) throw ValidationError("FD step h must be positive");
    const double margin = 2.5 * h * (1.0 + 1e-9);
    const Interval ti{field.t_range.lo + margin, field.t_range.hi - margin};
    const Interval ui{field.u_range.lo + margin, field.u_range.hi - margin};
    if (!(ti.hi > ti.lo) || !(ui.hi > ui.lo)) {
        throw ValidationError("domain too small for the FD margin at h = " + format_double(h));
    }

    RicciReport report;
    report.n_t = n_t;
    report.n_u = n_u;
    report.h = h;
    report.points.resize(static_cast<std::size_t>(n_t) * n_u);

    auto residual_at = [&field](double t, double u, double step) {
        const double K = field.K(t, u);
        if (!std::isfinite(K)) throw NumericError("non-finite K");
        if (K > 1e-10) {
            throw NumericError("K = " + format_double(K) + " > 0 at (t, u) = (" +
                               format_double(t) + ", " + format_double(u) +
                               "); Ricci metrics have non-positive curvature");
        }
        const double lap = laplace_beltrami(field, t, u, step);
        const double grad = grad_norm_sq(field, t, u, step);
        return K * lap - grad - 4.0 * K * K * K;
    };

    parallel_for(n_t, [&](int i) {
        const double t = ti.lo + ti.length() * i / (n_t - 1);
        for (int jx = 0; jx < n_u; ++jx) {
            const double u = ui.lo + ui.length() * jx / (n_u - 1);
            const double r = residual_at(t, u, h);
            const double K = field.K(t, u);
            PointResidual& pr = report.points[static_cast<std::size_t>(i) * n_u + jx];
            pr.t = t;
            pr.u = u;
            pr.raw = r;
            pr.normalized = r / (std::abs(K * K * K) + kNormalizationEps);
        }
    });

    double sum = 0.0, sumsq = 0.0;
    for (const PointResidual& p : report.points) {
        if (!std::isfinite(p.raw)) throw NumericError("non-finite residual");
        report.max_normalized = std::max(report.max_normalized, std::abs(p.normalized));
        report.max_raw = std::max(report.max_raw, std::abs(p.raw));
        sum += std::abs(p.normalized);
        sumsq += p.normalized * p.normalized;
    }
    const double count = static_cast<double>(report.points.size());
    report.mean_normalized = sum / count;
    report.rms_normalized = std::sqrt(sumsq / count);

    if (refine) {
        double sumsq_half = 0.0;
        std::vector<double> half(report.points.size());
        parallel_for(n_t, [&](int i) {
            for (int jx = 0; jx < n_u; ++jx) {
                const std::size_t idx = static_cast<std::size_t>(i) * n_u + jx;
                const PointResidual& p = report.points[idx];
                const double r = residual_at(p.t, p.u, 0.5 * h);
                const double K = field.K(p.t, p.u);
                half[idx] = r / (std::abs(K * K * K) + kNormalizationEps);
            }
        });
        for (const double v : half) sumsq_half += v * v;
        const double rms_half = std::sqrt(sumsq_half / count);
        if (rms_half > 0.0 && report.rms_normalized > 0.0) {
            report.convergence_order = std::log2(report.rms_normalized / rms_half);
        }
    }
    return report;
}

double closed_form_residual(const ScalarJetFn& lambda, double t, double u) {
    const Jet3 lj = lambda(t);
    const double l = lj.d0, lp = lj.d1, lpp = lj.d2;
    const double l2 = l * l, lp2 = lp * lp;
    const double q = l2 + u * u;
    const double q7 = std::pow(q, 7);
    const double u2 = u * u, u4 = u2 * u2;
    const double grad =
        (4.0 * l2 / q7) *
        ((4.0 * l2 + lp2) * u4 + (4.0 * l2 * l2 - 2.0 * l2 * lp2) * u2 + l2 * l2 * lp2);
    const double kdk =
        (2.0 * l2 / q7) * ((8.0 * l2 + lp2 + l * lpp) * u4 +
                           (6.0 * l2 * l2 - 9.0 * l2 * lp2) * u2 - 2.0 * l2 * l2 * l2 +
                           4.0 * l2 * l2 * lp2 - l2 * l2 * l * lpp);
    const double minus4k3 = 4.0 * l2 * l2 * l2 / (q7 / q);  // 4 l^6 / q^6
    return kdk - grad + minus4k3;
}

std::array<double, 3> delta0_polynomial_coefficients(const ScalarJetFn& lambda, double t) {
    const Jet3 lj = lambda(t);
    const double l = lj.d0, lp = lj.d1, lpp = lj.d2;
    return {lp * lp - l * lpp, 5.0 * l * l * lp * lp,
            -std::pow(l, 4) * (2.0 * lp * lp - l * lpp)};
}

LemmaCoefficients lemma_coefficients(const ScalarJetFn& f_fn, const ScalarJetFn& lambda_fn,
                                     double t) {
    const Jet3 fj = f_fn(t);
    const Jet3 lj = lambda_fn(t);
    const double f = fj.d0, l = lj.d0, lp = lj.d1, lpp = lj.d2;
    const double f2 = f * f;
    const double f2p = 2.0 * f * fj.d1;  // (f^2)'
    const double d2 = f2 - l * l;
    if (d2 < -1e-12 * std::max(1.0, f2)) {
        throw ValidationError("lemma coefficients require f^2 >= lambda^2");
    }
    const double delta = std::sqrt(std::max(d2, 0.0));
    const double l2 = l * l, lp2 = lp * lp;
    const double l3 = l2 * l, l4 = l2 * l2, l5 = l4 * l, l6 = l4 * l2;

    LemmaCoefficients out;
    out.delta = delta;
    out.lambda = l;
    out.f = f;
    out.a = {l4 * lp2,                          // a0
             -4.0 * delta * l3 * lp,            // a1
             2.0 * l2 * (2.0 * f2 - lp2),       // a2
             4.0 * delta * l * lp,              // a3
             4.0 * l2 + lp2};                   // a4
    out.b = {delta * l4 * (l * lpp + 2.0 * f2 - 4.0 * lp2),         // b0
             l3 * (-17.0 * l2 * lp - l * f2p + 19.0 * f2 * lp),     // b1
             3.0 * delta * l2 * (2.0 * l2 - 4.0 * f2 + 3.0 * lp2),  // b2
             l * (11.0 * l2 * lp - l * f2p - 9.0 * f2 * lp),        // b3
             delta * (-8.0 * l2 - lp2 - l * lpp)};                  // b4
    out.c = {2.0 * delta * l6 * (2.0 * l2 - 2.0 * f2 + 2.0 * lp2 - l * lpp),  // c0
             2.0 * l5 * (9.0 * l2 * lp - 11.0 * f2 * lp + l * f2p),           // c1
             2.0 * delta * l4 * (-4.0 * l2 + 4.0 * f2 - 5.0 * lp2),           // c2
             2.0 * l3 * (-3.0 * l2 * lp + f2 * lp + l * f2p),                 // c3
             2.0 * delta * l2 * (l * lpp - lp2)};                             // c4
    return out;
}

double lemma_poly_residual(const LemmaCoefficients& lc, double u) {
    if (lc.delta == 0.0) {
        throw ValidationError(
            "c-coefficient residual is only meaningful for delta != 0; use "
            "closed_form_residual for the delta = 0 family");
    }
    double poly = 0.0;
    double up = 1.0;
    for (int i = 0; i < 5; ++i) {
        poly += lc.c[static_cast<std::size_t>(i)] * up;
        up *= u;
    }
    const double q = lc.lambda * lc.lambda + u * u;
    return poly / (lc.delta * std::pow(q, 7));
}

}  // namespace rr
