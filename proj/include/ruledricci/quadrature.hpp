#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "ruledricci/errors.hpp"
#include "ruledricci/geom.hpp"

namespace rr {

/// Adaptive Simpson quadrature with absolute tolerance and a bisection
/// depth cap. Throws NumericError on a non-finite integrand.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, int max_depth = 40);

namespace detail {

/// Degree-5 interpolation basis on the six Chebyshev-Lobatto nodes of
/// [-1, 1]: returns M with monomial coefficients c = M * samples.
const std::array<std::array<double, 6>, 6>& lobatto_inverse_vandermonde();
const std::array<double, 6>& lobatto_nodes();

}  // namespace detail

/// Cumulative integral F(t) = int_{t0}^{t} f(s) ds of a smooth vector field
/// over a fixed interval.
///
/// Node set comes from adaptive Simpson bisection (tolerance split per
/// level) with a width cap; inside each leaf the integrand is interpolated
/// by the degree-5 polynomial through six Chebyshev-Lobatto samples and the
/// interpolant's antiderivative supplies values between nodes. Immutable
/// after construction and safe to share across threads.
template <int N>
class CumulativeIntegral {
public:
    using VecN = Eigen::Matrix<double, N, 1>;
    using Field = std::function<VecN(double)>;

    CumulativeIntegral(Field f, Interval domain, double base_point, double tol)
        : domain_(domain), base_(base_point) {
        if (!(domain.hi > domain.lo)) throw ValidationError("empty integration domain");
        if (!domain.contains(base_point, 1e-12 * domain.length())) {
            throw ValidationError("base point outside integration domain");
        }
        const double max_width = domain.length() / 64.0;
        subdivide(f, domain.lo, domain.hi, tol, 0, max_width);
        build_leaves(f);
    }

    /// F(t) with F(base_point) = 0 exactly.
    VecN eval(double t) const {
        const double slack = 1e-9 * (1.0 + domain_.length());
        if (!domain_.contains(t, slack)) {
            throw NumericError("cumulative integral evaluated outside its domain");
        }
        return prefix_at(t) - offset_;
    }

    double base_point() const { return base_; }
    const Interval& domain() const { return domain_; }
    std::size_t leaf_count() const { return leaves_.size(); }

private:
    struct Leaf {
        double lo, hi;
        std::array<VecN, 6> coeff;  // monomial coefficients on [-1, 1]
        VecN integral;              // integral of the interpolant over the leaf
        VecN prefix;                // cumulative from domain.lo to leaf.lo
    };

    void subdivide(const Field& f, double lo, double hi, double tol, int depth,
                   double max_width) {
        const double mid = 0.5 * (lo + hi);
        const VecN flo = f(lo), fmid = f(mid), fhi = f(hi);
        subdivide_impl(f, lo, mid, hi, flo, fmid, fhi, tol, depth, max_width);
    }

    void subdivide_impl(const Field& f, double lo, double mid, double hi, const VecN& flo,
                        const VecN& fmid, const VecN& fhi, double tol, int depth,
                        double max_width) {
        if (!flo.allFinite() || !fmid.allFinite() || !fhi.allFinite()) {
            throw NumericError("non-finite integrand in cumulative integral");
        }
        const double h = hi - lo;
        const VecN s1 = (h / 6.0) * (flo + 4.0 * fmid + fhi);
        const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
        const VecN flm = f(lmid), frm = f(rmid);
        const VecN s2 = (h / 12.0) * (flo + 4.0 * flm + 2.0 * fmid + 4.0 * frm + fhi);
        const double err = (s2 - s1).template lpNorm<Eigen::Infinity>() / 15.0;
        if ((err <= tol && h <= max_width) || depth >= 40) {
            boundaries_.push_back(lo);
            return;
        }
        subdivide_impl(f, lo, lmid, mid, flo, flm, fmid, 0.5 * tol, depth + 1, max_width);
        subdivide_impl(f, mid, rmid, hi, fmid, frm, fhi, 0.5 * tol, depth + 1, max_width);
    }

    void build_leaves(const Field& f) {
        boundaries_.push_back(domain_.hi);
        const auto& minv = detail::lobatto_inverse_vandermonde();
        const auto& nodes = detail::lobatto_nodes();
        leaves_.reserve(boundaries_.size() - 1);
        VecN running = VecN::Zero();
        for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i) {
            Leaf leaf;
            leaf.lo = boundaries_[i];
            leaf.hi = boundaries_[i + 1];
            const double mid = 0.5 * (leaf.lo + leaf.hi);
            const double half = 0.5 * (leaf.hi - leaf.lo);
            std::array<VecN, 6> samples;
            for (int k = 0; k < 6; ++k) samples[k] = f(mid + half * nodes[k]);
            for (int r = 0; r < 6; ++r) {
                leaf.coeff[r] = VecN::Zero();
                for (int k = 0; k < 6; ++k) leaf.coeff[r] += minv[r][k] * samples[k];
            }
            leaf.integral = VecN::Zero();
            for (int r = 0; r < 6; r += 2) {
                leaf.integral += (2.0 / (r + 1)) * leaf.coeff[r];
            }
            leaf.integral *= half;
            leaf.prefix = running;
            running += leaf.integral;
            leaves_.push_back(leaf);
        }
        offset_ = prefix_at(base_);
    }

    VecN prefix_at(double t) const {
        // locate the leaf containing t
        std::size_t lo = 0, hi = leaves_.size();
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (t < leaves_[mid].lo) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        const Leaf& leaf = leaves_[lo];
        const double half = 0.5 * (leaf.hi - leaf.lo);
        const double zeta = std::clamp((t - 0.5 * (leaf.lo + leaf.hi)) / half, -1.0, 1.0);
        VecN partial = VecN::Zero();
        double zp = zeta;   // zeta^(r+1)
        double sp = -1.0;   // (-1)^(r+1)
        for (int r = 0; r < 6; ++r) {
            partial += ((zp - sp) / (r + 1)) * leaf.coeff[r];
            zp *= zeta;
            sp = -sp;
        }
        return leaf.prefix + half * partial;
    }

    Interval domain_;
    double base_;
    std::vector<double> boundaries_;
    std::vector<Leaf> leaves_;
    VecN offset_ = VecN::Zero();
};

}  // namespace rr
