#include "stefan_front/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

namespace stefan_front::numerics {

namespace {

struct SimpsonCtx {
    const ScalarFn& f;
    int max_depth;
    bool failed = false;
};

double simpson_rec(SimpsonCtx& ctx, double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ctx.f(lm);
    const double frm = ctx.f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // The floor keeps round-off from driving the recursion to the depth limit.
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
    if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= floor || (b - a) < 1e-15) {
        return left + right + delta / 15.0;
    }
    if (depth >= ctx.max_depth) {
        ctx.failed = true;
        return left + right + delta / 15.0;
    }
    return simpson_rec(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_rec(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

constexpr std::array<double, 10> kGlNodes = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472, -0.1488743389816312,
    0.1488743389816312,  0.4333953941292472,  0.6794095682990244,  0.8650633666889845,  0.9739065285171717};
constexpr std::array<double, 10> kGlWeights = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963, 0.2955242247147529,
    0.2955242247147529, 0.2692667193099963, 0.2190863625159820, 0.1494513491505806, 0.0666713443086881};

}  // namespace

double adaptive_simpson(const ScalarFn& f, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    // Start from a few panels so that narrow features are not missed.
    constexpr int kPanels = 8;
    SimpsonCtx ctx{f, max_depth};
    double total = 0.0;
    const double w = (b - a) / kPanels;
    double fa = f(a);
    for (int i = 0; i < kPanels; ++i) {
        const double lo = a + i * w;
        const double hi = (i == kPanels - 1) ? b : a + (i + 1) * w;
        const double fm = f(0.5 * (lo + hi));
        const double fb = f(hi);
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_rec(ctx, lo, hi, fa, fm, fb, whole, tol / kPanels, 0);
        fa = fb;
    }
    if (ctx.failed) {
        throw QuadError("adaptive Simpson hit its refinement limit on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
    }
    return total;
}

double gauss_legendre(const ScalarFn& f, double a, double b, int panels) {
    if (a == b) return 0.0;
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        const double half = 0.5 * w;
        const double mid = lo + half;
        double s = 0.0;
        for (std::size_t i = 0; i < kGlNodes.size(); ++i) s += kGlWeights[i] * f(mid + half * kGlNodes[i]);
        total += half * s;
    }
    return total;
}

double gauss_legendre_split(const ScalarFn& f, double a, double b, std::span<const double> breaks, int panels) {
    const double sign = b >= a ? 1.0 : -1.0;
    double lo = std::min(a, b);
    const double hi = std::max(a, b);
    double total = 0.0;
    for (double br : breaks) {
        if (br > lo && br < hi) {
            total += gauss_legendre(f, lo, br, panels);
            lo = br;
        }
    }
    total += gauss_legendre(f, lo, hi, panels);
    return sign * total;
}

double gauss_legendre_graded(const ScalarFn& f, double a, double b, bool grade_left, bool grade_right,
                             std::span<const double> breaks, double min_frac) {
    if (a == b) return 0.0;
    if (b < a) return -gauss_legendre_graded(f, b, a, grade_right, grade_left, breaks, min_frac);
    const double len = b - a;
    std::vector<double> pts{a, b};
    for (double br : breaks) {
        if (br > a && br < b) pts.push_back(br);
    }
    const double mid = 0.5 * (a + b);
    for (double d = 0.25 * len; d > min_frac * len; d *= 0.5) {
        if (grade_left) pts.push_back(a + d);
        if (grade_right) pts.push_back(b - d);
    }
    if (grade_left || grade_right) pts.push_back(mid);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i] > pts[i - 1]) total += gauss_legendre(f, pts[i - 1], pts[i]);
    }
    return total;
}

double bisect_root(const ScalarFn& f, double lo, double hi, double tol, int max_iter) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw DomainError("bisect_root: no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Bracket bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi, double width, int max_iter) {
    for (int it = 0; it < max_iter && (hi - lo) > width; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

Minimum golden_section_min(const ScalarFn& f, double a, double b, double tol, int max_iter) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag, std::span<const double> sup,
                       std::span<double> rhs, std::span<double> scratch) {
    const std::size_t n = diag.size();
    assert(sub.size() == n && sup.size() == n && rhs.size() == n && scratch.size() >= n);
    if (n == 0) return;
    scratch[0] = sup[0] / diag[0];
    rhs[0] /= diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] - sub[i] * scratch[i - 1];
        scratch[i] = (i + 1 < n) ? sup[i] / m : 0.0;
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    LineFit fit;
    if (n < 2) return fit;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

double interp_linear(std::span<const double> xs, std::span<const double> ys, double x) {
    if (xs.empty()) return 0.0;
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double x0 = xs[i - 1], x1 = xs[i];
    const double w = (x - x0) / (x1 - x0);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

}  // namespace stefan_front::numerics
