#pragma once

// Shared numerical kernels: Gaussian utilities, partial expectations,
// fixed quadrature rules, bracketed root finding, damped fixed-point
// iteration, the hazard-logistic win-rate form, and small dense solves.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace renege {

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Normal distribution utilities

inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
}

inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

// Inverse standard normal CDF (Acklam's rational approximation plus one
// Halley refinement; accurate to ~1e-15 over (0,1)).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw std::domain_error("normal_quantile: p outside [0,1]");
    }
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement against the erfc-based CDF.
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

// Normal primitive with mean/sd in market-rate units.
struct GaussianSpec {
    double mean = 0.0;
    double sd = 1.0;

    bool valid() const { return sd > 0.0 && std::isfinite(mean) && std::isfinite(sd); }
    double cdf(double x) const { return normal_cdf((x - mean) / sd); }
    double pdf(double x) const { return normal_pdf((x - mean) / sd) / sd; }
    double quantile(double p) const { return mean + sd * normal_quantile(p); }
};

// E[(X - t) 1{X > t}] for X ~ N(mean, sd): (mu-t)(1-Phi(z)) + sd*phi(z), z=(t-mu)/sd.
// Nonnegative and decreasing in t.
inline double normal_partial_expectation(const GaussianSpec& g, double t) {
    double z = (t - g.mean) / g.sd;
    if (z > 40.0) return 0.0;
    if (z < -40.0) return g.mean - t;
    double v = (g.mean - t) * normal_cdf(-z) + g.sd * normal_pdf(z);
    return v > 0.0 ? v : 0.0;
}

// ---------------------------------------------------------------------------
// Win-rate functional forms

// Hazard-logistic parameterization of the day-specific win rate:
//   gamma/(eta+gamma) = theta1 / (1 + exp((log b - theta2)/theta3)).
// theta1 in (0,1] and theta3 > 0 keep gamma nonnegative and decreasing.
struct HazardLogisticParams {
    double theta1 = 0.5;
    double theta2 = 0.0;   // log-price units
    double theta3 = 0.25;

    bool valid() const { return theta1 > 0.0 && theta1 <= 1.0 && theta3 > 0.0; }
};

struct WinRateEval {
    double gamma = 0.0;
    double gamma_prime = 0.0;
};

inline WinRateEval hazard_win_rate(const HazardLogisticParams& p, double eta, double b) {
    if (!(b > 0.0)) throw std::domain_error("hazard_win_rate: bid must be positive");
    double z = (std::log(b) - p.theta2) / p.theta3;
    // Clamp the exponent so extreme bids degrade to the correct limits.
    double ez = std::exp(std::min(z, 700.0));
    double denom = 1.0 + ez - p.theta1;
    WinRateEval out;
    out.gamma = eta * p.theta1 / denom;
    out.gamma_prime = -eta * p.theta1 * ez / (b * p.theta3 * denom * denom);
    return out;
}

// 1/(1 + exp((b - location)/scale)): survival function of a logistic
// distribution, strictly decreasing in b.
inline double survival_logistic(double location, double scale, double b) {
    if (!(scale > 0.0)) throw std::domain_error("survival_logistic: scale must be positive");
    double z = (b - location) / scale;
    if (z > 700.0) return 0.0;
    return 1.0 / (1.0 + std::exp(z));
}

inline double survival_logistic_deriv(double location, double scale, double b) {
    double s = survival_logistic(location, scale, b);
    return -s * (1.0 - s) / scale;
}

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

// Gauss-Hermite nodes/weights for weight exp(-t^2), by Newton iteration on the
// Hermite recurrence. n >= 1.
inline QuadratureRule gauss_hermite_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite_rule: n >= 1 required");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        // Standard initial guesses for the largest roots, then step inward.
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * r.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * r.nodes[1];
        } else {
            z = 2.0 * z - r.nodes[i - 2];
        }
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = std::pow(kPi, -0.25);
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.nodes[i] = z;                  // largest roots first
        r.nodes[n - 1 - i] = -z;
        r.weights[i] = 2.0 / (pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    if (n % 2 == 1) r.nodes[m - 1] = 0.0;
    std::reverse(r.nodes.begin(), r.nodes.end());  // ascending
    std::reverse(r.weights.begin(), r.weights.end());
    return r;
}

// Rule for E[f(X)], X ~ N(mean, sd): substitution x = mean + sqrt(2) sd t.
inline QuadratureRule gauss_hermite_normal(const GaussianSpec& g, int n = 32) {
    QuadratureRule h = gauss_hermite_rule(n);
    QuadratureRule r;
    r.nodes.resize(h.size());
    r.weights.resize(h.size());
    const double s = std::sqrt(2.0) * g.sd;
    const double wnorm = 1.0 / std::sqrt(kPi);
    for (std::size_t i = 0; i < h.size(); ++i) {
        r.nodes[i] = g.mean + s * h.nodes[i];
        r.weights[i] = h.weights[i] * wnorm;
    }
    return r;
}

// Gauss-Legendre on [a, b] (Newton iteration on Legendre recurrence).
inline QuadratureRule gauss_legendre_rule(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n >= 1 required");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
        r.nodes[i] = xm - xl * z;
        r.nodes[n - 1 - i] = xm + xl * z;
        r.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    return r;
}

// ---------------------------------------------------------------------------
// Root finding

struct RootResult {
    double root = std::numeric_limits<double>::quiet_NaN();
    double f_root = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    bool converged = false;
    std::string message;
};

// Bracketed root on [lo, hi] with f(lo)*f(hi) <= 0; bisection with secant
// acceleration. Exits when the bracket width falls below tol. A missing sign
// change is reported, not thrown.
inline RootResult bracketed_root(const std::function<double(double)>& f, double lo,
                                 double hi, double tol = 1e-12, int max_iter = 200) {
    RootResult res;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) {
        res.root = lo; res.f_root = 0.0; res.converged = true;
        return res;
    }
    if (fhi == 0.0) {
        res.root = hi; res.f_root = 0.0; res.converged = true;
        return res;
    }
    if (flo * fhi > 0.0) {
        res.message = "no sign change on bracket";
        return res;
    }
    double a = lo, b = hi, fa = flo, fb = fhi;
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it + 1;
        double mid;
        // Secant proposal, guarded into the interior of the bracket.
        double sec = b - fb * (b - a) / (fb - fa);
        double lo_guard = a + 0.1 * (b - a), hi_guard = b - 0.1 * (b - a);
        mid = (sec > lo_guard && sec < hi_guard) ? sec : 0.5 * (a + b);
        double fm = f(mid);
        if (fm == 0.0 || (b - a) < tol) {
            res.root = mid; res.f_root = fm; res.converged = true;
            return res;
        }
        if (fa * fm < 0.0) { b = mid; fb = fm; }
        else { a = mid; fa = fm; }
        if ((b - a) < tol) {
            res.root = 0.5 * (a + b);
            res.f_root = f(res.root);
            res.converged = true;
            return res;
        }
    }
    res.root = 0.5 * (a + b);
    res.f_root = f(res.root);
    res.message = "max iterations";
    return res;
}

// Scans [lo, hi] left to right for the first sign change of f and bisects
// inside it. The segment is extended geometrically up to `expansions` times
// if no crossing is found. Picks the first crossing when f has spurious
// far-tail zeros.
inline RootResult first_crossing_root(const std::function<double(double)>& f, double lo,
                                      double hi, double tol = 1e-12, int expansions = 3,
                                      int scan_steps = 128) {
    double a = lo, fa = f(a);
    if (fa == 0.0) {
        RootResult res;
        res.root = a; res.f_root = 0.0; res.converged = true;
        return res;
    }
    double seg_lo = lo, seg_hi = hi;
    for (int round = 0; round <= expansions; ++round) {
        double step = (seg_hi - seg_lo) / scan_steps;
        double x = std::max(a, seg_lo);
        double fx = fa;
        for (int i = 1; i <= scan_steps; ++i) {
            double x2 = seg_lo + i * step;
            if (x2 <= x) continue;
            double f2 = f(x2);
            if (fx * f2 <= 0.0) return bracketed_root(f, x, x2, tol);
            x = x2;
            fx = f2;
        }
        a = seg_hi;
        fa = fx;
        double width = seg_hi - seg_lo;
        seg_lo = seg_hi;
        seg_hi = seg_hi + 2.0 * width;
    }
    RootResult res;
    res.message = "no sign change found in scanned range";
    return res;
}

// Scans [lo, hi] and returns a refined root for every + -> - crossing of f
// (local maxima of the antiderivative). Extends the range geometrically up to
// `expansions` times if nothing is found.
inline std::vector<RootResult> scan_down_crossings(const std::function<double(double)>& f,
                                                   double lo, double hi, double tol = 1e-12,
                                                   int expansions = 3, int scan_steps = 160) {
    std::vector<RootResult> out;
    double seg_lo = lo, seg_hi = hi;
    double x = lo, fx = f(lo);
    for (int round = 0; round <= expansions; ++round) {
        double step = (seg_hi - seg_lo) / scan_steps;
        for (int i = 1; i <= scan_steps; ++i) {
            double x2 = seg_lo + i * step;
            if (x2 <= x) continue;
            double f2 = f(x2);
            if (fx > 0.0 && f2 <= 0.0) {
                RootResult r = bracketed_root(f, x, x2, tol);
                if (r.converged) out.push_back(r);
            }
            x = x2;
            fx = f2;
        }
        if (!out.empty()) return out;
        double width = seg_hi - seg_lo;
        seg_lo = seg_hi;
        seg_hi = seg_hi + 2.0 * width;
    }
    return out;
}

// Expands [lo, hi] geometrically (up to `expansions` times on each side)
// until f changes sign; returns a failed RootResult if no bracket is found.
inline RootResult expanding_root(const std::function<double(double)>& f, double lo,
                                 double hi, double tol = 1e-12, int expansions = 3) {
    double flo = f(lo), fhi = f(hi);
    int tries = 0;
    double width = hi - lo;
    while (flo * fhi > 0.0 && tries < expansions) {
        width *= 2.0;
        if (std::abs(flo) < std::abs(fhi)) lo -= width; else hi += width;
        flo = f(lo);
        fhi = f(hi);
        ++tries;
    }
    if (flo * fhi > 0.0) {
        RootResult res;
        res.message = "no sign change after bracket expansion";
        return res;
    }
    return bracketed_root(f, lo, hi, tol);
}

// ---------------------------------------------------------------------------
// Damped fixed-point iteration

struct FixedPointResult {
    std::vector<double> x;
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

// Iterates x <- x + damping*(map(x) - x) until ||map(x)-x||_inf < tol.
// Residual increasing twice in a row triggers a fallback to damping 0.5.
// Deterministic: identical inputs give identical iterates.
inline FixedPointResult damped_fixed_point(
    const std::function<std::vector<double>(const std::vector<double>&)>& map,
    std::vector<double> x0, double damping = 1.0, double tol = 1e-10,
    int max_iter = 1000) {
    FixedPointResult res;
    res.x = std::move(x0);
    double prev_res = std::numeric_limits<double>::infinity();
    int increases = 0;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> fx = map(res.x);
        double r = 0.0;
        for (std::size_t i = 0; i < fx.size(); ++i) r = std::max(r, std::abs(fx[i] - res.x[i]));
        res.iterations = it + 1;
        res.residual = r;
        if (r < tol) {
            res.x = std::move(fx);
            res.converged = true;
            return res;
        }
        if (r > prev_res) {
            if (++increases >= 2) damping = 0.5;
        } else {
            increases = 0;
        }
        prev_res = r;
        for (std::size_t i = 0; i < fx.size(); ++i)
            res.x[i] += damping * (fx[i] - res.x[i]);
    }
    return res;
}

// Scalar convenience wrapper.
inline FixedPointResult damped_fixed_point_scalar(
    const std::function<double(double)>& map, double x0, double damping = 1.0,
    double tol = 1e-10, int max_iter = 1000) {
    return damped_fixed_point(
        [&map](const std::vector<double>& v) { return std::vector<double>{map(v[0])}; },
        std::vector<double>{x0}, damping, tol, max_iter);
}

// ---------------------------------------------------------------------------
// Monotone cubic interpolation (Fritsch-Carlson), used to invert bid policies
// and interpolate win-rate tabulations with a continuous derivative.

class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need >= 2 points");
        m_.assign(n, 0.0);
        std::vector<double> d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double h = x_[i + 1] - x_[i];
            if (!(h > 0.0)) throw std::invalid_argument("MonotoneCubic: x must be strictly increasing");
            d[i] = (y_[i + 1] - y_[i]) / h;
        }
        m_[0] = d[0];
        m_[n - 1] = d[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i)
            m_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (d[i] == 0.0) { m_[i] = 0.0; m_[i + 1] = 0.0; continue; }
            double a = m_[i] / d[i], b = m_[i + 1] / d[i];
            double s = a * a + b * b;
            if (s > 9.0) {
                double t = 3.0 / std::sqrt(s);
                m_[i] = t * a * d[i];
                m_[i + 1] = t * b * d[i];
            }
        }
    }

    double operator()(double x) const { return eval(x).first; }
    double deriv(double x) const { return eval(x).second; }
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }

private:
    std::pair<double, double> eval(double x) const {
        const std::size_t n = x_.size();
        if (x <= x_.front()) {  // linear extrapolation with edge slope
            return {y_.front() + m_.front() * (x - x_.front()), m_.front()};
        }
        if (x >= x_.back()) {
            return {y_.back() + m_.back() * (x - x_.back()), m_.back()};
        }
        std::size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1;
        if (i >= n - 1) i = n - 2;
        double h = x_[i + 1] - x_[i];
        double t = (x - x_[i]) / h;
        double t2 = t * t, t3 = t2 * t;
        double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        double v = h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
        double dh00 = (6 * t2 - 6 * t) / h, dh10 = (3 * t2 - 4 * t + 1);
        double dh01 = (-6 * t2 + 6 * t) / h, dh11 = (3 * t2 - 2 * t);
        double dv = dh00 * y_[i] + dh10 * m_[i] + dh01 * y_[i + 1] + dh11 * m_[i + 1];
        return {v, dv};
    }

    std::vector<double> x_, y_, m_;
};

// ---------------------------------------------------------------------------
// Small dense linear algebra (row-major), enough for sandwich variances and
// least squares on a handful of parameters.

using Matrix = std::vector<std::vector<double>>;

inline Matrix matrix_zero(std::size_t r, std::size_t c) {
    return Matrix(r, std::vector<double>(c, 0.0));
}

// Solves A x = b by LU with partial pivoting; returns false on (near) singularity.
inline bool lu_solve(Matrix a, std::vector<double> b, std::vector<double>& x,
                     double* condition_hint = nullptr) {
    const std::size_t n = a.size();
    double max_piv = 0.0, min_piv = std::numeric_limits<double>::infinity();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (piv != col) { std::swap(a[piv], a[col]); std::swap(b[piv], b[col]); }
        double p = a[col][col];
        if (std::abs(p) < 1e-300) return false;
        max_piv = std::max(max_piv, std::abs(p));
        min_piv = std::min(min_piv, std::abs(p));
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / p;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    if (condition_hint) *condition_hint = (min_piv > 0.0) ? max_piv / min_piv : std::numeric_limits<double>::infinity();
    x.assign(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri][c] * x[c];
        x[ri] = s / a[ri][ri];
    }
    return true;
}

// A^{-1} column by column; returns false on singularity.
inline bool matrix_inverse(const Matrix& a, Matrix& inv, double* condition_hint = nullptr) {
    const std::size_t n = a.size();
    inv = matrix_zero(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0), x;
        e[j] = 1.0;
        if (!lu_solve(a, e, x, j == 0 ? condition_hint : nullptr)) return false;
        for (std::size_t i = 0; i < n; ++i) inv[i][j] = x[i];
    }
    return true;
}

inline Matrix matrix_mul(const Matrix& a, const Matrix& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Matrix c = matrix_zero(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            double av = a[i][l];
            if (av == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += av * b[l][j];
        }
    return c;
}

inline Matrix matrix_transpose(const Matrix& a) {
    std::size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
    Matrix t = matrix_zero(m, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
    return t;
}

// Central finite difference with relative step.
template <class F>
double central_diff(F&& f, double x, double h_scale = 1e-6) {
    double h = h_scale * (1.0 + std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Projects v onto strictly increasing values: running max plus a tiny ramp.
// Intended for sub-grid-scale violations left by smoothing or near-tied
// optima, not for repairing genuinely decreasing data.
inline std::vector<double> enforce_strictly_increasing(std::vector<double> v) {
    if (v.size() < 2) return v;
    double span = std::abs(v.back() - v.front()) + 1e-12;
    double step = 1e-10 * span / static_cast<double>(v.size());
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1]) v[i] = v[i - 1] + step;
    return v;
}

// Local least-squares quadratic smoother on a uniformly spaced vector
// (Savitzky-Golay). Removes node-scale noise while preserving smooth signal;
// windows shrink near the ends.
inline std::vector<double> savgol_smooth(const std::vector<double>& y, int half_window = 7) {
    const int n = static_cast<int>(y.size());
    if (n < 5 || half_window < 2) return y;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - half_window);
        int hi = std::min(n - 1, i + half_window);
        // Fit a + b t + c t^2 on t = j - i by normal equations.
        double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, r0 = 0, r1 = 0, r2 = 0;
        for (int j = lo; j <= hi; ++j) {
            double t = j - i, t2 = t * t;
            s0 += 1.0; s1 += t; s2 += t2; s3 += t * t2; s4 += t2 * t2;
            r0 += y[j]; r1 += t * y[j]; r2 += t2 * y[j];
        }
        Matrix m{{s0, s1, s2}, {s1, s2, s3}, {s2, s3, s4}};
        std::vector<double> rhs{r0, r1, r2}, coef;
        out[i] = lu_solve(m, rhs, coef) ? coef[0] : y[i];
    }
    return out;
}

}  // namespace renege
