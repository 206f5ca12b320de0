#include "knotforge/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "knotforge/error.hpp"

namespace knotforge {

std::string_view to_string(Axis a) {
    switch (a) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

const RationalFunction& Parameterization::coord(Axis a) const {
    switch (a) {
        case Axis::x: return x;
        case Axis::y: return y;
        case Axis::z:
            if (!z) fail(ErrorKind::invalid_input, "curve has no z coordinate");
            return *z;
    }
    return x;
}

RationalFunction& Parameterization::coord(Axis a) {
    return const_cast<RationalFunction&>(std::as_const(*this).coord(a));
}

std::vector<std::vector<double>> divided_difference(const RationalFunction& f) {
    const auto a = f.num().coeffs();
    const auto b = f.den().coeffs();
    const std::size_t n = std::max(a.size(), b.size());
    auto coef = [](std::span<const double> v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
    if (n < 2) return {};
    std::vector<std::vector<double>> c(n - 1, std::vector<double>(n - 1, 0.0));
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double w = coef(a, i) * coef(b, j) - coef(a, j) * coef(b, i);
            if (w == 0.0) continue;
            for (std::size_t k = 0; k + j < i; ++k) c[j + k][i - 1 - k] += w;
        }
    }
    while (!c.empty() && std::all_of(c.back().begin(), c.back().end(), [](double v) { return v == 0.0; }))
        c.pop_back();
    return c;
}

namespace {

// Polynomial in s whose coefficients are polynomials in t.
class Bivariate {
public:
    explicit Bivariate(std::vector<std::vector<double>> c) : c_(std::move(c)) {
        double m = 0.0;
        for (const auto& row : c_)
            for (double v : row) m = std::max(m, std::abs(v));
        if (m > 0)
            for (auto& row : c_)
                for (double& v : row) v /= m;
    }

    int degree_s() const { return static_cast<int>(c_.size()) - 1; }

    Polynomial in_s(double t) const {
        std::vector<double> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = row_at(i, t);
        return Polynomial(std::move(out));
    }

    // Coefficients of s^0..s^m at t, without trimming.
    std::vector<double> coeffs_at(double t) const {
        std::vector<double> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = row_at(i, t);
        return out;
    }

    struct Value {
        double v, ds, dt, mag;
    };

    Value eval(double s, double t) const {
        Value r{0, 0, 0, 0};
        double sp = 1.0;
        double dsp = 0.0;  // d/ds of s^i
        for (std::size_t i = 0; i < c_.size(); ++i) {
            double tv = 0, tdv = 0, tm = 0;
            for (auto it = c_[i].rbegin(); it != c_[i].rend(); ++it) {
                tdv = tdv * t + tv;
                tv = tv * t + *it;
                tm = tm * std::abs(t) + std::abs(*it);
            }
            r.v += sp * tv;
            r.dt += sp * tdv;
            r.ds += dsp * tv;
            r.mag += std::abs(sp) * tm;
            dsp = dsp * s + sp;
            sp *= s;
        }
        return r;
    }

private:
    double row_at(std::size_t i, double t) const {
        double acc = 0.0;
        for (auto it = c_[i].rbegin(); it != c_[i].rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    std::vector<std::vector<double>> c_;
};

struct ResultantValue {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();
};

// Sign and log-magnitude of the row-normalized Sylvester resultant of
// P(., t) and Q(., t) in s.
ResultantValue resultant(const Bivariate& P, const Bivariate& Q, double t) {
    const auto p = P.coeffs_at(t);
    const auto q = Q.coeffs_at(t);
    const int m = static_cast<int>(p.size()) - 1;
    const int n = static_cast<int>(q.size()) - 1;
    const int size = m + n;
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(size, size);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S(r, r + k) = p[static_cast<std::size_t>(m - k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S(n + r, r + k) = q[static_cast<std::size_t>(n - k)];
    for (int r = 0; r < size; ++r) {
        const double norm = S.row(r).norm();
        if (norm == 0.0) return {};
        S.row(r) /= norm;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(S);
    ResultantValue out;
    out.sign = static_cast<int>(lu.permutationP().determinant());
    out.log_abs = 0.0;
    const auto& U = lu.matrixLU();
    for (int i = 0; i < size; ++i) {
        const double d = U(i, i);
        if (d == 0.0) return {};
        if (d < 0) out.sign = -out.sign;
        out.log_abs += std::log(std::abs(d));
    }
    return out;
}

int resultant_sign(const Bivariate& P, const Bivariate& Q, double t) { return resultant(P, Q, t).sign; }

struct Tangent {
    double dx, dy;
};

Tangent tangent(const RationalFunction& f, const RationalFunction& g, double t) {
    return {f.derivative_at(t), g.derivative_at(t)};
}

bool newton_polish(const Bivariate& P, const Bivariate& Q, double& s, double& t) {
    for (int it = 0; it < 60; ++it) {
        const auto p = P.eval(s, t);
        const auto q = Q.eval(s, t);
        const double det = p.ds * q.dt - p.dt * q.ds;
        if (det == 0.0 || !std::isfinite(det)) break;
        const double ds = (p.v * q.dt - p.dt * q.v) / det;
        const double dt = (p.ds * q.v - p.v * q.ds) / det;
        s -= ds;
        t -= dt;
        if (!std::isfinite(s) || !std::isfinite(t)) return false;
        if (std::abs(ds) + std::abs(dt) <= 1e-15 * (1.0 + std::abs(s) + std::abs(t))) break;
    }
    const auto p = P.eval(s, t);
    const auto q = Q.eval(s, t);
    return std::abs(p.v) <= 1e-9 * p.mag && std::abs(q.v) <= 1e-9 * q.mag;
}

}  // namespace

double pair_check(const RationalFunction& f, const RationalFunction& g, const DoublePoint& dp) {
    return std::max(std::abs(f(dp.s) - f(dp.t)), std::abs(g(dp.s) - g(dp.t)));
}

std::vector<DoublePoint> double_points(const RationalFunction& f, const RationalFunction& g,
                                       const SolverOptions& opts) {
    auto cf = divided_difference(f);
    auto cg = divided_difference(g);
    if (cf.empty() || cg.empty())
        fail(ErrorKind::invalid_input, "double_points: constant coordinate is not a planar projection");
    const Bivariate P(std::move(cf));
    const Bivariate Q(std::move(cg));

    // Resultant roots, scanned along theta in (-pi/2, pi/2), t = tan(theta).
    const int samples = std::max(opts.samples, 16);
    const double pi = std::numbers::pi;
    auto theta_at = [&](int k) { return -pi / 2 + pi * k / samples; };
    std::vector<double> t_roots;
    std::vector<double> logs(static_cast<std::size_t>(samples + 1), std::numeric_limits<double>::infinity());
    int prev_sign = 0;
    double prev_theta = 0.0;
    for (int k = 1; k < samples; ++k) {
        const double th = theta_at(k);
        const auto rv = resultant(P, Q, std::tan(th));
        const int sg = rv.sign;
        logs[static_cast<std::size_t>(k)] = rv.log_abs;
        if (sg == 0) {
            t_roots.push_back(std::tan(th));
            prev_sign = 0;
            continue;
        }
        if (prev_sign != 0 && sg != prev_sign) {
            double lo = prev_theta, hi = th;
            for (int it = 0; it < 64; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const int sm = resultant_sign(P, Q, std::tan(mid));
                if (sm == 0) {
                    lo = hi = mid;
                    break;
                }
                (sm == prev_sign ? lo : hi) = mid;
            }
            t_roots.push_back(std::tan(0.5 * (lo + hi)));
        }
        prev_sign = sg;
        prev_theta = th;
    }
    // Roots of even multiplicity (tangential crossings, triple points) do not
    // change sign; local minima of |R| are back-substituted as well and only
    // survive if Newton's method finds a genuine pair there.
    for (int k = 2; k + 1 < samples; ++k) {
        const double v = logs[static_cast<std::size_t>(k)];
        if (!(v < logs[static_cast<std::size_t>(k - 1)] && v <= logs[static_cast<std::size_t>(k + 1)])) continue;
        double lo = theta_at(k - 1), hi = theta_at(k + 1);
        for (int it = 0; it < 60; ++it) {
            const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (resultant(P, Q, std::tan(m1)).log_abs < resultant(P, Q, std::tan(m2)).log_abs)
                hi = m2;
            else
                lo = m1;
        }
        t_roots.push_back(std::tan(0.5 * (lo + hi)));
    }

    // Back-substitute each root for s and polish the pair.
    std::vector<DoublePoint> found;
    for (double t0 : t_roots) {
        const Polynomial ps = P.in_s(t0);
        if (ps.degree() < 1) continue;
        std::vector<double> s_roots;
        try {
            s_roots = real_roots(ps, 1e-12);
        } catch (const Error&) {
            continue;
        }
        for (double s0 : s_roots) {
            const auto q = Q.eval(s0, t0);
            if (std::abs(q.v) > 1e-4 * q.mag) continue;
            double s = s0, t = t0;
            if (!newton_polish(P, Q, s, t)) continue;
            if (std::abs(s - t) < 10 * opts.tol) continue;
            if (s > t) std::swap(s, t);
            DoublePoint dp;
            dp.s = s;
            dp.t = t;
            const double scale = std::max({1.0, std::abs(f(s)), std::abs(g(s))});
            if (pair_check(f, g, dp) > 1e-7 * scale) continue;
            dp.position = {0.5 * (f(s) + f(t)), 0.5 * (g(s) + g(t))};
            found.push_back(dp);
        }
    }

    std::sort(found.begin(), found.end(), [](const DoublePoint& a, const DoublePoint& b) {
        return a.s != b.s ? a.s < b.s : a.t < b.t;
    });
    std::vector<DoublePoint> out;
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-7 * (1.0 + std::abs(a)); };
    for (const auto& dp : found) {
        bool dup = false;
        for (const auto& o : out)
            if (close(o.s, dp.s) && close(o.t, dp.t)) dup = true;
        if (!dup) out.push_back(dp);
    }

    for (std::size_t k = 0; k < out.size(); ++k) {
        auto& dp = out[k];
        dp.index = static_cast<int>(k);
        const Tangent a = tangent(f, g, dp.s);
        const Tangent b = tangent(f, g, dp.t);
        const double cross = a.dx * b.dy - a.dy * b.dx;
        const double na = std::hypot(a.dx, a.dy);
        const double nb = std::hypot(b.dx, b.dy);
        if (na == 0.0 || nb == 0.0 || std::abs(cross) < opts.transversality * na * nb) {
            std::ostringstream os;
            os << "degenerate double point at (s, t) = (" << dp.s << ", " << dp.t << ")";
            fail(ErrorKind::degenerate, os.str());
        }
        dp.orientation = cross > 0 ? 1 : -1;
    }

    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            const double d = std::hypot(out[i].position.x - out[j].position.x,
                                        out[i].position.y - out[j].position.y);
            const double scale = std::max({1.0, std::abs(out[i].position.x), std::abs(out[i].position.y)});
            const bool shares = close(out[i].s, out[j].s) || close(out[i].s, out[j].t) ||
                                close(out[i].t, out[j].s) || close(out[i].t, out[j].t);
            if (shares || d <= opts.tol * scale) {
                std::ostringstream os;
                os << "triple point near (" << out[i].position.x << ", " << out[i].position.y << ")";
                fail(ErrorKind::degenerate, os.str());
            }
        }
    }
    return out;
}

bool is_regular(const RationalFunction& f, const RationalFunction& g, double tol) {
    const Polynomial nf = f.derivative_numerator().trimmed(1e-13);
    const Polynomial ng = g.derivative_numerator().trimmed(1e-13);
    if (nf.is_zero() && ng.is_zero()) return false;
    if (nf.is_zero()) return real_roots(ng, tol).empty();
    if (ng.is_zero()) return real_roots(nf, tol).empty();
    const auto rf = real_roots(nf, tol);
    const auto rg = real_roots(ng, tol);
    for (double a : rf) {
        for (double b : rg)
            if (std::abs(a - b) <= 1e-6 * (1.0 + std::abs(a))) return false;
        if (std::abs(ng(a)) <= 1e-10 * ng.magnitude(a)) return false;
    }
    return true;
}

namespace {

double limit_at_infinity(const RationalFunction& h) {
    const auto d = h.degree();
    if (h.num().is_zero() || d.p < d.q) return 0.0;
    if (d.p > d.q) fail(ErrorKind::domain, "coordinate is unbounded as t -> infinity");
    return h.num().leading() / h.den().leading();
}

}  // namespace

ClosurePoint closure_point(const Parameterization& p) {
    ClosurePoint c;
    c.position.push_back(limit_at_infinity(p.x));
    c.position.push_back(limit_at_infinity(p.y));
    if (p.z) c.position.push_back(limit_at_infinity(*p.z));
    return c;
}

EmbeddingReport embedding_report(const Parameterization& p, const std::vector<DoublePoint>& dps,
                                 double tol) {
    EmbeddingReport rep;
    auto issue = [&](std::string s) {
        rep.ok = false;
        rep.issues.push_back(std::move(s));
    };

    bool bounded = true;
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
        if (!p.has(a)) continue;
        const auto& h = p.coord(a);
        const std::string name(to_string(a));
        if (!is_positive(h.den())) {
            std::ostringstream os;
            os << name << ": denominator is not positive on the real line";
            const auto roots = real_roots(h.den());
            if (!roots.empty()) {
                os << " (real roots";
                for (double r : roots) os << ' ' << r;
                os << ')';
            }
            issue(os.str());
        }
        if (h.degree().p > h.degree().q && !h.num().is_zero()) {
            issue(name + ": numerator degree exceeds denominator degree (unbounded)");
            bounded = false;
        }
    }
    if (!p.z) issue("no height coordinate");

    if (bounded) {
        const auto c = closure_point(p);
        const double cx = c.position[0];
        const double cy = c.position[1];
        for (const auto& dp : dps) {
            if (std::hypot(dp.position.x - cx, dp.position.y - cy) <= tol) {
                std::ostringstream os;
                os << "closure point coincides with crossing " << dp.index + 1;
                issue(os.str());
            }
        }
        // A finite parameter landing on the closure point would be a crossing
        // with the point at infinity, which double_points does not report.
        const Polynomial ax = (p.x.num() - cx * p.x.den()).trimmed(1e-13);
        const Polynomial ay = (p.y.num() - cy * p.y.den()).trimmed(1e-13);
        if (ax.is_zero() && ay.is_zero()) {
            issue("projection is a single point");
        } else if (!ax.is_zero() && !ay.is_zero()) {
            for (double r : real_roots(ax, tol)) {
                if (std::abs(ay(r)) <= 1e-9 * ay.magnitude(r)) {
                    std::ostringstream os;
                    os << "projection passes through the closure point at t = " << r;
                    issue(os.str());
                }
            }
        }
    }

    if (p.z) {
        for (const auto& dp : dps) {
            const double dz = std::abs((*p.z)(dp.s) - (*p.z)(dp.t));
            if (!(dz > tol)) {
                std::ostringstream os;
                os << "crossing " << dp.index + 1 << " is not separated in height (|dz| = " << dz << ")";
                issue(os.str());
            }
        }
    }
    return rep;
}

bool is_compact_embedding(const Parameterization& p, const std::vector<DoublePoint>& dps, double tol) {
    return embedding_report(p, dps, tol).ok;
}

std::vector<double> crossing_parameters(const std::vector<DoublePoint>& dps) {
    std::vector<double> out;
    out.reserve(dps.size() * 2);
    for (const auto& dp : dps) {
        out.push_back(dp.s);
        out.push_back(dp.t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<int, int> parameter_indices(const std::vector<DoublePoint>& dps, const DoublePoint& dp) {
    const auto params = crossing_parameters(dps);
    auto idx = [&](double v) {
        return static_cast<int>(std::lower_bound(params.begin(), params.end(), v) - params.begin()) + 1;
    };
    return {idx(dp.s), idx(dp.t)};
}

}  // namespace knotforge
