#include "knotforge/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "knotforge/error.hpp"

namespace knotforge {

namespace {

using LongPoly = std::vector<long double>;

long double horner(const LongPoly& c, long double t) {
    long double acc = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

int sign_of(long double v) { return (v > 0) - (v < 0); }

// Relative size below which a value of p is treated as zero at t.
constexpr double kZeroRel = 1e-12;

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial(std::vector<double>{c}); }

Polynomial Polynomial::monomial(int power, double c) {
    std::vector<double> v(static_cast<std::size_t>(power) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const double> roots) {
    Polynomial acc = constant(1.0);
    for (double r : roots) acc = acc * Polynomial{-r, 1.0};
    return acc;
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator[](int power) const noexcept {
    if (power < 0 || power > degree()) return 0.0;
    return coeffs_[static_cast<std::size_t>(power)];
}

double Polynomial::operator()(double t) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

long double Polynomial::eval_ld(long double t) const noexcept {
    long double acc = 0.0L;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Polynomial::magnitude(double t) const noexcept {
    double acc = 0.0;
    const double at = std::abs(t);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + std::abs(*it);
    return acc;
}

double Polynomial::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::operator-() const { return -1.0 * *this; }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial operator*(double c, const Polynomial& p) {
    std::vector<double> out(p.coeffs_);
    for (double& v : out) v *= c;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::trimmed(double rel) const {
    const double cut = rel * max_abs_coeff();
    std::vector<double> out(coeffs_);
    while (!out.empty() && std::abs(out.back()) <= cut) out.pop_back();
    return Polynomial(std::move(out));
}

double eval(const Polynomial& p, double t) { return p(t); }

Polynomial derivative(const Polynomial& p) {
    if (p.degree() < 1) return {};
    std::vector<double> out(static_cast<std::size_t>(p.degree()));
    for (int i = 1; i <= p.degree(); ++i) out[static_cast<std::size_t>(i - 1)] = i * p[i];
    return Polynomial(std::move(out));
}

namespace {

// Root of p in [a, b] given a strict sign change, by bisection to full precision.
double bisect(const Polynomial& p, long double a, long double b) {
    int sa = sign_of(p.eval_ld(a));
    for (int it = 0; it < 200; ++it) {
        const long double m = 0.5L * (a + b);
        if (m <= a || m >= b) break;
        const int sm = sign_of(p.eval_ld(m));
        if (sm == 0) return static_cast<double>(m);
        if (sm == sa) {
            a = m;
        } else {
            b = m;
        }
    }
    return static_cast<double>(0.5L * (a + b));
}

bool near_zero(const Polynomial& p, double t) {
    return std::abs(static_cast<double>(p.eval_ld(t))) <= kZeroRel * p.magnitude(t);
}

// Roots in [lo, hi]: p is monotone between consecutive critical points, so
// each such interval holds at most one root.
std::vector<double> isolate(const Polynomial& p, double lo, double hi) {
    std::vector<double> out;
    if (p.degree() <= 0) return out;
    if (p.degree() == 1) {
        const double r = -p[0] / p[1];
        if (r >= lo && r <= hi) out.push_back(r);
        return out;
    }
    std::vector<double> cuts{lo};
    for (double c : isolate(derivative(p), lo, hi))
        if (c > lo && c < hi) cuts.push_back(c);
    cuts.push_back(hi);

    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k];
        const double b = cuts[k + 1];
        if (near_zero(p, a)) {
            out.push_back(a);
            continue;
        }
        if (k + 2 == cuts.size() && near_zero(p, b)) {
            out.push_back(b);
            continue;
        }
        if (sign_of(p.eval_ld(a)) * sign_of(p.eval_ld(b)) < 0) out.push_back(bisect(p, a, b));
    }
    return out;
}

std::vector<double> merge_close(std::vector<double> roots, double tol) {
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (!out.empty() && r - out.back() < tol) continue;
        out.push_back(r);
    }
    return out;
}

double cauchy_bound(const Polynomial& p) {
    double m = 0.0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(p[i] / p.leading()));
    return 1.0 + m;
}

}  // namespace

std::vector<double> real_roots_in(const Polynomial& p, double lo, double hi, double tol) {
    if (p.is_zero()) fail(ErrorKind::invalid_input, "real_roots: zero polynomial");
    if (!(tol > 0)) fail(ErrorKind::invalid_input, "real_roots: tol must be positive");
    const Polynomial q = p.trimmed(1e-14);
    if (q.degree() <= 0 || lo > hi) return {};
    return merge_close(isolate(q, lo, hi), tol);
}

std::vector<double> real_roots(const Polynomial& p, double tol) {
    if (p.is_zero()) fail(ErrorKind::invalid_input, "real_roots: zero polynomial");
    const Polynomial q = p.trimmed(1e-14);
    if (q.degree() <= 0) return {};
    const double bound = cauchy_bound(q);
    return real_roots_in(q, -bound, bound, tol);
}

namespace {

std::vector<LongPoly> sturm_sequence(const Polynomial& p) {
    auto normalize = [](LongPoly v) {
        long double m = 0.0L;
        for (long double c : v) m = std::max(m, std::abs(c));
        if (m > 0)
            for (long double& c : v) c /= m;
        return v;
    };
    auto strip = [](LongPoly v, long double cut) {
        while (!v.empty() && std::abs(v.back()) <= cut) v.pop_back();
        return v;
    };

    const Polynomial q = p.trimmed(1e-14);
    std::vector<LongPoly> seq;
    seq.push_back(normalize(LongPoly(q.coeffs().begin(), q.coeffs().end())));
    const Polynomial dq = derivative(q);
    if (dq.is_zero()) return seq;
    seq.push_back(normalize(LongPoly(dq.coeffs().begin(), dq.coeffs().end())));

    while (true) {
        LongPoly r = seq[seq.size() - 2];
        const LongPoly& d = seq.back();
        const std::size_t dd = d.size() - 1;
        while (r.size() > dd && !r.empty()) {
            const long double f = r.back() / d.back();
            const std::size_t shift = r.size() - 1 - dd;
            for (std::size_t i = 0; i <= dd; ++i) r[shift + i] -= f * d[i];
            r.pop_back();
        }
        r = strip(std::move(r), 1e-11L);
        if (r.empty()) break;
        for (long double& c : r) c = -c;
        seq.push_back(normalize(std::move(r)));
        if (seq.back().size() == 1) break;
    }
    return seq;
}

int variations(const std::vector<int>& signs) {
    int count = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int variations_at(const std::vector<LongPoly>& seq, long double x) {
    std::vector<int> signs;
    for (const auto& s : seq) signs.push_back(sign_of(horner(s, x)));
    return variations(signs);
}

int variations_at_infinity(const std::vector<LongPoly>& seq, bool positive) {
    std::vector<int> signs;
    for (const auto& s : seq) {
        int sg = sign_of(s.back());
        if (!positive && (s.size() - 1) % 2 == 1) sg = -sg;
        signs.push_back(sg);
    }
    return variations(signs);
}

}  // namespace

int sturm_count(const Polynomial& p, double a, double b) {
    if (p.is_zero()) fail(ErrorKind::invalid_input, "sturm_count: zero polynomial");
    if (p.degree() == 0) return 0;
    const auto seq = sturm_sequence(p);
    return variations_at(seq, a) - variations_at(seq, b);
}

int sturm_count(const Polynomial& p) {
    if (p.is_zero()) fail(ErrorKind::invalid_input, "sturm_count: zero polynomial");
    if (p.degree() == 0) return 0;
    const auto seq = sturm_sequence(p);
    return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

Extremum global_min(const Polynomial& p) {
    if (p.is_zero() || p.degree() == 0) return {0.0, p[0]};
    if (p.degree() % 2 != 0 || p.leading() < 0)
        fail(ErrorKind::domain, "global_min: polynomial is unbounded below");
    Extremum best{0.0, std::numeric_limits<double>::infinity()};
    for (double c : real_roots(derivative(p))) {
        const double v = p(c);
        if (v < best.value) best = {c, v};
    }
    return best;
}

std::vector<Extremum> local_minima(const Polynomial& p) {
    std::vector<Extremum> out;
    const Polynomial dp = derivative(p);
    if (dp.is_zero()) return out;
    const auto crit = real_roots(dp);
    for (std::size_t k = 0; k < crit.size(); ++k) {
        const double left = k == 0 ? crit[k] - 1.0 : 0.5 * (crit[k - 1] + crit[k]);
        const double right = k + 1 == crit.size() ? crit[k] + 1.0 : 0.5 * (crit[k] + crit[k + 1]);
        if (dp(left) < 0 && dp(right) > 0) out.push_back({crit[k], p(crit[k])});
    }
    return out;
}

bool is_positive(const Polynomial& p) {
    if (p.is_zero()) return false;
    return real_roots(p).empty() && p(0.0) > 0;
}

std::string to_string(const Polynomial& p, char var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    os << std::setprecision(10);
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const double c = p[i];
        if (c == 0.0) continue;
        const double mag = std::abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1.0) os << mag;
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
        first = false;
    }
    return os.str();
}

RationalFunction::RationalFunction() : num_(), den_(Polynomial::constant(1.0)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorKind::invalid_input, "rational function with zero denominator");
}

DegreePair RationalFunction::degree() const noexcept {
    return {std::max(num_.degree(), 0), den_.degree()};
}

double RationalFunction::operator()(double t) const noexcept { return num_(t) / den_(t); }

double RationalFunction::derivative_at(double t) const noexcept {
    double n = 0, dn = 0, d = 0, dd = 0;
    auto nc = num_.coeffs();
    for (auto it = nc.rbegin(); it != nc.rend(); ++it) {
        dn = dn * t + n;
        n = n * t + *it;
    }
    auto dc = den_.coeffs();
    for (auto it = dc.rbegin(); it != dc.rend(); ++it) {
        dd = dd * t + d;
        d = d * t + *it;
    }
    return (dn * d - n * dd) / (d * d);
}

Polynomial RationalFunction::derivative_numerator() const {
    return derivative(num_) * den_ - num_ * derivative(den_);
}

std::string to_string(const RationalFunction& h, char var) {
    return "(" + to_string(h.num(), var) + ") / (" + to_string(h.den(), var) + ")";
}

int count_monotonic_regions(const RationalFunction& h, double tol) {
    if (!real_roots(h.den(), tol).empty())
        fail(ErrorKind::domain, "count_monotonic_regions: not compactly defined");
    const Polynomial n = h.derivative_numerator().trimmed(1e-13);
    if (n.is_zero()) return 0;
    const auto roots = real_roots(n, tol);
    int changes = 0;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const double left = k == 0 ? roots[k] - 1.0 : 0.5 * (roots[k - 1] + roots[k]);
        const double right = k + 1 == roots.size() ? roots[k] + 1.0 : 0.5 * (roots[k] + roots[k + 1]);
        if (sign_of(n.eval_ld(left)) * sign_of(n.eval_ld(right)) < 0) ++changes;
    }
    return 1 + changes;
}

DegreeSequence make_degree_sequence(DegreePair a, DegreePair b, DegreePair c) {
    DegreeSequence s{{a, b, c}};
    std::stable_sort(s.entries.begin(), s.entries.end(), [](DegreePair x, DegreePair y) {
        return x.q != y.q ? x.q < y.q : x.p < y.p;
    });
    return s;
}

DegreeSequence degree_sequence(const RationalFunction& f, const RationalFunction& g,
                               const RationalFunction& h) {
    return make_degree_sequence(f.degree(), g.degree(), h.degree());
}

std::strong_ordering compare(const DegreeSequence& a, const DegreeSequence& b) {
    auto key = [](const DegreeSequence& s) {
        return std::array<int, 6>{s.entries[0].q, s.entries[1].q, s.entries[2].q,
                                  s.entries[0].p, s.entries[1].p, s.entries[2].p};
    };
    return key(a) <=> key(b);
}

std::string to_string(const DegreeSequence& d) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < 3; ++i) {
        if (i) os << ", ";
        os << d.entries[i].p << '/' << d.entries[i].q;
    }
    os << ')';
    return os.str();
}

}  // namespace knotforge
