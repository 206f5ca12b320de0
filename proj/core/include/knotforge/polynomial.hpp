#pragma once

#include <array>
#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace knotforge {

inline constexpr double kDefaultRootTol = 1e-9;

/// Real univariate polynomial, coefficients in ascending power order.
///
/// Trailing zeros are trimmed on construction, so `degree()` is the index of
/// the last nonzero coefficient; the zero polynomial has no coefficients and
/// degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);
    Polynomial(std::initializer_list<double> coeffs);

    static Polynomial constant(double c);
    static Polynomial monomial(int power, double c = 1.0);
    /// Monic product of (t - r) over `roots`.
    static Polynomial from_roots(std::span<const double> roots);
    static Polynomial from_roots(std::initializer_list<double> roots) {
        return from_roots(std::span<const double>(roots.begin(), roots.size()));
    }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
    double operator[](int power) const noexcept;

    double operator()(double t) const noexcept;
    long double eval_ld(long double t) const noexcept;
    /// Sum of |c_i| |t|^i, the natural scale for rounding errors of p(t).
    double magnitude(double t) const noexcept;
    double max_abs_coeff() const noexcept;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double c, const Polynomial& p);

    /// Drops leading coefficients whose magnitude is below rel * max|c_i|.
    Polynomial trimmed(double rel) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<double> coeffs_;
};

double eval(const Polynomial& p, double t);
Polynomial derivative(const Polynomial& p);

/// All distinct real roots, ascending, each within absolute accuracy `tol`.
/// Roots closer than `tol` are merged. Throws on the zero polynomial.
std::vector<double> real_roots(const Polynomial& p, double tol = kDefaultRootTol);

/// Real roots restricted to the closed interval [lo, hi].
std::vector<double> real_roots_in(const Polynomial& p, double lo, double hi,
                                  double tol = kDefaultRootTol);

/// Number of distinct real roots in (a, b], by Sturm's theorem.
int sturm_count(const Polynomial& p, double a, double b);
/// Number of distinct real roots on the whole line, by Sturm's theorem.
int sturm_count(const Polynomial& p);

struct Extremum {
    double t = 0.0;
    double value = 0.0;
};

/// Global minimum of an even-degree polynomial with positive leading
/// coefficient, taken over the real critical points.
Extremum global_min(const Polynomial& p);

/// Local minima (critical points where p' changes sign from - to +), ascending in t.
std::vector<Extremum> local_minima(const Polynomial& p);

/// True iff p(t) > 0 for every real t.
bool is_positive(const Polynomial& p);

std::string to_string(const Polynomial& p, char var = 't');

struct DegreePair {
    int p = 0;  // numerator degree
    int q = 0;  // denominator degree

    friend bool operator==(const DegreePair&, const DegreePair&) = default;
};

/// Quotient of two polynomials. No gcd reduction is performed: the degree
/// pair always reflects the stored numerator and denominator.
class RationalFunction {
public:
    RationalFunction();
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }
    DegreePair degree() const noexcept;

    double operator()(double t) const noexcept;
    /// h'(t) evaluated directly.
    double derivative_at(double t) const noexcept;
    /// Numerator of h' = (n'd - nd') / d^2.
    Polynomial derivative_numerator() const;

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

private:
    Polynomial num_;
    Polynomial den_;
};

std::string to_string(const RationalFunction& h, char var = 't');

/// Number of maximal intervals of the real line on which h is strictly
/// monotone. Requires a denominator without real roots. A constant function
/// has no such interval.
int count_monotonic_regions(const RationalFunction& h, double tol = kDefaultRootTol);

/// Degree pairs of three coordinate functions sorted by denominator degree,
/// ties broken by numerator degree.
struct DegreeSequence {
    std::array<DegreePair, 3> entries{};

    friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;
};

DegreeSequence degree_sequence(const RationalFunction& f, const RationalFunction& g,
                               const RationalFunction& h);
DegreeSequence make_degree_sequence(DegreePair a, DegreePair b, DegreePair c);

/// Lexicographic order on (q1, q2, q3, p1, p2, p3).
std::strong_ordering compare(const DegreeSequence& a, const DegreeSequence& b);

std::string to_string(const DegreeSequence& d);

}  // namespace knotforge
