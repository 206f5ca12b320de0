#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace knotforge {

/// Integer polynomial in t, ascending powers, trailing zeros trimmed.
/// Arithmetic throws on int64 overflow.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<std::int64_t> coeffs);
    IntPolynomial(std::initializer_list<std::int64_t> coeffs);

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<std::int64_t>& coeffs() const noexcept { return c_; }
    std::int64_t operator[](int i) const noexcept;

    std::int64_t eval(std::int64_t t) const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    IntPolynomial operator-() const;

    /// Exact quotient a / b. Throws if b does not divide a over the integers.
    static IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b);

    /// Divide out the largest power of t and make the lowest coefficient positive.
    IntPolynomial normalized() const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    void trim();
    std::vector<std::int64_t> c_;
};

std::string to_string(const IntPolynomial& p, char var = 't');

/// Determinant of a square matrix over Z[t] by fraction-free (Bareiss) elimination.
IntPolynomial bareiss_determinant(std::vector<std::vector<IntPolynomial>> m);

}  // namespace knotforge
