#include "knotforge/int_polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "knotforge/error.hpp"

namespace knotforge {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::domain, "integer polynomial overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::domain, "integer polynomial overflow");
    return r;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<std::int64_t> coeffs) : c_(coeffs) { trim(); }

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::int64_t IntPolynomial::operator[](int i) const noexcept {
    return i < 0 || i > degree() ? 0 : c_[static_cast<std::size_t>(i)];
}

std::int64_t IntPolynomial::eval(std::int64_t t) const {
    std::int64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = checked_add(checked_mul(acc, t), *it);
    return acc;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<std::int64_t> out(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = checked_add(out[i], a.c_[i]);
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] = checked_add(out[i], b.c_[i]);
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<std::int64_t> out(c_);
    for (auto& v : out) v = checked_mul(v, -1);
    return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::int64_t> out(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            out[i + j] = checked_add(out[i + j], checked_mul(a.c_[i], b.c_[j]));
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::exact_div(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) fail(ErrorKind::domain, "division by the zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) fail(ErrorKind::domain, "inexact polynomial division");
    std::vector<std::int64_t> r(a.c_);
    std::vector<std::int64_t> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    const std::int64_t lead = b.c_.back();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        const std::int64_t top = r[static_cast<std::size_t>(k + b.degree())];
        if (top % lead != 0) fail(ErrorKind::domain, "inexact polynomial division");
        const std::int64_t f = top / lead;
        q[static_cast<std::size_t>(k)] = f;
        for (int i = 0; i <= b.degree(); ++i) {
            auto& slot = r[static_cast<std::size_t>(k + i)];
            slot = checked_add(slot, -checked_mul(f, b.c_[static_cast<std::size_t>(i)]));
        }
    }
    if (std::any_of(r.begin(), r.end(), [](std::int64_t v) { return v != 0; }))
        fail(ErrorKind::domain, "inexact polynomial division");
    return IntPolynomial(std::move(q));
}

IntPolynomial IntPolynomial::normalized() const {
    if (is_zero()) return {};
    std::size_t low = 0;
    while (c_[low] == 0) ++low;
    std::vector<std::int64_t> out(c_.begin() + static_cast<std::ptrdiff_t>(low), c_.end());
    if (out.front() < 0)
        for (auto& v : out) v = -v;
    return IntPolynomial(std::move(out));
}

std::string to_string(const IntPolynomial& p, char var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const std::int64_t c = p[i];
        if (c == 0) continue;
        const std::int64_t mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag;
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
        first = false;
    }
    return os.str();
}

IntPolynomial bareiss_determinant(std::vector<std::vector<IntPolynomial>> m) {
    const std::size_t n = m.size();
    if (n == 0) return IntPolynomial{1};
    for (const auto& row : m)
        if (row.size() != n) fail(ErrorKind::invalid_input, "bareiss_determinant: matrix is not square");
    bool negate = false;
    IntPolynomial prev{1};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return {};
            std::swap(m[k], m[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = IntPolynomial::exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace knotforge
