#include "knotforge/linear_program.hpp"

#include <cmath>
#include <limits>

#include "knotforge/error.hpp"

namespace knotforge {

LpResult maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c) {
    constexpr double eps = 1e-12;
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    if (b.size() != m) fail(ErrorKind::invalid_input, "maximize: row count mismatch");
    for (double v : b)
        if (v < 0) fail(ErrorKind::invalid_input, "maximize: right-hand side must be nonnegative");

    // Tableau columns: n structural, m slack, 1 rhs. Row m is the objective.
    const std::size_t cols = n + m + 1;
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (A[i].size() != n) fail(ErrorKind::invalid_input, "maximize: column count mismatch");
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1.0;
        T[i][cols - 1] = b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j < n; ++j) T[m][j] = -c[j];

    LpResult res;
    const int max_iter = static_cast<int>(50 * (m + n) + 100);
    int iter = 0;
    for (;; ++iter) {
        if (iter >= max_iter) {
            res.status = LpResult::Status::iteration_limit;
            break;
        }
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (T[m][j] < -eps) {
                enter = j;
                break;
            }
        if (enter == cols) break;

        std::size_t leave = m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= eps) continue;
            const double ratio = T[i][cols - 1] / T[i][enter];
            if (ratio < best - eps || (std::abs(ratio - best) <= eps && leave < m && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) {
            res.status = LpResult::Status::unbounded;
            return res;
        }

        const double piv = T[leave][enter];
        for (double& v : T[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = T[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }

    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = T[i][cols - 1];
    res.objective = T[m][cols - 1];
    return res;
}

MarginSolution max_margin(const std::vector<std::vector<double>>& strict_rows,
                          const std::vector<std::vector<double>>& bounded_rows, double box, double cap) {
    if (strict_rows.empty()) fail(ErrorKind::invalid_input, "max_margin: no constraints");
    const std::size_t d = strict_rows.front().size();
    // Variables: x+ (d), x- (d), s = tau + cap >= 0.
    const std::size_t nv = 2 * d + 1;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    auto add = [&](std::vector<double> row, double rhs) {
        A.push_back(std::move(row));
        b.push_back(rhs);
    };
    for (const auto& a : strict_rows) {
        std::vector<double> row(nv, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            row[i] = -a[i];
            row[d + i] = a[i];
        }
        row[2 * d] = 1.0;
        add(std::move(row), cap);
    }
    for (const auto& w : bounded_rows) {
        std::vector<double> up(nv, 0.0), down(nv, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            up[i] = w[i];
            up[d + i] = -w[i];
            down[i] = -w[i];
            down[d + i] = w[i];
        }
        add(std::move(up), 1.0);
        add(std::move(down), 1.0);
    }
    for (std::size_t i = 0; i < 2 * d; ++i) {
        std::vector<double> row(nv, 0.0);
        row[i] = 1.0;
        add(std::move(row), box);
    }
    {
        std::vector<double> row(nv, 0.0);
        row[2 * d] = 1.0;
        add(std::move(row), 2 * cap);
    }
    std::vector<double> obj(nv, 0.0);
    obj[2 * d] = 1.0;
    const auto lp = maximize(A, b, obj);

    MarginSolution out;
    out.x.assign(d, 0.0);
    if (lp.status == LpResult::Status::unbounded) fail(ErrorKind::domain, "max_margin: unbounded LP");
    for (std::size_t i = 0; i < d; ++i) out.x[i] = lp.x[i] - lp.x[d + i];
    double tau = std::numeric_limits<double>::infinity();
    for (const auto& a : strict_rows) {
        double v = 0.0;
        for (std::size_t i = 0; i < d; ++i) v += a[i] * out.x[i];
        tau = std::min(tau, v);
    }
    out.margin = tau;
    return out;
}

}  // namespace knotforge
