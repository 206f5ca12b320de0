#pragma once

#include <vector>

namespace knotforge {

struct LpResult {
    enum class Status { optimal, unbounded, iteration_limit };
    Status status = Status::optimal;
    std::vector<double> x;
    double objective = 0.0;
};

/// maximize c.x subject to A x <= b, x >= 0, with b >= 0 so the origin is a
/// feasible start. Dense tableau simplex with Bland's rule.
LpResult maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c);

struct MarginSolution {
    std::vector<double> x;
    double margin = 0.0;
};

/// Chebyshev-style center of the cone {x : a_k . x > 0}: maximize tau subject
/// to a_k . x >= tau for every strict row, |w . x| <= 1 for every bounded
/// row, and |x_i| <= box. tau is capped at `cap`.
MarginSolution max_margin(const std::vector<std::vector<double>>& strict_rows,
                          const std::vector<std::vector<double>>& bounded_rows, double box, double cap = 2.0);

}  // namespace knotforge
