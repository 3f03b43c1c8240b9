#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pricewave {

/// Thomas solver for a fixed tridiagonal matrix.  The factorization is
/// done once; solve() is then a forward/backward sweep.  No pivoting:
/// callers supply diagonally dominant systems.
class TridiagonalSolver {
public:
    TridiagonalSolver(std::vector<double> lower, std::vector<double> diag,
                      std::vector<double> upper)
        : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)) {
        const std::size_t n = diag_.size();
        if (lower_.size() != n - 1 || upper_.size() != n - 1)
            throw std::invalid_argument("TridiagonalSolver: band sizes do not match");
        cprime_.resize(n - 1);
        denom_.resize(n);
        denom_[0] = diag_[0];
        if (denom_[0] == 0.0) throw std::invalid_argument("TridiagonalSolver: zero pivot");
        cprime_[0] = upper_[0] / denom_[0];
        for (std::size_t i = 1; i < n; ++i) {
            denom_[i] = diag_[i] - lower_[i - 1] * cprime_[i - 1];
            if (denom_[i] == 0.0) throw std::invalid_argument("TridiagonalSolver: zero pivot");
            if (i < n - 1) cprime_[i] = upper_[i] / denom_[i];
        }
    }

    std::size_t size() const { return diag_.size(); }

    void solve(const std::vector<double>& rhs, std::vector<double>& out) const {
        const std::size_t n = diag_.size();
        out.resize(n);
        out[0] = rhs[0] / denom_[0];
        for (std::size_t i = 1; i < n; ++i)
            out[i] = (rhs[i] - lower_[i - 1] * out[i - 1]) / denom_[i];
        for (std::size_t i = n - 1; i-- > 0;) out[i] -= cprime_[i] * out[i + 1];
    }

private:
    std::vector<double> lower_, diag_, upper_;
    std::vector<double> cprime_, denom_;
};

}  // namespace pricewave
