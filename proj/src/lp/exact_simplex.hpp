#pragma once

#include "ctfpack/rational.hpp"
#include "lp/model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ctfpack::detail {

struct ExactSolution {
    Rational objective;     ///< sum of triangle weights (not yet scaled by 3)
    std::vector<Rational> x;  ///< per triangle column
    std::vector<Rational> y;  ///< per edge row
    std::int64_t pivots = 0;
};

/// Revised simplex over exact rationals with an explicit dense basis inverse.
/// Entering and leaving variables follow Bland's lowest-index rule, so the
/// pivot sequence from a given starting basis is deterministic.
class ExactSimplex {
public:
    explicit ExactSimplex(const PackingModel& model);

    /// Starts from `head`; false when the basis is singular or primal infeasible.
    bool load(std::span<const int> head);
    void load_slacks();

    ExactSolution run();

private:
    Rational& inv(int i, int k) { return binv_[static_cast<std::size_t>(i) * m_ + k]; }
    void recompute_duals();
    int price() const;
    void compute_alpha(int q);
    int ratio_test() const;
    void pivot(int q, int r);

    const PackingModel& model_;
    int m_;
    int n_;
    std::vector<Rational> binv_;
    std::vector<Rational> xb_;
    std::vector<Rational> y_;
    std::vector<Rational> alpha_;
    std::vector<int> head_;
    std::vector<char> basic_;
};

} // namespace ctfpack::detail
