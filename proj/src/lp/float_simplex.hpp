#pragma once

#include "lp/model.hpp"

#include <span>
#include <vector>

namespace ctfpack::detail {

struct FloatSolution {
    bool optimal = false;
    double objective = 0.0;
    std::vector<double> x;   ///< per triangle column
    std::vector<double> y;   ///< per edge row
    std::vector<int> head;   ///< basic variable of each basis position
    int iterations = 0;
};

/// Revised simplex in double precision with an explicit basis inverse.
/// Only a hint for the exact layer: nothing it returns is trusted unverified.
FloatSolution solve_float(const PackingModel& model, std::span<const int> warm_head = {});

} // namespace ctfpack::detail
