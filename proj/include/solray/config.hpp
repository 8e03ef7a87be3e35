#pragma once

#include <cstdint>
#include <cstddef>

namespace solray {

/// Knobs shared by the solver pipeline. All exposed through the CLI and the
/// config file; defaults are desk-scale.
struct SolverConfig {
    std::uint64_t seed = 0;
    double residual_bound = 1e-8;
    double cluster_tol = 1e-6;
    int max_retries = 8;
    int float_precision_bits = 53;  // computation runs at hardware double
    std::size_t chart_variable = 0;
    std::size_t matrix_size_cap = 3000;
    // perturbation / refinement loop
    double refine_tol = 1e-6;
    int max_refine_steps = 40;
};

}  // namespace solray
