#pragma once

#include <cstdint>

#include "adaptid/report.hpp"

namespace adaptid {

template <typename Scalar>
struct StepResult {
    Scalar y;   ///< filter output, computed before the weight update
    Scalar eps; ///< d - y
};

struct LmsRunConfig {
    double mu = 0.045;
    std::int64_t max_iterations = 10000;
    double convergence_threshold_db = -140.0;
    std::int64_t hold = 8;
    std::int64_t mse_window = 8; ///< t_e
    /// Divergence when the windowed MSE exceeds this multiple of the first full-window MSE.
    double divergence_factor = 1e6;
    bool stop_on_convergence = true;

    void validate() const;
};

/// Bookkeeping shared by every adaptation loop: learning curve, windowed MSE,
/// divergence detection and the convergence stop rule.
class RunMonitor {
public:
    explicit RunMonitor(const LmsRunConfig& cfg);

    /// Records the error of iteration n (n must count up from 0). Throws
    /// DivergenceError on a non-finite error or a blown-up windowed MSE.
    /// Returns true when the run should stop because it has converged.
    bool record(double eps);

    double current_mse_db() const;
    std::int64_t iterations() const noexcept { return static_cast<std::int64_t>(curve_.size()); }
    const LearningCurve& curve() const noexcept { return curve_; }
    std::optional<std::int64_t> converged_at() const noexcept { return detector_.converged_at(); }

    ExperimentReport finish(Eigen::VectorXd final_weights, std::int64_t feedback_order) &&;

private:
    LmsRunConfig cfg_;
    LearningCurve curve_;
    ConvergenceDetector detector_;
    double reference_mse_ = 0.0;
};

} // namespace adaptid
