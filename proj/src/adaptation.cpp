#include "adaptid/adaptation.hpp"

#include <algorithm>
#include <cmath>

#include "adaptid/errors.hpp"

namespace adaptid {

void LmsRunConfig::validate() const
{
    if (!std::isfinite(mu) || mu < 0.0)
        throw InvalidArgument("mu must be finite and non-negative");
    if (max_iterations < 0)
        throw InvalidArgument("max_iterations must be non-negative");
    if (mse_window < 1)
        throw InvalidArgument("mse_window must be at least 1");
    if (hold < 1)
        throw InvalidArgument("hold must be at least 1");
}

RunMonitor::RunMonitor(const LmsRunConfig& cfg)
    : cfg_(cfg), detector_(cfg.convergence_threshold_db, cfg.hold)
{
    cfg_.validate();
    curve_.reserve(static_cast<std::size_t>(std::min<std::int64_t>(cfg.max_iterations, 1 << 20)));
}

bool RunMonitor::record(double eps)
{
    const auto n = static_cast<std::int64_t>(curve_.size());
    if (!std::isfinite(eps))
        throw DivergenceError("non-finite estimation error", n);

    // Recomputed from scratch: a running sum cannot follow a curve that falls
    // through 300 dB.
    const double e2 = eps * eps;
    const std::int64_t w = std::min<std::int64_t>(cfg_.mse_window, n + 1);
    double acc = e2;
    for (std::int64_t k = n - w + 1; k < n; ++k)
        acc += curve_[static_cast<std::size_t>(k)].eps_squared;
    const double mse = acc / static_cast<double>(w);
    if (!std::isfinite(mse))
        throw DivergenceError("windowed MSE overflowed", n);

    curve_.push_back({e2, mse_db(mse)});

    if (w == cfg_.mse_window) {
        if (reference_mse_ == 0.0)
            reference_mse_ = mse;
        else if (mse > cfg_.divergence_factor * reference_mse_)
            throw DivergenceError("windowed MSE exceeded the divergence threshold", n);
    }

    return detector_.push(curve_.back().mse_db_window) && cfg_.stop_on_convergence;
}

double RunMonitor::current_mse_db() const
{
    return curve_.empty() ? kMseFloorDb : curve_.back().mse_db_window;
}

ExperimentReport RunMonitor::finish(Eigen::VectorXd final_weights, std::int64_t feedback_order) &&
{
    ExperimentReport r;
    r.converged_at = detector_.converged_at();
    if (!curve_.empty())
        r.final_mse_db = curve_.back().mse_db_window;
    r.curve = std::move(curve_);
    r.final_weights = std::move(final_weights);
    r.feedback_order = feedback_order;
    return r;
}

} // namespace adaptid
