#include "adaptid/report.hpp"

#include <algorithm>
#include <cmath>

#include "adaptid/errors.hpp"

namespace adaptid {

double mse_db(double mse)
{
    if (std::isnan(mse) || mse < 0.0)
        throw InvalidArgument("MSE must be non-negative");
    if (mse == 0.0)
        return kMseFloorDb;
    return std::max(kMseFloorDb, 10.0 * std::log10(mse));
}

double windowed_mse(std::span<const double> errors, std::int64_t t_e)
{
    if (t_e < 1)
        throw InvalidArgument("MSE window must be at least 1");
    if (static_cast<std::int64_t>(errors.size()) < t_e)
        throw InvalidArgument("error window holds fewer than t_e entries");
    double acc = 0.0;
    for (double e : errors.last(static_cast<std::size_t>(t_e)))
        acc += e * e;
    return acc / static_cast<double>(t_e);
}

ConvergenceDetector::ConvergenceDetector(double threshold_db, std::int64_t hold)
    : threshold_db_(threshold_db), hold_(hold)
{
    if (hold < 1)
        throw InvalidArgument("convergence hold must be at least 1");
}

bool ConvergenceDetector::push(double value)
{
    const std::int64_t i = index_++;
    if (converged_at_)
        return false;
    if (value <= threshold_db_) {
        if (!run_start_)
            run_start_ = i;
        if (i - *run_start_ >= hold_) {
            converged_at_ = run_start_;
            return true;
        }
    } else {
        run_start_.reset();
    }
    return false;
}

std::optional<std::int64_t> convergence_iterations(std::span<const double> curve, double threshold_db,
                                                   std::int64_t hold)
{
    ConvergenceDetector det(threshold_db, hold);
    for (double v : curve)
        if (det.push(v))
            break;
    return det.converged_at();
}

std::optional<std::int64_t> convergence_iterations(const LearningCurve& curve, double threshold_db,
                                                   std::int64_t hold)
{
    std::vector<double> trace;
    trace.reserve(curve.size());
    for (const auto& p : curve)
        trace.push_back(p.mse_db_window);
    return convergence_iterations(trace, threshold_db, hold);
}

std::int64_t ExperimentReport::trigger_count() const noexcept
{
    return std::count_if(trigger_events.begin(), trigger_events.end(), [](const auto& e) { return e.triggered; });
}

std::vector<double> ExperimentReport::mse_db_trace() const
{
    std::vector<double> out;
    out.reserve(curve.size());
    for (const auto& p : curve)
        out.push_back(p.mse_db_window);
    return out;
}

} // namespace adaptid
