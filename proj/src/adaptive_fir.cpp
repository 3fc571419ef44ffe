#include "adaptid/adaptive_fir.hpp"

namespace adaptid {

double mu_stability_bound(double lambda_max)
{
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
        throw InvalidArgument("lambda_max must be positive");
    return 1.0 / lambda_max;
}

void require_training_record(const Signal& x, const Signal& d, Eigen::Index min_length)
{
    if (x.size() != d.size())
        throw InvalidArgument("input and desired signals must have equal length");
    if (x.size() < min_length)
        throw InvalidArgument("training record is shorter than the filter order");
    require_finite(x, "input");
    require_finite(d, "desired");
}

ExperimentReport run_fir_lms(const Signal& x, const Signal& d, Eigen::Index order, const LmsRunConfig& cfg,
                             const std::optional<Eigen::VectorXd>& initial_weights)
{
    require_training_record(x, d, order);
    FirFilter<double> filter(initial_weights ? *initial_weights : Eigen::VectorXd::Zero(order));
    if (filter.order() != order)
        throw InvalidArgument("initial weights do not match the filter order");

    RunMonitor monitor(cfg);
    const std::int64_t steps = std::min<std::int64_t>(cfg.max_iterations, x.size());
    for (std::int64_t n = 0; n < steps; ++n) {
        StepResult<double> s{};
        try {
            s = filter.adapt(x(n), d(n), cfg.mu);
        } catch (const DivergenceError&) {
            throw DivergenceError("FIR weights became non-finite", n);
        }
        if (monitor.record(s.eps))
            break;
    }
    return std::move(monitor).finish(filter.weights(), 0);
}

} // namespace adaptid
