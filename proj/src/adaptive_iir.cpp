#include "adaptid/adaptive_iir.hpp"

#include "adaptid/adaptive_fir.hpp"

namespace adaptid {

ExperimentReport run_iir_lms(const Signal& x, const Signal& d, Eigen::Index feedforward_order,
                             Eigen::Index feedback_order, const LmsRunConfig& cfg,
                             const std::optional<IirCoefficients>& initial)
{
    if (feedforward_order < 0 || feedback_order < 0 || feedforward_order + feedback_order < 1)
        throw InvalidArgument("IIR orders must satisfy M, L >= 0 and M + L >= 1");
    require_training_record(x, d, 1);

    IirFilter<double> filter(feedforward_order, feedback_order);
    if (initial) {
        if (initial->b.size() != feedforward_order + 1 || initial->a.size() != feedback_order)
            throw InvalidArgument("initial IIR coefficients do not match the orders");
        filter = IirFilter<double>(initial->b, stabilize_poles<double>(initial->a));
    }

    RunMonitor monitor(cfg);
    const std::int64_t steps = std::min<std::int64_t>(cfg.max_iterations, x.size());
    for (std::int64_t n = 0; n < steps; ++n) {
        StepResult<double> s{};
        try {
            s = filter.adapt(x(n), d(n), cfg.mu);
        } catch (const DivergenceError&) {
            throw DivergenceError("IIR adaptation diverged", n);
        }
        if (monitor.record(s.eps))
            break;
    }
    return std::move(monitor).finish(filter.coefficients(), feedback_order);
}

} // namespace adaptid
