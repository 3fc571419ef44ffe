#pragma once

#include <Eigen/Core>

#include <cmath>
#include <optional>

#include "adaptid/adaptation.hpp"
#include "adaptid/errors.hpp"
#include "adaptid/signals.hpp"

namespace adaptid {

/// Transversal filter y(n) = C^T X(n) with an LMS-adapted weight vector.
/// The delay line holds x(n), x(n-1), ..., x(n-N+1), newest first.
template <typename Scalar = double>
class FirFilter {
public:
    using Vector = VectorX<Scalar>;

    explicit FirFilter(Eigen::Index order) : FirFilter(Vector::Zero(order)) {}

    explicit FirFilter(Vector weights) : weights_(std::move(weights)), delay_(Vector::Zero(weights_.size()))
    {
        if (weights_.size() < 1)
            throw InvalidArgument("FIR order must be at least 1");
        if (!all_finite(weights_))
            throw InvalidArgument("FIR weights must be finite");
    }

    Eigen::Index order() const noexcept { return weights_.size(); }
    const Vector& weights() const noexcept { return weights_; }
    const Vector& delay_line() const noexcept { return delay_; }

    /// Chromosome view used by the evolutionary search.
    const Vector& coefficients() const noexcept { return weights_; }
    void set_coefficients(const Vector& c)
    {
        if (c.size() != weights_.size())
            throw InvalidArgument("coefficient count mismatch");
        weights_ = c;
    }

    /// Shifts x_new into the delay line and returns the output with the current weights.
    Scalar filter(Scalar x_new)
    {
        if (!std::isfinite(x_new))
            throw InvalidSampleError("non-finite input sample");
        shift_in(x_new);
        return weights_.dot(delay_);
    }

    /// One LMS iteration: y = C^T X, eps = d - y, C += 2 mu eps X.
    StepResult<Scalar> adapt(Scalar x_new, Scalar d, Scalar mu)
    {
        if (!std::isfinite(d) || !std::isfinite(mu))
            throw InvalidSampleError("non-finite desired sample or step size");
        const Scalar y = filter(x_new);
        const Scalar eps = d - y;
        const Scalar g = Scalar(2) * mu * eps;
        weights_ += g * delay_;
        if (!all_finite(weights_))
            throw DivergenceError("FIR weights became non-finite");
        return {y, eps};
    }

private:
    void shift_in(Scalar x_new)
    {
        const Eigen::Index n = delay_.size();
        for (Eigen::Index i = n - 1; i > 0; --i)
            delay_(i) = delay_(i - 1);
        delay_(0) = x_new;
    }

    Vector weights_;
    Vector delay_;
};

template <typename Scalar>
StepResult<Scalar> lms_step(FirFilter<Scalar>& state, Scalar x_new, Scalar d, Scalar mu)
{
    return state.adapt(x_new, d, mu);
}

/// Largest step size for mean convergence, 1 / lambda_max.
double mu_stability_bound(double lambda_max);

/// Runs LMS over the record until convergence or max_iterations.
ExperimentReport run_fir_lms(const Signal& x, const Signal& d, Eigen::Index order, const LmsRunConfig& cfg,
                             const std::optional<Eigen::VectorXd>& initial_weights = std::nullopt);

/// Common record checks for the runners.
void require_training_record(const Signal& x, const Signal& d, Eigen::Index min_length);

} // namespace adaptid
