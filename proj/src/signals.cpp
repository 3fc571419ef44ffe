#include "adaptid/signals.hpp"

#include <string>

namespace adaptid {

void require_finite(const Signal& x, const char* what)
{
    if (!all_finite(x))
        throw InvalidSampleError(std::string(what) + " contains a non-finite sample");
}

FilterTaps::FilterTaps(Eigen::VectorXd taps) : taps_(std::move(taps))
{
    if (taps_.size() == 0)
        throw InvalidArgument("filter taps must not be empty");
    if (!all_finite(taps_))
        throw InvalidArgument("filter taps must be finite");
}

double four_level_from_uniform(double r) noexcept
{
    if (r < 0.25)
        return -3.0;
    if (r < 0.5)
        return -1.0;
    if (r < 0.75)
        return 1.0;
    return 3.0;
}

Signal gen_four_level(Eigen::Index n_samples, RngStream& rng)
{
    if (n_samples < 0)
        throw InvalidArgument("n_samples must be non-negative");
    Signal x(n_samples);
    for (Eigen::Index i = 0; i < n_samples; ++i)
        x(i) = four_level_from_uniform(rng.uniform());
    return x;
}

Signal color(const Signal& x, const FilterTaps& lpf)
{
    require_finite(x, "input");
    return causal_convolve(x, lpf.coefficients());
}

FilterTaps standard_lpf_8tap()
{
    Eigen::VectorXd h(8);
    h << 0.0012654, -0.0052341, -0.0019735, -0.0023009, 0.022366, 0.12833, 0.0013, 0.0012;
    return FilterTaps(std::move(h));
}

} // namespace adaptid
