#pragma once

#include <Eigen/Core>

#include "adaptid/errors.hpp"
#include "adaptid/rng.hpp"

namespace adaptid {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Real sample sequence; the sample index is the position.
using Signal = Eigen::VectorXd;

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& v)
{
    return v.derived().array().isFinite().all();
}

/// Throws InvalidSampleError if any sample is NaN or infinite.
void require_finite(const Signal& x, const char* what = "signal");

/// Non-empty, finite FIR coefficient list h(0..P-1).
class FilterTaps {
public:
    explicit FilterTaps(Eigen::VectorXd taps);

    const Eigen::VectorXd& coefficients() const noexcept { return taps_; }
    Eigen::Index size() const noexcept { return taps_.size(); }
    double operator[](Eigen::Index k) const { return taps_(k); }

private:
    Eigen::VectorXd taps_;
};

/// Maps a uniform draw R to the four-level alphabet:
/// [0, .25) -> -3, [.25, .5) -> -1, [.5, .75) -> +1, [.75, 1] -> +3.
double four_level_from_uniform(double r) noexcept;

/// Four-level training sequence, one uniform draw per sample.
Signal gen_four_level(Eigen::Index n_samples, RngStream& rng);

/// Causal convolution y(n) = sum_k h(k) x(n-k), zero before n = 0, same length as x.
template <typename Derived>
VectorX<typename Derived::Scalar> causal_convolve(const Eigen::MatrixBase<Derived>& x,
                                                  const Eigen::Ref<const VectorX<typename Derived::Scalar>>& h)
{
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = x.size();
    const Eigen::Index p = h.size();
    VectorX<Scalar> y = VectorX<Scalar>::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index taps = std::min(p, i + 1);
        Scalar acc(0);
        for (Eigen::Index k = 0; k < taps; ++k)
            acc += h(k) * x(i - k);
        y(i) = acc;
    }
    return y;
}

/// Colors x by passing it through the FIR low-pass `lpf`.
Signal color(const Signal& x, const FilterTaps& lpf);

/// The fixed 8-tap low-pass used to color the training input.
FilterTaps standard_lpf_8tap();

} // namespace adaptid
