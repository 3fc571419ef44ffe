#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "adaptid/adaptation.hpp"
#include "adaptid/errors.hpp"
#include "adaptid/signals.hpp"

namespace adaptid {

inline constexpr double kPoleRadiusLimit = 0.99;

/// Poles of 1 - sum_k a_k z^-k, i.e. the roots of z^L - a_1 z^(L-1) - ... - a_L.
/// Closed form for L <= 2, companion-matrix eigenvalues above that.
template <typename Scalar>
std::vector<std::complex<Scalar>> feedback_poles(const VectorX<Scalar>& a)
{
    using Complex = std::complex<Scalar>;
    const Eigen::Index order = a.size();
    if (order == 0)
        return {};
    if (order == 1)
        return {Complex(a(0), 0)};
    if (order == 2) {
        const Complex disc = std::sqrt(Complex(a(0) * a(0) + Scalar(4) * a(1), 0));
        return {(Complex(a(0), 0) + disc) / Scalar(2), (Complex(a(0), 0) - disc) / Scalar(2)};
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> companion =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(order, order);
    companion.row(0) = a.transpose();
    companion.diagonal(-1).setOnes();
    Eigen::EigenSolver<decltype(companion)> solver(companion, false);
    std::vector<Complex> poles;
    for (Eigen::Index i = 0; i < order; ++i)
        poles.push_back(solver.eigenvalues()(i));
    return poles;
}

template <typename Scalar>
Scalar max_pole_radius(const VectorX<Scalar>& a)
{
    Scalar r(0);
    for (const auto& p : feedback_poles(a))
        r = std::max(r, std::abs(p));
    return r;
}

/// Pole-magnitude limiting. Feedback vectors whose poles all lie within
/// `radius` come back unchanged; otherwise every pole beyond `radius` is pulled
/// in to that radius at the same angle and the coefficients are re-expanded.
template <typename Scalar>
VectorX<Scalar> stabilize_poles(const VectorX<Scalar>& a, Scalar radius = Scalar(kPoleRadiusLimit))
{
    using Complex = std::complex<Scalar>;
    if (!all_finite(a))
        throw InvalidArgument("feedback coefficients must be finite");
    auto poles = feedback_poles(a);
    bool clamped = false;
    for (auto& p : poles) {
        const Scalar mag = std::abs(p);
        if (mag > radius) {
            p *= radius / mag;
            clamped = true;
        }
    }
    if (!clamped)
        return a;

    if (a.size() == 1)
        return VectorX<Scalar>::Constant(1, poles[0].real());

    // prod (z - p_i) = z^L + c_1 z^(L-1) + ... + c_L, and a_k = -c_k
    std::vector<Complex> c(poles.size() + 1, Complex(0));
    c[0] = Complex(1);
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t k = i + 1; k >= 1; --k)
            c[k] -= poles[i] * c[k - 1];
    VectorX<Scalar> out(a.size());
    for (Eigen::Index k = 0; k < a.size(); ++k)
        out(k) = -c[static_cast<std::size_t>(k) + 1].real();

    // re-expansion can land a few ulps outside; a_k s^k scales every pole by s
    for (int pass = 0; pass < 8; ++pass) {
        const Scalar r = max_pole_radius(out);
        if (r <= radius)
            break;
        const Scalar s = radius / r * (Scalar(1) - Scalar(4) * std::numeric_limits<Scalar>::epsilon());
        Scalar sk(1);
        for (Eigen::Index k = 0; k < out.size(); ++k)
            out(k) *= (sk *= s);
    }
    return out;
}

/// Recursive filter y(n) = sum_{k=0}^{M} b_k x(n-k) + sum_{k=1}^{L} a_k y(n-k),
/// adapted by LMS on the recursive output-error gradient.
///
/// Gradient states: alpha_k(n) = dy(n)/db_k and beta_k(n) = dy(n)/da_k, run as
///   alpha_k(n) = x(n-k) + sum_l a_l alpha_k(n-l)
///   beta_k(n)  = y(n-k) + sum_l a_l beta_k(n-l)
/// using the current a's, and starting from zero.
template <typename Scalar = double>
class IirFilter {
public:
    using Vector = VectorX<Scalar>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    IirFilter(Eigen::Index feedforward_order, Eigen::Index feedback_order)
        : IirFilter(Vector::Zero(feedforward_order + 1), Vector::Zero(feedback_order))
    {
    }

    IirFilter(Vector b, Vector a) : b_(std::move(b)), a_(std::move(a))
    {
        if (b_.size() < 1)
            throw InvalidArgument("IIR filter needs at least one feedforward coefficient");
        if (!all_finite(b_) || !all_finite(a_))
            throw InvalidArgument("IIR coefficients must be finite");
        const Eigen::Index m1 = b_.size();
        const Eigen::Index l = a_.size();
        inputs_ = Vector::Zero(m1);
        outputs_ = Vector::Zero(l);
        alpha_hist_ = Matrix::Zero(m1, l);
        beta_hist_ = Matrix::Zero(l, l);
        gradient_ = Vector::Zero(m1 + l);
    }

    Eigen::Index feedforward_order() const noexcept { return b_.size() - 1; }
    Eigen::Index feedback_order() const noexcept { return a_.size(); }
    const Vector& b() const noexcept { return b_; }
    const Vector& a() const noexcept { return a_; }
    const Vector& input_line() const noexcept { return inputs_; }
    const Vector& output_line() const noexcept { return outputs_; }

    /// [alpha_0(n) .. alpha_M(n), beta_1(n) .. beta_L(n)] from the latest adapt().
    const Vector& gradient_signals() const noexcept { return gradient_; }

    /// Chromosome layout [b_0..b_M, a_1..a_L].
    Vector coefficients() const
    {
        Vector c(b_.size() + a_.size());
        c << b_, a_;
        return c;
    }

    void set_coefficients(const Vector& c)
    {
        if (c.size() != b_.size() + a_.size())
            throw InvalidArgument("coefficient count mismatch");
        b_ = c.head(b_.size());
        a_ = c.tail(a_.size());
    }

    /// Output for x_new with the current coefficients; shifts the input and
    /// output lines but leaves the gradient states alone.
    Scalar filter(Scalar x_new)
    {
        if (!std::isfinite(x_new))
            throw InvalidSampleError("non-finite input sample");
        shift(inputs_, x_new);
        const Scalar y = current_output();
        if (!std::isfinite(y))
            throw DivergenceError("IIR output became non-finite");
        shift(outputs_, y);
        return y;
    }

    /// One recursive-LMS iteration followed by pole limiting.
    StepResult<Scalar> adapt(Scalar x_new, Scalar d, Scalar mu)
    {
        if (!std::isfinite(x_new) || !std::isfinite(d) || !std::isfinite(mu))
            throw InvalidSampleError("non-finite sample or step size");
        shift(inputs_, x_new);
        const Scalar y = current_output();
        if (!std::isfinite(y))
            throw DivergenceError("IIR output became non-finite");
        const Scalar eps = d - y;

        const Eigen::Index m1 = b_.size();
        const Eigen::Index l = a_.size();
        Vector alpha = inputs_;
        Vector beta = outputs_;
        if (l > 0) {
            alpha += alpha_hist_ * a_;
            beta += beta_hist_ * a_;
        }

        const Scalar g = Scalar(2) * mu * eps;
        b_ += g * alpha;
        if (l > 0)
            a_ += g * beta;
        if (!all_finite(b_) || !all_finite(a_))
            throw DivergenceError("IIR coefficients became non-finite");
        if (l > 0)
            a_ = stabilize_poles(a_);

        gradient_.head(m1) = alpha;
        gradient_.tail(l) = beta;
        shift(outputs_, y);
        if (l > 0) {
            shift_columns(alpha_hist_, alpha);
            shift_columns(beta_hist_, beta);
        }
        return {y, eps};
    }

private:
    Scalar current_output() const { return b_.dot(inputs_) + a_.dot(outputs_); }

    static void shift(Vector& line, Scalar newest)
    {
        const Eigen::Index n = line.size();
        if (n == 0)
            return;
        for (Eigen::Index i = n - 1; i > 0; --i)
            line(i) = line(i - 1);
        line(0) = newest;
    }

    // column j holds the state at n-1-j
    static void shift_columns(Matrix& hist, const Vector& newest)
    {
        for (Eigen::Index j = hist.cols() - 1; j > 0; --j)
            hist.col(j) = hist.col(j - 1);
        hist.col(0) = newest;
    }

    Vector b_;
    Vector a_;
    Vector inputs_;  ///< x(n) .. x(n-M)
    Vector outputs_; ///< y(n-1) .. y(n-L)
    Matrix alpha_hist_;
    Matrix beta_hist_;
    Vector gradient_;
};

template <typename Scalar>
Scalar iir_output(IirFilter<Scalar>& state, Scalar x_new)
{
    return state.filter(x_new);
}

template <typename Scalar>
StepResult<Scalar> iir_gradient_step(IirFilter<Scalar>& state, Scalar x_new, Scalar d, Scalar mu)
{
    return state.adapt(x_new, d, mu);
}

struct IirCoefficients {
    Eigen::VectorXd b;
    Eigen::VectorXd a;
};

/// Recursive LMS over the record; gradient states start at zero.
ExperimentReport run_iir_lms(const Signal& x, const Signal& d, Eigen::Index feedforward_order,
                             Eigen::Index feedback_order, const LmsRunConfig& cfg,
                             const std::optional<IirCoefficients>& initial = std::nullopt);

} // namespace adaptid
