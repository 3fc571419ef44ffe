#pragma once

// Second-order statistics of the training input: autocorrelation, the
// Toeplitz correlation matrix, its eigenvalues, the power spectral density,
// and what they predict about LMS convergence.

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "adaptid/errors.hpp"
#include "adaptid/signals.hpp"

namespace adaptid {

/// Biased autocorrelation estimate r(0..T-1) and the record length it came from.
template <typename Scalar>
struct AutocorrSeq {
    VectorX<Scalar> lags;
    Eigen::Index sample_count = 0;

    Eigen::Index size() const noexcept { return lags.size(); }
};

/// Time-average estimator r(t) = (1/len) sum_n x(n) x(n-t), t = 0..max_lag-1.
/// Dividing by the full length (not len - t) keeps every Toeplitz matrix built
/// from it positive semidefinite.
template <typename Derived>
AutocorrSeq<typename Derived::Scalar> autocorr_estimate(const Eigen::MatrixBase<Derived>& x, Eigen::Index max_lag)
{
    using Scalar = typename Derived::Scalar;
    const Eigen::Index len = x.size();
    if (max_lag < 1)
        throw InvalidArgument("max_lag must be at least 1");
    if (max_lag >= len)
        throw InvalidArgument("max_lag must be smaller than the signal length");

    AutocorrSeq<Scalar> r;
    r.sample_count = len;
    r.lags.resize(max_lag);
    for (Eigen::Index t = 0; t < max_lag; ++t)
        r.lags(t) = x.tail(len - t).dot(x.head(len - t)) / static_cast<Scalar>(len);
    return r;
}

/// Symmetric Toeplitz matrix M[i][j] = r(|i-j|).
template <typename Scalar>
class ToeplitzMatrix {
public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    ToeplitzMatrix(const VectorX<Scalar>& lags, Eigen::Index order) : m_(order, order)
    {
        if (order < 1)
            throw InvalidArgument("Toeplitz order must be at least 1");
        if (order > lags.size())
            throw InvalidArgument("Toeplitz order exceeds the number of autocorrelation lags");
        for (Eigen::Index i = 0; i < order; ++i)
            for (Eigen::Index j = 0; j < order; ++j)
                m_(i, j) = lags(std::abs(i - j));
    }

    const Matrix& matrix() const noexcept { return m_; }
    Eigen::Index order() const noexcept { return m_.rows(); }
    Scalar operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    Matrix m_;
};

template <typename Scalar>
ToeplitzMatrix<Scalar> toeplitz_from_autocorr(const AutocorrSeq<Scalar>& r, Eigen::Index order)
{
    return ToeplitzMatrix<Scalar>(r.lags, order);
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
/// Sweeps stop once the off-diagonal norm drops below 1e-12 of the Frobenius norm.
template <typename Derived>
VectorX<typename Derived::Scalar> symmetric_eigenvalues(const Eigen::MatrixBase<Derived>& input)
{
    using Scalar = typename Derived::Scalar;
    using std::abs;
    using std::sqrt;

    if (input.rows() != input.cols())
        throw InvalidArgument("eigenvalues need a square matrix");
    if (!all_finite(input))
        throw InvalidArgument("matrix has non-finite entries");

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = input;
    const Eigen::Index n = a.rows();
    if (n == 0)
        return VectorX<Scalar>();

    const Scalar scale = std::max(Scalar(1), a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale)
        throw InvalidArgument("matrix is not symmetric");
    a = (a + a.transpose()) / Scalar(2);

    const Scalar frobenius = a.norm();
    const Scalar tol = Scalar(1e-12) * frobenius;
    for (int sweep = 0; sweep < 100; ++sweep) {
        const Scalar off = sqrt(std::max(Scalar(0), a.squaredNorm() - a.diagonal().squaredNorm()));
        if (off <= tol)
            break;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                if (apq == Scalar(0))
                    continue;
                const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
                const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                                 (abs(theta) + sqrt(theta * theta + Scalar(1)));
                const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
                const Scalar s = t * c;

                const VectorX<Scalar> col_p = a.col(p);
                const VectorX<Scalar> col_q = a.col(q);
                a.col(p) = c * col_p - s * col_q;
                a.col(q) = s * col_p + c * col_q;
                const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row_p = a.row(p);
                const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row_q = a.row(q);
                a.row(p) = c * row_p - s * row_q;
                a.row(q) = s * row_p + c * row_q;
                a(p, q) = Scalar(0);
                a(q, p) = Scalar(0);
            }
        }
    }

    VectorX<Scalar> eig = a.diagonal();
    std::sort(eig.data(), eig.data() + eig.size());
    return eig;
}

template <typename Scalar>
VectorX<Scalar> sym_eigenvalues(const ToeplitzMatrix<Scalar>& m)
{
    return symmetric_eigenvalues(m.matrix());
}

/// Power spectral density sampled on [0, pi].
template <typename Scalar>
struct PsdCurve {
    VectorX<Scalar> omega; ///< radians/sample, strictly increasing
    VectorX<Scalar> values;
};

/// X(w) = r(0) + 2 sum_{t>=1} r(t) cos(w t), the transform of the (truncated) lags.
template <typename Scalar>
Scalar psd_at(const VectorX<Scalar>& lags, Scalar omega)
{
    Scalar acc = lags.size() > 0 ? lags(0) : Scalar(0);
    for (Eigen::Index t = 1; t < lags.size(); ++t)
        acc += Scalar(2) * lags(t) * std::cos(omega * static_cast<Scalar>(t));
    return acc;
}

template <typename Scalar>
PsdCurve<Scalar> psd_from_autocorr(const AutocorrSeq<Scalar>& r, Eigen::Index grid_size = 4096)
{
    if (grid_size < 2)
        throw InvalidArgument("PSD grid needs at least 2 points");
    PsdCurve<Scalar> psd;
    psd.omega = VectorX<Scalar>::LinSpaced(grid_size, Scalar(0), std::numbers::pi_v<Scalar>);
    psd.values.resize(grid_size);
    for (Eigen::Index k = 0; k < grid_size; ++k)
        psd.values(k) = psd_at(r.lags, psd.omega(k));
    return psd;
}

template <typename Scalar>
struct PsdRange {
    Scalar min;
    Scalar max;
};

/// Extremes of X(w) over [0, pi]: best grid points, then golden-section
/// refinement inside the neighbouring grid cells.
template <typename Scalar>
PsdRange<Scalar> psd_range(const AutocorrSeq<Scalar>& r, Eigen::Index grid_size = 4096)
{
    const PsdCurve<Scalar> psd = psd_from_autocorr(r, grid_size);
    const Scalar step = psd.omega(1) - psd.omega(0);
    const Scalar pi = std::numbers::pi_v<Scalar>;

    auto refine = [&](Eigen::Index k, Scalar sign) {
        // maximise sign * X(w) on [w_k - step, w_k + step] ∩ [0, pi]
        Scalar lo = std::max(Scalar(0), psd.omega(k) - step);
        Scalar hi = std::min(pi, psd.omega(k) + step);
        const Scalar g = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
        Scalar x1 = hi - g * (hi - lo);
        Scalar x2 = lo + g * (hi - lo);
        Scalar f1 = sign * psd_at(r.lags, x1);
        Scalar f2 = sign * psd_at(r.lags, x2);
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = sign * psd_at(r.lags, x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = sign * psd_at(r.lags, x1);
            }
        }
        return std::max({sign * psd.values(k), f1, f2}) * sign;
    };

    Eigen::Index kmin = 0;
    Eigen::Index kmax = 0;
    psd.values.minCoeff(&kmin);
    psd.values.maxCoeff(&kmax);
    return {refine(kmin, Scalar(-1)), refine(kmax, Scalar(1))};
}

/// Convergence prediction from the eigenvalue spread of the input correlation matrix.
template <typename Scalar>
struct ConvergenceEstimate {
    Scalar lambda_min;
    Scalar lambda_max;
    Scalar disparity; ///< lambda_max / lambda_min
    Scalar tau;       ///< 1 / (mu lambda_min), iterations
    Scalar mu_bound;  ///< 1 / lambda_max
};

template <typename Derived>
ConvergenceEstimate<typename Derived::Scalar> convergence_estimate(const Eigen::MatrixBase<Derived>& eigs,
                                                                   typename Derived::Scalar mu)
{
    using Scalar = typename Derived::Scalar;
    if (eigs.size() == 0)
        throw InvalidArgument("no eigenvalues given");
    if (!(mu > Scalar(0)))
        throw InvalidArgument("step size must be positive");
    const Scalar lmin = eigs.minCoeff();
    const Scalar lmax = eigs.maxCoeff();
    if (!(lmin > Scalar(0)))
        throw DegenerateSpectrumError("eigenvalues must all be positive");
    return {lmin, lmax, lmax / lmin, Scalar(1) / (mu * lmin), Scalar(1) / lmax};
}

/// Solves R C = P for the order-N Wiener weights, with R the Toeplitz matrix of
/// the biased autocorrelation of x and P(k) = (1/len) sum_n d(n) x(n-k).
/// Throws SingularMatrixError when R is singular or its condition estimate exceeds 1e12.
template <typename DerivedX, typename DerivedD>
VectorX<typename DerivedX::Scalar> wiener_solution(const Eigen::MatrixBase<DerivedX>& x,
                                                   const Eigen::MatrixBase<DerivedD>& d, Eigen::Index order)
{
    using Scalar = typename DerivedX::Scalar;
    const Eigen::Index len = x.size();
    if (d.size() != len)
        throw InvalidArgument("x and d must have equal length");
    if (order < 1)
        throw InvalidArgument("Wiener order must be at least 1");

    const auto r = autocorr_estimate(x, order);
    const ToeplitzMatrix<Scalar> rm(r.lags, order);

    VectorX<Scalar> p(order);
    for (Eigen::Index k = 0; k < order; ++k)
        p(k) = d.tail(len - k).dot(x.head(len - k)) / static_cast<Scalar>(len);

    const Eigen::LDLT<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> ldlt(rm.matrix());
    if (ldlt.info() != Eigen::Success || !(ldlt.rcond() >= Scalar(1e-12)))
        throw SingularMatrixError("autocorrelation matrix is singular or ill-conditioned");
    return ldlt.solve(p);
}

} // namespace adaptid
