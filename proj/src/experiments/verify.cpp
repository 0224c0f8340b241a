#include "phasembed/experiments/verify.hpp"

#include <algorithm>
#include <cmath>

#include "phasembed/core/linalg.hpp"
#include "phasembed/core/types.hpp"

namespace phasembed::experiments {

using core::Errc;
using core::Error;

SimilarityCheck verify_similarity(const Matrix& j, const Matrix& w) {
    if (!j.square() || !w.square() || j.rows() != w.rows())
        throw Error(Errc::BadConfig, "verify_similarity needs square matrices of equal size");

    const Matrix transformed = w * j * core::invert(w);
    const std::vector<double> reference = core::char_poly(j);
    const std::vector<double> candidate = core::char_poly(transformed);

    SimilarityCheck check;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double dev =
            std::fabs(candidate[i] - reference[i]) / std::max(1.0, std::fabs(reference[i]));
        check.max_deviation = std::max(check.max_deviation, dev);
    }
    check.pass = check.max_deviation < 1e-8;
    return check;
}

Matrix jacobian_average(const synth::OdeSystem& sys, const std::vector<synth::State>& segment,
                        double t) {
    if (segment.empty()) throw Error(Errc::BadConfig, "need at least one state");
    const auto n = static_cast<std::size_t>(sys.dim);
    Matrix mean(n, n);
    for (const synth::State& state : segment) {
        const Matrix j = sys.jacobian(state, t);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) mean(r, c) += j(r, c);
    }
    const double inv_p = 1.0 / static_cast<double>(segment.size());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) mean(r, c) *= inv_p;
    return mean;
}

Matrix expm(const Matrix& a) {
    if (!a.square()) throw Error(Errc::BadConfig, "expm needs a square matrix");
    const std::size_t n = a.rows();

    // Infinity norm drives the scaling count.
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double row_sum = 0.0;
        for (std::size_t c = 0; c < n; ++c) row_sum += std::fabs(a(r, c));
        norm = std::max(norm, row_sum);
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale >= 0.5) {
        scale *= 0.5;
        ++squarings;
    }

    Matrix scaled(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scaled(r, c) = a(r, c) * scale;

    // term after iteration k holds scaled^k / k!.
    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= 12; ++k) {
        term = term * scaled;
        const double inv_fact = 1.0 / static_cast<double>(k);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                term(r, c) *= inv_fact;
                result(r, c) += term(r, c);
            }
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

std::vector<double> verify_lyapunov_svd(const Matrix& a, double t) {
    if (!a.square()) throw Error(Errc::BadConfig, "needs a square matrix");
    if (a.rows() > 6) throw Error(Errc::BadConfig, "capped at n <= 6");
    if (!(t > 0.0)) throw Error(Errc::BadConfig, "t must be > 0");

    const std::size_t n = a.rows();
    Matrix at(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) at(r, c) = a(r, c) * t;

    const Matrix m = expm(at);
    const Matrix gram = m.transpose() * m;
    const core::EigenDecomposition eig = core::jacobi_eigh(gram);

    std::vector<double> exponents(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sigma2 = std::max(eig.eigenvalues[i], 1e-300);
        exponents[i] = 0.5 * std::log(sigma2) / t;  // (1/t) ln sqrt(eigenvalue)
    }
    return exponents;  // jacobi_eigh already sorts non-increasing
}

}  // namespace phasembed::experiments
