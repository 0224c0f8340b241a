#include "phasembed/core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "phasembed/core/types.hpp"

namespace phasembed::core {

namespace {

void require_square(const Matrix& a, const char* who) {
    if (!a.square()) throw Error(Errc::BadConfig, std::string(who) + " needs a square matrix");
    if (a.rows() > kMaxSquareDim)
        throw Error(Errc::BadConfig,
                    std::string(who) + " capped at n <= " + std::to_string(kMaxSquareDim));
}

}  // namespace

std::vector<double> char_poly(const Matrix& a) {
    require_square(a, "char_poly");
    const std::size_t n = a.rows();
    std::vector<double> coeffs(n + 1, 0.0);
    coeffs[0] = 1.0;

    // M_1 = A, c_k = -tr(M_k)/k, M_{k+1} = A*(M_k + c_k*I)
    Matrix m = a;
    for (std::size_t k = 1; k <= n; ++k) {
        const double c = -m.trace() / static_cast<double>(k);
        coeffs[k] = c;
        if (k == n) break;
        Matrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c;
        m = a * shifted;
    }
    return coeffs;
}

Matrix invert(const Matrix& a) {
    require_square(a, "invert");
    const std::size_t n = a.rows();
    const double scale = std::max(a.max_abs(), 1.0);

    Matrix work = a;
    Matrix inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(work(r, col)) > std::fabs(work(pivot, col))) pivot = r;
        if (std::fabs(work(pivot, col)) < 1e-12 * scale)
            throw Error(Errc::Singular, "pivot below 1e-12 at column " + std::to_string(col));
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(work(col, c), work(pivot, c));
                std::swap(inv(col, c), inv(pivot, c));
            }
        }
        const double d = work(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            work(col, c) /= d;
            inv(col, c) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = work(r, col);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                work(r, c) -= f * work(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

EigenDecomposition jacobi_eigh(const Matrix& s) {
    if (!s.square()) throw Error(Errc::BadConfig, "jacobi_eigh needs a square matrix");
    const std::size_t n = s.rows();

    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            asym = std::max(asym, std::fabs(s(i, j) - s(j, i)));
    if (asym >= 1e-9 * std::max(s.max_abs(), 1e-300))
        throw Error(Errc::NotSymmetric, "max |S - S^T| = " + std::to_string(asym));

    Matrix a = s;
    Matrix v = Matrix::identity(n);
    const double norm = std::max(a.frobenius_norm(), 1e-300);

    auto off_norm = [&]() {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) sum += a(i, j) * a(i, j);
        return std::sqrt(sum);
    };

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && off_norm() >= 1e-11 * norm; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - sn * aiq;
                    a(i, q) = sn * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - sn * aqi;
                    a(q, i) = sn * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - sn * viq;
                    v(i, q) = sn * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

Matrix solve_linear(Matrix a, Matrix b) {
    if (!a.square() || a.rows() != b.rows())
        throw Error(Errc::BadConfig, "solve_linear shape mismatch");
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();
    const double scale = std::max(a.max_abs(), 1.0);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
        if (std::fabs(a(pivot, col)) < 1e-12 * scale)
            throw Error(Errc::IllConditioned, "pivot below 1e-12 at column " + std::to_string(col));
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            for (std::size_t c = 0; c < m; ++c) std::swap(b(col, c), b(pivot, c));
        }
        const double d = a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / d;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            for (std::size_t c = 0; c < m; ++c) b(r, c) -= f * b(col, c);
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t c = 0; c < m; ++c) {
            double sum = b(col, c);
            for (std::size_t k = col + 1; k < n; ++k) sum -= a(col, k) * b(k, c);
            b(col, c) = sum / a(col, col);
        }
    }
    return b;
}

}  // namespace phasembed::core
