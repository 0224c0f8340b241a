#include "phasembed/synth/ode.hpp"

#include <cmath>

namespace phasembed::synth {

using core::Errc;
using core::Error;

namespace {

constexpr double kDivergenceBound = 1e8;

void check_bounded(const State& x) {
    for (double v : x)
        if (!std::isfinite(v) || std::fabs(v) > kDivergenceBound)
            throw Error(Errc::Diverged, "state magnitude exceeded 1e8");
}

State axpy(const State& x, const State& k, double h) {
    State out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h * k[i];
    return out;
}

State rk4_step(const OdeSystem& sys, const State& x, double t, double dt) {
    const State k1 = sys.vector_field(x, t);
    const State k2 = sys.vector_field(axpy(x, k1, dt / 2), t + dt / 2);
    const State k3 = sys.vector_field(axpy(x, k2, dt / 2), t + dt / 2);
    const State k4 = sys.vector_field(axpy(x, k3, dt), t + dt);
    State out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

State matvec(const Matrix& m, const State& v) {
    State out(m.rows(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

}  // namespace

TimeSeries rk4_integrate(const OdeSystem& sys, const State& x0, double dt, std::size_t n_steps) {
    if (!(dt > 0.0)) throw Error(Errc::BadDt, "dt must be > 0");
    if (n_steps < 1) throw Error(Errc::BadConfig, "need n_steps >= 1");
    if (static_cast<int>(x0.size()) != sys.dim)
        throw Error(Errc::BadConfig, "x0 dimension mismatch");
    check_bounded(x0);

    TimeSeries ts;
    ts.values = Matrix(sys.dim, n_steps + 1);
    ts.dt = dt;
    State x = x0;
    for (int c = 0; c < sys.dim; ++c) ts.values(c, 0) = x[c];
    for (std::size_t step = 0; step < n_steps; ++step) {
        x = rk4_step(sys, x, static_cast<double>(step) * dt, dt);
        check_bounded(x);
        for (int c = 0; c < sys.dim; ++c) ts.values(c, step + 1) = x[c];
    }
    return ts;
}

double benettin_lle(const OdeSystem& sys, const State& x0, double dt, std::size_t n_steps) {
    if (!(dt > 0.0)) throw Error(Errc::BadDt, "dt must be > 0");
    if (n_steps < 1000) throw Error(Errc::BadConfig, "need n_steps >= 1000");
    check_bounded(x0);

    State x = x0;
    State v(sys.dim, 0.0);
    v[0] = 1.0;

    double log_sum = 0.0;
    for (std::size_t step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;

        // RK4 on the augmented (state, tangent) system: the tangent stage
        // derivatives use the Jacobian at the matching state stages.
        const State k1 = sys.vector_field(x, t);
        const State j1 = matvec(sys.jacobian(x, t), v);

        const State x2 = axpy(x, k1, dt / 2);
        const State v2 = axpy(v, j1, dt / 2);
        const State k2 = sys.vector_field(x2, t + dt / 2);
        const State j2 = matvec(sys.jacobian(x2, t + dt / 2), v2);

        const State x3 = axpy(x, k2, dt / 2);
        const State v3 = axpy(v, j2, dt / 2);
        const State k3 = sys.vector_field(x3, t + dt / 2);
        const State j3 = matvec(sys.jacobian(x3, t + dt / 2), v3);

        const State x4 = axpy(x, k3, dt);
        const State v4 = axpy(v, j3, dt);
        const State k4 = sys.vector_field(x4, t + dt);
        const State j4 = matvec(sys.jacobian(x4, t + dt), v4);

        for (int i = 0; i < sys.dim; ++i) {
            x[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            v[i] += dt / 6.0 * (j1[i] + 2 * j2[i] + 2 * j3[i] + j4[i]);
        }
        check_bounded(x);

        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw Error(Errc::Diverged, "tangent vector collapsed or diverged");
        log_sum += std::log(norm);
        for (double& c : v) c /= norm;
    }
    return log_sum / (static_cast<double>(n_steps) * dt);
}

OdeSystem lorenz_system(double sigma, double rho, double beta) {
    OdeSystem sys;
    sys.dim = 3;
    sys.name = "lorenz";
    sys.vector_field = [=](const State& s, double) -> State {
        return {sigma * (s[1] - s[0]), s[0] * (rho - s[2]) - s[1], s[0] * s[1] - beta * s[2]};
    };
    sys.jacobian = [=](const State& s, double) -> Matrix {
        return {{-sigma, sigma, 0.0},
                {rho - s[2], -1.0, -s[0]},
                {s[1], s[0], -beta}};
    };
    return sys;
}

OdeSystem rossler_system(double a, double b, double c) {
    OdeSystem sys;
    sys.dim = 3;
    sys.name = "rossler";
    sys.vector_field = [=](const State& s, double) -> State {
        return {-s[1] - s[2], s[0] + a * s[1], b + s[2] * (s[0] - c)};
    };
    sys.jacobian = [=](const State& s, double) -> Matrix {
        return {{0.0, -1.0, -1.0}, {1.0, a, 0.0}, {s[2], 0.0, s[0] - c}};
    };
    return sys;
}

}  // namespace phasembed::synth
