#pragma once

#include <functional>
#include <string>
#include <vector>

#include "phasembed/core/matrix.hpp"
#include "phasembed/core/types.hpp"

namespace phasembed::synth {

using core::Matrix;
using core::TimeSeries;

using State = std::vector<double>;

/// Autonomous-or-not ODE with its analytic Jacobian. The Jacobian must
/// match vector_field; tests enforce this by finite differences.
struct OdeSystem {
    int dim = 0;
    std::function<State(const State&, double)> vector_field;
    std::function<Matrix(const State&, double)> jacobian;
    std::string name;
};

/// Classical fixed-step RK4. Output has C = sys.dim channels and
/// T = n_steps + 1 samples, first column = x0.
/// Throws Diverged when any state component exceeds 1e8 in magnitude.
TimeSeries rk4_integrate(const OdeSystem& sys, const State& x0, double dt, std::size_t n_steps);

/// Largest Lyapunov exponent by Jacobian-evolved tangent dynamics with
/// per-step renormalization (Benettin). Units: 1/time.
double benettin_lle(const OdeSystem& sys, const State& x0, double dt, std::size_t n_steps);

OdeSystem lorenz_system(double sigma = 10.0, double rho = 28.0, double beta = 8.0 / 3.0);
OdeSystem rossler_system(double a = 0.2, double b = 0.2, double c = 5.7);

}  // namespace phasembed::synth
