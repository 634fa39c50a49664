#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ghzsim/entanglement.hpp"
#include "ghzsim/matrix.hpp"
#include "ghzsim/model.hpp"

namespace ghzsim {

// 8x8 trace-one Hermitian PSD state of the three qubits. Construction
// validates the invariants (Hermiticity 1e-10 relative, |Tr-1| <= 1e-9,
// eigenvalues >= -1e-9).
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);
    static DensityMatrix pure(const PureState& psi);

    const ComplexMatrix& mat() const { return mat_; }

private:
    ComplexMatrix mat_;
};

// Integration grid: fixed integrator step dt, one recorded sample every
// sample_every steps. All times in ns.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 1e-3;
    int sample_every = 50;

    void validate() const;
    double sample_spacing() const { return dt * sample_every; }
    int sample_count() const;  // includes the t_start sample
};

// Per-basis-state dephasing rates gamma_k in GHz (= 1/ns). The energy rate
// entering the master equation is Gamma_k = h * gamma_k, so the coherence
// (j,k) decays at (Gamma_j + Gamma_k) / (2 hbar) = pi (gamma_j + gamma_k).
struct DephasingConfig {
    std::array<double, 8> gamma{};

    static DephasingConfig uniform(double gamma_ghz);
    void validate() const;
    double max_gamma() const;
};

struct NamedTarget {
    std::string name;
    PureState state;
};

// Sampled trajectory: populations, fidelities against the registered
// targets, tangles, and integration diagnostics.
struct TimeSeries {
    std::vector<double> times;
    std::array<std::vector<double>, 8> populations;
    std::vector<std::string> target_names;
    std::vector<std::vector<double>> fidelities;  // [target][sample]
    std::vector<double> tau3;
    std::vector<double> tau2;
    std::vector<double> purity;
    std::vector<double> trace_error;
    int renorm_count = 0;
    std::optional<double> first_renorm_time;

    size_t size() const { return times.size(); }
};

enum class UnitaryMethod {
    ExactPropagator,  // eigendecomposition propagator, no step error
    Rk4,              // fixed-step RK4 cross-check
};

// Optional per-sample hook, called with the (renormalized) state.
using StateObserver = std::function<void(double t_ns, const ComplexMatrix& rho)>;

// Closed-system evolution of rho under H (micro-eV); exact by default.
TimeSeries evolve_unitary(const ComplexMatrix& h, const DensityMatrix& rho0,
                          const TimeGrid& grid, const std::vector<NamedTarget>& targets,
                          UnitaryMethod method = UnitaryMethod::ExactPropagator,
                          const StateObserver& observer = {});

// Dephasing master equation with the 8 basis projectors as jump operators,
// integrated with fixed-step RK4.
TimeSeries evolve_lindblad(const ComplexMatrix& h, const DensityMatrix& rho0,
                           const TimeGrid& grid, const DephasingConfig& deph,
                           const std::vector<NamedTarget>& targets,
                           const StateObserver& observer = {});

// Diagonal entry of rho for a basis label like "000".
double population(const DensityMatrix& rho, std::string_view label);

// First interior maximum of a sampled series inside [times.front(), window_end],
// refined by a parabolic fit through the neighbouring samples.
struct Peak {
    double t = 0.0;
    double value = 0.0;
    int index = -1;
    bool interior = false;
};
Peak find_peak(const std::vector<double>& times, const std::vector<double>& values,
               double window_end);

}  // namespace ghzsim
