#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

// Finite-dimensional complex linear algebra and quantum-state primitives.
// All operators are dense, dimensionless and expressed in hbar = 1 units.

namespace qest {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default numerical tolerances for state validation. Overridable per scenario.
struct Tolerances {
    double herm = 1e-10;   // max entry deviation from Hermiticity
    double trace = 1e-10;  // |tr - 1|
    double pos = 1e-8;     // eigenvalues may dip to -pos before we call it unphysical
};

inline constexpr int kMaxDim = 64;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a config/schema problem should abort with a usage error.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Raised when an integrated state leaves the physical cone beyond the
// configured abort threshold. Carries enough context to retune the step.
class PositivityError : public Error {
public:
    PositivityError(double time, double min_eigenvalue, double suggested_dt);
    double time() const { return time_; }
    double min_eigenvalue() const { return min_eigenvalue_; }
    double suggested_dt() const { return suggested_dt_; }

private:
    double time_;
    double min_eigenvalue_;
    double suggested_dt_;
};

// ---------------------------------------------------------------------------
// Small matrix helpers shared across modules.

// (m + m^dagger) / 2
ComplexMatrix hermitize(const ComplexMatrix& m);

// tr[a b] without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Smallest eigenvalue of a Hermitian matrix. Closed form for 2x2, direct
// solver for 3x3, iterative otherwise.
double min_eigenvalue(const ComplexMatrix& m);

// Eigendecomposition of a Hermitian matrix, ascending eigenvalues.
struct EigenSystem {
    RealVector values;
    ComplexMatrix vectors;  // columns are orthonormal eigenvectors
};
EigenSystem eigensystem(const ComplexMatrix& m);

// Throws qest::Error unless m is square, finite, and 2 <= dim <= 64.
void require_operator_shape(const ComplexMatrix& m, const std::string& what);

// ---------------------------------------------------------------------------
// Domain types.

// A Hermitian operator: a measured variable or a Hamiltonian.
class Observable {
public:
    // Validates Hermiticity (max entry deviation <= tol_herm) and shape.
    explicit Observable(ComplexMatrix m, double tol_herm = Tolerances{}.herm);

    // Zero operator of the given dimension (a trivial Hamiltonian).
    static Observable zero(int dim);

    Observable() : Observable(ComplexMatrix::Zero(2, 2)) {}

    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

private:
    ComplexMatrix m_;
};

class PureState {
public:
    // Validates unit Euclidean norm within 1e-10.
    explicit PureState(ComplexVector amplitudes);

    static PureState basis(int dim, int index);

    const ComplexVector& amplitudes() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    ComplexMatrix projector() const { return v_ * v_.adjoint(); }

private:
    ComplexVector v_;
};

// Hermitian, unit-trace, positive-semidefinite operator. Both the true
// state and the running estimate are carried as this type.
class DensityMatrix {
public:
    // Full validation: Hermiticity, trace and minimum eigenvalue.
    static DensityMatrix validated(ComplexMatrix m, const Tolerances& tol = {});

    // Trusted constructor for integrator internals where the invariants are
    // maintained by construction and positivity is monitored separately.
    static DensityMatrix unchecked(ComplexMatrix m);

    static DensityMatrix pure(const PureState& psi);
    static DensityMatrix maximally_mixed(int dim);
    static DensityMatrix basis_projector(int dim, int index);

    DensityMatrix() : DensityMatrix(maximally_mixed(2)) {}

    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

// Pauli / identity building blocks used by presets and tests alike.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix identity(int dim);

// ---------------------------------------------------------------------------
// Operations.

// tr[obs * state]. The trace must be real up to 1e-10; a larger imaginary
// part signals a corrupted state and throws.
double expectation(const Observable& obs, const DensityMatrix& state);

// <psi| obs |psi> for the pure-state estimate path.
double expectation(const Observable& obs, const PureState& psi);

struct Brackets {
    ComplexMatrix commutator;      // ab - ba
    ComplexMatrix anticommutator;  // ab + ba
};
Brackets brackets(const Observable& a, const ComplexMatrix& b);

struct StateMetrics {
    double purity_true;  // tr[rho^2]
    double purity_est;   // tr[rho_e^2]
    double fidelity;     // tr[rho rho_e]
    double hs_distance;  // Frobenius norm of rho - rho_e
};
StateMetrics state_metrics(const DensityMatrix& rho, const DensityMatrix& rho_e);

// Hermitian PSD square root via eigendecomposition. Eigenvalues in
// [-tol_pos, 0) are clamped to zero; anything below -tol_pos throws.
ComplexMatrix psd_sqrt(const DensityMatrix& rho, double tol_pos = Tolerances{}.pos);

// (m + m^dagger) / (2 * Re tr m): restores exact Hermiticity and unit trace
// after a finite integrator step. Throws when Re tr m <= 1e-12.
DensityMatrix normalize(const ComplexMatrix& m);

// Heisenberg-picture observable e^{+iHt} q e^{-iHt}, computed from the
// eigendecomposition of h.
Observable heisenberg_observable(const Observable& q, const Observable& h, double t);

// Fixed-interval unitary propagator built once from the eigendecomposition
// of the Hamiltonian; applies rho -> U rho U^dagger.
class UnitaryPropagator {
public:
    UnitaryPropagator(const Observable& h, double dt);
    ComplexMatrix apply(const ComplexMatrix& rho) const;
    const ComplexMatrix& matrix() const { return u_; }

private:
    ComplexMatrix u_;
};

}  // namespace qest
