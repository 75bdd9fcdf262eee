#include "qest/core.hpp"

#include <cmath>
#include <sstream>

namespace qest {

PositivityError::PositivityError(double time, double min_eig, double suggested_dt)
    : Error([&] {
          std::ostringstream os;
          os << "state left the physical cone at t=" << time
             << " (min eigenvalue " << min_eig << "); retry with dt <= " << suggested_dt;
          return os.str();
      }()),
      time_(time),
      min_eigenvalue_(min_eig),
      suggested_dt_(suggested_dt) {}

ComplexMatrix hermitize(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    // tr[ab] = sum_ij a_ij b_ji
    return a.cwiseProduct(b.transpose()).sum();
}

double min_eigenvalue(const ComplexMatrix& m) {
    const auto n = m.rows();
    if (n == 2) {
        const double a = m(0, 0).real();
        const double b = m(1, 1).real();
        const double off = std::norm(m(0, 1));
        const double half_gap = 0.5 * (a - b);
        return 0.5 * (a + b) - std::sqrt(half_gap * half_gap + off);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver;
    if (n == 3) {
        solver.computeDirect(m, Eigen::EigenvaluesOnly);
    } else {
        solver.compute(m, Eigen::EigenvaluesOnly);
    }
    return solver.eigenvalues()(0);
}

EigenSystem eigensystem(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error("eigendecomposition failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

void require_operator_shape(const ComplexMatrix& m, const std::string& what) {
    if (m.rows() != m.cols()) {
        throw Error(what + ": matrix must be square");
    }
    if (m.rows() < 2) {
        throw Error(what + ": dimension must be at least 2");
    }
    if (m.rows() > kMaxDim) {
        throw Error(what + ": dimension exceeds the dense cap of 64");
    }
    if (!m.allFinite()) {
        throw Error(what + ": matrix has non-finite entries");
    }
}

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw Error(os.str());
    }
}

double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

Observable::Observable(ComplexMatrix m, double tol_herm) : m_(std::move(m)) {
    require_operator_shape(m_, "Observable");
    const double defect = hermiticity_defect(m_);
    if (defect > tol_herm) {
        std::ostringstream os;
        os << "Observable: not Hermitian (max entry deviation " << defect << ")";
        throw Error(os.str());
    }
}

Observable Observable::zero(int dim) {
    return Observable(ComplexMatrix::Zero(dim, dim));
}

PureState::PureState(ComplexVector amplitudes) : v_(std::move(amplitudes)) {
    if (v_.size() < 2 || v_.size() > kMaxDim) {
        throw Error("PureState: dimension must be in [2, 64]");
    }
    if (!v_.allFinite()) {
        throw Error("PureState: non-finite amplitudes");
    }
    const double norm = v_.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "PureState: norm " << norm << " is not 1";
        throw Error(os.str());
    }
}

PureState PureState::basis(int dim, int index) {
    if (index < 0 || index >= dim) {
        throw Error("PureState::basis: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return PureState(std::move(v));
}

DensityMatrix DensityMatrix::validated(ComplexMatrix m, const Tolerances& tol) {
    require_operator_shape(m, "DensityMatrix");
    const double defect = hermiticity_defect(m);
    if (defect > tol.herm) {
        std::ostringstream os;
        os << "DensityMatrix: not Hermitian (max entry deviation " << defect << ")";
        throw Error(os.str());
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
        std::ostringstream os;
        os << "DensityMatrix: trace " << tr.real() << " deviates from 1";
        throw Error(os.str());
    }
    const double min_eig = min_eigenvalue(hermitize(m));
    if (min_eig < -tol.pos) {
        std::ostringstream os;
        os << "DensityMatrix: minimum eigenvalue " << min_eig << " below -" << tol.pos;
        throw Error(os.str());
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
    return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_projector(int dim, int index) {
    return pure(PureState::basis(dim, index));
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix identity(int dim) {
    return ComplexMatrix::Identity(dim, dim);
}

double expectation(const Observable& obs, const DensityMatrix& state) {
    require_same_dim(obs.dim(), state.dim(), "expectation");
    const Complex tr = trace_product(obs.matrix(), state.matrix());
    if (std::abs(tr.imag()) > 1e-10) {
        std::ostringstream os;
        os << "expectation: imaginary part " << tr.imag() << " signals a corrupted state";
        throw Error(os.str());
    }
    return tr.real();
}

double expectation(const Observable& obs, const PureState& psi) {
    require_same_dim(obs.dim(), psi.dim(), "expectation");
    const Complex val = psi.amplitudes().dot(obs.matrix() * psi.amplitudes());
    return val.real();
}

Brackets brackets(const Observable& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), static_cast<int>(b.rows()), "brackets");
    const ComplexMatrix ab = a.matrix() * b;
    const ComplexMatrix ba = b * a.matrix();
    return {ab - ba, ab + ba};
}

StateMetrics state_metrics(const DensityMatrix& rho, const DensityMatrix& rho_e) {
    require_same_dim(rho.dim(), rho_e.dim(), "state_metrics");
    StateMetrics out;
    out.purity_true = trace_product(rho.matrix(), rho.matrix()).real();
    out.purity_est = trace_product(rho_e.matrix(), rho_e.matrix()).real();
    out.fidelity = trace_product(rho.matrix(), rho_e.matrix()).real();
    out.hs_distance = (rho.matrix() - rho_e.matrix()).norm();
    return out;
}

ComplexMatrix psd_sqrt(const DensityMatrix& rho, double tol_pos) {
    const EigenSystem es = eigensystem(rho.matrix());
    RealVector roots(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        const double lambda = es.values(i);
        if (lambda < -tol_pos) {
            std::ostringstream os;
            os << "psd_sqrt: eigenvalue " << lambda << " below -" << tol_pos;
            throw Error(os.str());
        }
        roots(i) = std::sqrt(std::max(lambda, 0.0));
    }
    return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

DensityMatrix normalize(const ComplexMatrix& m) {
    require_operator_shape(m, "normalize");
    const double tr = m.trace().real();
    if (tr <= 1e-12) {
        throw Error("normalize: trace real part <= 1e-12 (integrator blow-up?)");
    }
    return DensityMatrix::unchecked((m + m.adjoint()) / (2.0 * tr));
}

Observable heisenberg_observable(const Observable& q, const Observable& h, double t) {
    require_same_dim(q.dim(), h.dim(), "heisenberg_observable");
    const EigenSystem es = eigensystem(h.matrix());
    ComplexVector phases(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        phases(i) = std::exp(Complex(0.0, es.values(i) * t));
    }
    const ComplexMatrix u = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
    return Observable(hermitize(u * q.matrix() * u.adjoint()));
}

UnitaryPropagator::UnitaryPropagator(const Observable& h, double dt) {
    const EigenSystem es = eigensystem(h.matrix());
    ComplexVector phases(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        phases(i) = std::exp(Complex(0.0, -es.values(i) * dt));
    }
    u_ = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix UnitaryPropagator::apply(const ComplexMatrix& rho) const {
    return u_ * rho * u_.adjoint();
}

}  // namespace qest
