// Copyright 2026 The qre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qre/core/register.hpp"
#include "qre/errors.hpp"

namespace qre {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical tolerances shared across modules.
namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNegativeEigenvalue = 1e-10;
inline constexpr double kNorm = 1e-10;
inline constexpr double kProjector = 1e-10;
inline constexpr double kZeroProbability = 1e-12;
/// Eigenvalues below this are treated as exact zeros when taking logarithms.
inline constexpr double kEntropyCutoff = 1e-12;
inline constexpr double kPurity = 1e-8;
}  // namespace tol

inline Matrix hermitize(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Kronecker product, left factor on the more significant bits.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

/// Ascending eigenvalues of a Hermitian matrix.
inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

class PureState {
  public:
    PureState(QubitRegister reg, Vector amplitudes) : reg_(std::move(reg)), amp_(std::move(amplitudes)) {
        if (static_cast<std::size_t>(amp_.size()) != reg_.dim()) {
            throw ShapeError("amplitude vector of length " + std::to_string(amp_.size()) + " for register of dimension " +
                             std::to_string(reg_.dim()));
        }
        if (std::abs(amp_.norm() - 1.0) > tol::kNorm) {
            throw InvalidStateError("state vector is not normalized (norm " + std::to_string(amp_.norm()) + ")");
        }
    }

    /// Computational basis state, e.g. basis({"A", "B"}, "01").
    static PureState basis(QubitRegister reg, const std::string& bits) {
        if (bits.size() != reg.size()) {
            throw ShapeError("bitstring '" + bits + "' does not match register size");
        }
        std::size_t idx = 0;
        for (char ch : bits) {
            if (ch != '0' && ch != '1') {
                throw DomainError("bitstring may only contain 0 and 1");
            }
            idx = (idx << 1) | static_cast<std::size_t>(ch == '1');
        }
        Vector v = Vector::Zero(static_cast<Eigen::Index>(reg.dim()));
        v(static_cast<Eigen::Index>(idx)) = 1.0;
        return PureState(std::move(reg), std::move(v));
    }

    /// Rescales `amplitudes` to unit norm before construction.
    static PureState normalized(QubitRegister reg, Vector amplitudes) {
        double n = amplitudes.norm();
        if (n < tol::kZeroProbability) {
            throw InvalidStateError("cannot normalize a zero vector");
        }
        return PureState(std::move(reg), amplitudes / n);
    }

    const QubitRegister& reg() const { return reg_; }
    const Vector& amplitudes() const { return amp_; }
    std::size_t dim() const { return reg_.dim(); }

    Matrix projector() const { return amp_ * amp_.adjoint(); }

  private:
    QubitRegister reg_;
    Vector amp_;
};

class DensityMatrix {
  public:
    DensityMatrix(QubitRegister reg, Matrix entries) : reg_(std::move(reg)), rho_(std::move(entries)) {
        auto d = static_cast<Eigen::Index>(reg_.dim());
        if (rho_.rows() != d || rho_.cols() != d) {
            throw ShapeError("density matrix of shape " + std::to_string(rho_.rows()) + "x" + std::to_string(rho_.cols()) +
                             " for register of dimension " + std::to_string(d));
        }
        double herm = max_abs(rho_ - rho_.adjoint());
        if (herm > tol::kHermitian) {
            throw InvalidStateError("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
        }
        rho_ = hermitize(rho_);
        double tr = rho_.trace().real();
        if (std::abs(tr - 1.0) > tol::kTrace) {
            throw InvalidStateError("density matrix trace is " + std::to_string(tr));
        }
        double lo = hermitian_eigenvalues(rho_).minCoeff();
        if (lo < -tol::kNegativeEigenvalue) {
            throw InvalidStateError("density matrix has negative eigenvalue " + std::to_string(lo));
        }
    }

    DensityMatrix(const PureState& psi) : reg_(psi.reg()), rho_(psi.projector()) {}

    static DensityMatrix maximally_mixed(QubitRegister reg) {
        auto d = static_cast<Eigen::Index>(reg.dim());
        return DensityMatrix(std::move(reg), Matrix::Identity(d, d) / static_cast<double>(d));
    }

    const QubitRegister& reg() const { return reg_; }
    const Matrix& matrix() const { return rho_; }
    std::size_t dim() const { return reg_.dim(); }

    /// p * this + (1 - p) * other.
    DensityMatrix mix(const DensityMatrix& other, double p) const {
        if (!(reg_ == other.reg_)) {
            throw LabelError("cannot mix states on different registers");
        }
        return DensityMatrix(reg_, p * rho_ + (1.0 - p) * other.rho_);
    }

  private:
    QubitRegister reg_;
    Matrix rho_;
};

/// Projective decomposition {M_i} of an observable on one qubit.
class ObservableSpec {
  public:
    ObservableSpec(std::string subsystem, std::vector<Matrix> projectors)
        : subsystem_(std::move(subsystem)), projectors_(std::move(projectors)) {
        if (projectors_.empty()) {
            throw DomainError("observable needs at least one projector");
        }
        auto d = projectors_.front().rows();
        Matrix sum = Matrix::Zero(d, d);
        for (std::size_t i = 0; i < projectors_.size(); ++i) {
            const auto& m = projectors_[i];
            if (m.rows() != d || m.cols() != d) {
                throw ShapeError("projectors must share one square shape");
            }
            sum += m;
            for (std::size_t j = 0; j < projectors_.size(); ++j) {
                Matrix prod = m * projectors_[j];
                Matrix expect = i == j ? m : Matrix::Zero(d, d);
                if (max_abs(prod - expect) > tol::kProjector) {
                    throw InvalidStateError("observable projectors are not orthogonal idempotents");
                }
            }
        }
        if (max_abs(sum - Matrix::Identity(d, d)) > tol::kProjector) {
            throw InvalidStateError("observable projectors do not resolve the identity");
        }
    }

    /// Projectors onto the columns of a unitary `basis`.
    static ObservableSpec from_basis(std::string subsystem, const Matrix& basis) {
        std::vector<Matrix> ps;
        for (Eigen::Index k = 0; k < basis.cols(); ++k) {
            ps.push_back(basis.col(k) * basis.col(k).adjoint());
        }
        return ObservableSpec(std::move(subsystem), std::move(ps));
    }

    static ObservableSpec sigma_z(std::string subsystem) {
        return from_basis(std::move(subsystem), Matrix::Identity(2, 2));
    }

    static ObservableSpec sigma_x(std::string subsystem) {
        Matrix h(2, 2);
        h << 1, 1, 1, -1;
        return from_basis(std::move(subsystem), h / std::sqrt(2.0));
    }

    static ObservableSpec sigma_y(std::string subsystem) {
        const Complex i{0, 1};
        Matrix b(2, 2);
        b << 1, 1, i, -i;
        return from_basis(std::move(subsystem), b / std::sqrt(2.0));
    }

    const std::string& subsystem() const { return subsystem_; }
    const std::vector<Matrix>& projectors() const { return projectors_; }

  private:
    std::string subsystem_;
    std::vector<Matrix> projectors_;
};

/// Single-qubit kets used throughout.
namespace kets {
inline Vector zero() { return Vector::Unit(2, 0); }
inline Vector one() { return Vector::Unit(2, 1); }
inline Vector plus() { return (zero() + one()) / std::sqrt(2.0); }
inline Vector minus() { return (zero() - one()) / std::sqrt(2.0); }
inline Vector plus_i() { return (zero() + Complex{0, 1} * one()) / std::sqrt(2.0); }
inline Vector minus_i() { return (zero() - Complex{0, 1} * one()) / std::sqrt(2.0); }
}  // namespace kets

}  // namespace qre
