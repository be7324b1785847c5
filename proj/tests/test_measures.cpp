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

#include <cmath>
#include <iostream>
#include <random>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "qre/measures.hpp"

using namespace qre;

namespace {

// -0.75 log2 0.75 - 0.25 log2 0.25, evaluated independently
constexpr double kH34 = 0.8112781244591328;

PureState bell(const std::string& a, const std::string& b) {
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1 / std::sqrt(2.0);
    return PureState(QubitRegister{a, b}, v);
}

/// c|001> + sign s|110> on (b, d1, d2).
PureState omega2x(double c2, double sign = 1.0) {
    Vector v = Vector::Zero(8);
    v(0b001) = std::sqrt(c2);
    v(0b110) = sign * std::sqrt(1 - c2);
    return PureState(QubitRegister{"b", "d1", "d2"}, v);
}

/// (c|0> + s|1>)_b |11>_d1d2.
PureState omega1x(double c2) {
    Vector beta(2);
    beta << std::sqrt(c2), std::sqrt(1 - c2);
    return tensor(PureState(QubitRegister{"b"}, beta), PureState::basis(QubitRegister{"d1", "d2"}, "11"));
}

DensityMatrix random_dm(const QubitRegister& reg, std::mt19937_64& rng) {
    return DensityMatrix(reg, oracle::random_density(reg.dim(), rng));
}

}  // namespace

TEST(Entropy, examples) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix(bell("A", "B"))), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(QubitRegister{"A"})), 1.0, 1e-12);
    Matrix d(2, 2);
    d << 0.75, 0, 0, 0.25;
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix(QubitRegister{"A"}, d)), kH34, 1e-12);
    EXPECT_NEAR(binary_entropy(0.75), kH34, 1e-15);
    EXPECT_THROW(binary_entropy(1.5), DomainError);
}

TEST(Entropy, matches_general_eigensolver_oracle) {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 50; ++t) {
        auto rho = random_dm(QubitRegister{"A", "B", "C"}, rng);
        EXPECT_NEAR(von_neumann_entropy(rho), oracle::entropy(rho.matrix()), 1e-9);
    }
}

TEST(Irreality, omega1z_path_is_an_element_of_reality) {
    DensityMatrix omega(PureState::basis(QubitRegister{"b", "d1", "d2"}, "011"));
    auto rep = irreality(omega, ObservableSpec::sigma_z("b"));
    EXPECT_NEAR(rep.irreality, 0.0, 1e-12);
    EXPECT_LT(max_abs(dephasing_map(omega, ObservableSpec::sigma_z("b")).matrix() - omega.matrix()), 1e-15);
}

TEST(Irreality, omega1x_balanced_is_maximal_and_pure_coherence) {
    auto rep = irreality(DensityMatrix(omega1x(0.5)), ObservableSpec::sigma_z("b"));
    EXPECT_NEAR(rep.irreality, 1.0, 1e-12);
    EXPECT_NEAR(rep.coherence, 1.0, 1e-12);
    EXPECT_NEAR(rep.discord, 0.0, 1e-12);
}

TEST(Irreality, omega2x_markers_are_pure_discord) {
    DensityMatrix omega(omega2x(0.75));
    auto x = ObservableSpec::sigma_z("d1");
    auto rep = irreality(omega, x);
    EXPECT_NEAR(rep.irreality, kH34, 1e-12);
    EXPECT_NEAR(rep.coherence, 0.0, 1e-12);
    EXPECT_NEAR(rep.discord, kH34, 1e-12);
    // brute force: explicit block zeroing plus a general eigensolver
    EXPECT_NEAR(rep.irreality, oracle::irreality_block_zeroing(omega.matrix(), 3, 1, Matrix::Identity(2, 2)), 1e-10);
}

TEST(Irreality, agrees_with_block_zeroing_oracle) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + t % 2;
        std::vector<std::string> labels{"p", "q", "r"};
        labels.resize(n);
        QubitRegister reg(labels);
        auto rho = random_dm(reg, rng);
        int q = static_cast<int>(rng() % n);
        Matrix basis = oracle::random_unitary(2, rng);
        double got = irreality_value(rho, ObservableSpec::from_basis(labels[q], basis));
        EXPECT_NEAR(got, oracle::irreality_block_zeroing(rho.matrix(), n, q, basis), 1e-10);
    }
}

TEST(Irreality, realism_criterion_and_bounds) {
    std::mt19937_64 rng(37);
    QubitRegister reg{"A", "B"};
    for (int t = 0; t < 200; ++t) {
        auto rho = random_dm(reg, rng);
        auto x = ObservableSpec::from_basis("A", oracle::random_unitary(2, rng));
        auto rep = irreality(rho, x);
        EXPECT_GE(rep.irreality, -1e-9);
        EXPECT_LE(rep.irreality, 1.0 + 1e-9);
        EXPECT_NEAR(rep.irreality, rep.coherence + rep.discord, 1e-9);
        bool fixed = fidelity(dephasing_map(rho, x), rho) >= 1 - 1e-9;
        EXPECT_EQ(fixed, rep.irreality < 1e-9) << "irreality " << rep.irreality;

        // Phi_X(rho) is always an X-reality state
        auto dephased = dephasing_map(rho, x);
        EXPECT_NEAR(irreality_value(dephased, x), 0.0, 1e-9);
    }
}

TEST(Irreality, decomposition_on_many_random_states) {
    std::mt19937_64 rng(41);
    QubitRegister reg{"A", "B", "C"};
    for (int t = 0; t < 1000; ++t) {
        auto rho = random_dm(reg, rng);
        auto x = ObservableSpec::from_basis(reg.label(t % 3), oracle::random_unitary(2, rng));
        auto rep = irreality(rho, x);
        ASSERT_NEAR(rep.irreality, rep.coherence + rep.discord, 1e-9);
        auto local = partial_trace(rho, {x.subsystem()});
        ASSERT_NEAR(rep.coherence, irreality_value(local, x), 1e-9);
    }
}

TEST(MutualInformation, examples) {
    auto product = tensor(DensityMatrix(PureState(QubitRegister{"A"}, kets::plus())),
                          DensityMatrix::maximally_mixed(QubitRegister{"B"}));
    EXPECT_NEAR(mutual_information(product, {"A"}, {"B"}), 0.0, 1e-12);
    EXPECT_NEAR(mutual_information(DensityMatrix(bell("A", "B")), {"A"}, {"B"}), 2.0, 1e-12);
    EXPECT_NEAR(mutual_information(DensityMatrix(omega2x(0.75)), {"b"}, {"d1", "d2"}), 2 * kH34, 1e-12);
}

TEST(MutualInformation, partition_errors) {
    DensityMatrix rho(omega2x(0.75));
    EXPECT_THROW(mutual_information(rho, {"b"}, {"d1"}), LabelError);
    EXPECT_THROW(mutual_information(rho, {"b", "d1"}, {"d1", "d2"}), LabelError);
    EXPECT_THROW(mutual_information(rho, {"b"}, {"d1", "x"}), LabelError);
}

TEST(EntanglementEntropy, examples) {
    auto product = PureState::basis(QubitRegister{"A", "B"}, "01");
    EXPECT_NEAR(entanglement_entropy(product, {"A"}, {"B"}), 0.0, 1e-12);
    EXPECT_NEAR(entanglement_entropy(bell("A", "B"), {"A"}, {"B"}), 1.0, 1e-12);
    auto omega = omega2x(0.75);
    EXPECT_NEAR(entanglement_entropy(omega, {"b"}, {"d1", "d2"}), kH34, 1e-12);
    EXPECT_NEAR(entanglement_entropy(omega, {"d1", "d2"}, {"b"}), kH34, 1e-10);
}

TEST(EntanglementEntropy, rejects_mixed_states) {
    EXPECT_THROW(entanglement_entropy(DensityMatrix::maximally_mixed(QubitRegister{"A", "B"}), {"A"}, {"B"}),
                 PurityError);
    EXPECT_NEAR(entanglement_entropy(DensityMatrix(bell("A", "B")), {"A"}, {"B"}), 1.0, 1e-12);
}

TEST(EntanglementEntropy, invariant_under_local_unitaries) {
    std::mt19937_64 rng(43);
    QubitRegister reg{"A", "B", "C"};
    for (int t = 0; t < 50; ++t) {
        PureState psi(reg, oracle::random_ket(8, rng));
        double before = entanglement_entropy(psi, {"A"}, {"B", "C"});
        auto moved = apply_unitary(psi, oracle::random_unitary(2, rng), {"A"});
        moved = apply_unitary(moved, oracle::random_unitary(4, rng), {"C", "B"});
        EXPECT_NEAR(entanglement_entropy(moved, {"A"}, {"B", "C"}), before, 1e-9);
        EXPECT_NEAR(entanglement_entropy(psi, {"B", "C"}, {"A"}), before, 1e-10);
    }
}

TEST(Entropy, concavity_spot_check) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0, 1);
    QubitRegister reg{"A", "B"};
    for (int t = 0; t < 200; ++t) {
        auto rho = random_dm(reg, rng);
        auto sigma = random_dm(reg, rng);
        double p = u(rng);
        EXPECT_GE(von_neumann_entropy(rho.mix(sigma, p)),
                  p * von_neumann_entropy(rho) + (1 - p) * von_neumann_entropy(sigma) - 1e-9);
    }
}

TEST(Complementarity, examples) {
    auto product = tensor(DensityMatrix(PureState(QubitRegister{"A"}, kets::plus())),
                          DensityMatrix(PureState::basis(QubitRegister{"B"}, "1")));
    auto r = complementarity_check(product, ObservableSpec::sigma_z("A"), ObservableSpec::sigma_x("A"));
    EXPECT_NEAR(r.rhs, 0.0, 1e-12);
    EXPECT_TRUE(r.holds);

    auto b = complementarity_check(DensityMatrix(bell("A", "B")), ObservableSpec::sigma_z("A"),
                                   ObservableSpec::sigma_x("A"));
    EXPECT_NEAR(b.lhs, 2.0, 1e-12);
    EXPECT_NEAR(b.rhs, 2.0, 1e-12);
    EXPECT_TRUE(b.holds);
    // each irreality is 1 on its own
    EXPECT_NEAR(oracle::irreality_block_zeroing(DensityMatrix(bell("A", "B")).matrix(), 2, 0, Matrix::Identity(2, 2)),
                1.0, 1e-10);

    EXPECT_THROW(complementarity_check(product, ObservableSpec::sigma_z("A"), ObservableSpec::sigma_x("B")),
                 LabelError);
}

TEST(Complementarity, random_two_qubit_states) {
    std::mt19937_64 rng(53);
    QubitRegister reg{"A", "B"};
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    int violations = 0;
    for (int t = 0; t < 500; ++t) {
        auto rho = random_dm(reg, rng);
        Matrix u = oracle::random_unitary(2, rng);
        auto r = complementarity_check(rho, ObservableSpec::from_basis("A", u), ObservableSpec::from_basis("A", u * h));
        if (!r.holds) {
            ++violations;
            std::cerr << "complementarity violated: lhs " << r.lhs << " rhs " << r.rhs << "\n";
        }
    }
    RecordProperty("violations", violations);
    EXPECT_EQ(violations, 0);
}

TEST(PartialTranspose, detects_entanglement) {
    EXPECT_FALSE(is_ppt(DensityMatrix(bell("A", "B")), {"A"}));
    Matrix m = Matrix::Zero(4, 4);
    m(0b10, 0b10) = m(0b01, 0b01) = 0.5;
    EXPECT_TRUE(is_ppt(DensityMatrix(QubitRegister{"A", "B"}, m), {"A"}));
}
