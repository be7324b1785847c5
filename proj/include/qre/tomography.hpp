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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qre/core/ops.hpp"
#include "qre/core/state.hpp"
#include "qre/measures.hpp"
#include "qre/parallel.hpp"
#include "qre/rng.hpp"

namespace qre::tomo {

/// Local measurement basis. Outcome 0 is always the +1 eigenvector.
enum class PauliBasis { Z = 0, X = 1, Y = 2 };

inline char to_char(PauliBasis b) { return "ZXY"[static_cast<int>(b)]; }

inline PauliBasis basis_from_char(char c) {
    switch (c) {
        case 'Z': return PauliBasis::Z;
        case 'X': return PauliBasis::X;
        case 'Y': return PauliBasis::Y;
        default: throw ParseError(std::string("unknown measurement basis '") + c + "'");
    }
}

inline Vector basis_ket(PauliBasis b, int outcome) {
    switch (b) {
        case PauliBasis::Z: return outcome == 0 ? kets::zero() : kets::one();
        case PauliBasis::X: return outcome == 0 ? kets::plus() : kets::minus();
        case PauliBasis::Y: return outcome == 0 ? kets::plus_i() : kets::minus_i();
    }
    return {};
}

/// One product-basis setting: a Pauli basis per qubit, first entry on the leftmost qubit.
struct MeasurementSetting {
    std::vector<PauliBasis> bases;

    std::size_t n_qubits() const { return bases.size(); }
    std::size_t n_outcomes() const { return std::size_t{1} << bases.size(); }

    /// Ket of joint outcome `k`; bit pattern of k follows the register order.
    Vector outcome_ket(std::size_t k) const {
        Vector v = Vector::Ones(1);
        for (std::size_t q = 0; q < bases.size(); ++q) {
            int bit = static_cast<int>((k >> (bases.size() - 1 - q)) & 1u);
            v = kron(v, basis_ket(bases[q], bit));
        }
        return v;
    }

    std::vector<Matrix> projectors() const {
        std::vector<Matrix> out;
        for (std::size_t k = 0; k < n_outcomes(); ++k) {
            Vector v = outcome_ket(k);
            out.push_back(v * v.adjoint());
        }
        return out;
    }

    std::string key() const {
        std::string s;
        for (auto b : bases) {
            s += to_char(b);
        }
        return s;
    }

    bool operator==(const MeasurementSetting&) const = default;
};

/// All 3^n settings, first qubit varying slowest, in Z, X, Y order.
inline std::vector<MeasurementSetting> all_settings(std::size_t n_qubits) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n_qubits; ++i) {
        total *= 3;
    }
    std::vector<MeasurementSetting> out;
    out.reserve(total);
    for (std::size_t s = 0; s < total; ++s) {
        MeasurementSetting m;
        m.bases.resize(n_qubits);
        std::size_t rem = s;
        for (std::size_t q = n_qubits; q-- > 0;) {
            m.bases[q] = static_cast<PauliBasis>(rem % 3);
            rem /= 3;
        }
        out.push_back(std::move(m));
    }
    return out;
}

struct SettingCounts {
    MeasurementSetting setting;
    std::vector<std::int64_t> counts;
};

struct TomographyDataset {
    std::size_t n_qubits = 0;
    std::int64_t shots_per_setting = 0;
    std::uint64_t seed = 0;
    /// Qubit labels for the reconstructed state; q0, q1, ... when absent.
    std::vector<std::string> labels;
    std::vector<SettingCounts> settings;

    QubitRegister reg() const {
        if (labels.empty()) {
            std::vector<std::string> l;
            for (std::size_t i = 0; i < n_qubits; ++i) {
                l.push_back("q" + std::to_string(i));
            }
            return QubitRegister(std::move(l));
        }
        return QubitRegister(labels);
    }

    /// Checks the structural invariants; throws ParseError on the first violation.
    void validate() const {
        if (n_qubits == 0) {
            throw ParseError("n_qubits must be positive");
        }
        if (!labels.empty() && labels.size() != n_qubits) {
            throw ParseError("labels has " + std::to_string(labels.size()) + " entries for " +
                             std::to_string(n_qubits) + " qubits");
        }
        for (std::size_t i = 0; i < settings.size(); ++i) {
            const auto& s = settings[i];
            std::string where = "settings[" + std::to_string(i) + "]";
            if (s.setting.n_qubits() != n_qubits) {
                throw ParseError(where + ".bases has " + std::to_string(s.setting.n_qubits()) + " entries, expected " +
                                 std::to_string(n_qubits));
            }
            if (s.counts.size() != s.setting.n_outcomes()) {
                throw ParseError(where + ".counts has " + std::to_string(s.counts.size()) + " entries, expected " +
                                 std::to_string(s.setting.n_outcomes()));
            }
            std::int64_t total = 0;
            for (auto c : s.counts) {
                if (c < 0) {
                    throw ParseError(where + ".counts contains a negative count");
                }
                total += c;
            }
            if (shots_per_setting > 0 && total > shots_per_setting) {
                throw ParseError(where + ".counts sum to " + std::to_string(total) + ", above shots_per_setting");
            }
        }
    }
};

/// Outcome frequencies per setting; the noise-free input of linear inversion.
struct FrequencyTable {
    std::size_t n_qubits = 0;
    std::vector<MeasurementSetting> settings;
    std::vector<std::vector<double>> frequencies;
};

inline std::vector<double> born_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting) {
    std::vector<double> p(setting.n_outcomes());
    for (std::size_t k = 0; k < p.size(); ++k) {
        Vector v = setting.outcome_ket(k);
        p[k] = std::max(0.0, (v.adjoint() * rho.matrix() * v)(0, 0).real());
    }
    return p;
}

/// Exact Born probabilities for all 3^n settings.
inline FrequencyTable expected_frequencies(const DensityMatrix& rho) {
    FrequencyTable t;
    t.n_qubits = rho.reg().size();
    t.settings = all_settings(t.n_qubits);
    for (const auto& s : t.settings) {
        t.frequencies.push_back(born_probabilities(rho, s));
    }
    return t;
}

namespace detail {

/// Multinomial draw by sequential conditional binomials.
inline std::vector<std::int64_t> multinomial(std::int64_t shots, const std::vector<double>& probs, Rng& rng) {
    std::vector<std::int64_t> out(probs.size(), 0);
    double remaining_p = std::accumulate(probs.begin(), probs.end(), 0.0);
    std::int64_t remaining = shots;
    for (std::size_t k = 0; k < probs.size() && remaining > 0; ++k) {
        if (k + 1 == probs.size()) {
            out[k] = remaining;
            break;
        }
        double q = remaining_p > 0 ? std::clamp(probs[k] / remaining_p, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::int64_t> draw(remaining, q);
        out[k] = draw(rng);
        remaining -= out[k];
        remaining_p -= probs[k];
    }
    return out;
}

inline Matrix pauli(int which) {
    const Complex i{0, 1};
    Matrix m(2, 2);
    switch (which) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -i, i, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

// Pauli index per qubit: 0 = I, 1 = X, 2 = Y, 3 = Z. Basis index per qubit: 0 = Z, 1 = X, 2 = Y.
inline int basis_for_pauli(int p) { return p == 3 ? 0 : p; }

}  // namespace detail

/// Draws shots_per_setting multinomial outcomes for every setting.
inline TomographyDataset simulate_counts(const DensityMatrix& rho, std::int64_t shots_per_setting, std::uint64_t seed) {
    if (shots_per_setting < 1) {
        throw DomainError("shots_per_setting must be at least 1");
    }
    TomographyDataset data;
    data.n_qubits = rho.reg().size();
    data.shots_per_setting = shots_per_setting;
    data.seed = seed;
    data.labels = rho.reg().labels();
    auto settings = all_settings(data.n_qubits);
    for (std::size_t s = 0; s < settings.size(); ++s) {
        Rng rng = make_rng(seed, s);
        data.settings.push_back({settings[s], detail::multinomial(shots_per_setting, born_probabilities(rho, settings[s]), rng)});
    }
    return data;
}

/// Converts counts to frequencies, merging repeated settings and requiring all 3^n.
inline FrequencyTable to_frequencies(const TomographyDataset& data) {
    data.validate();
    std::map<std::string, std::vector<std::int64_t>> merged;
    for (const auto& s : data.settings) {
        auto& acc = merged[s.setting.key()];
        acc.resize(s.counts.size(), 0);
        for (std::size_t k = 0; k < s.counts.size(); ++k) {
            acc[k] += s.counts[k];
        }
    }
    FrequencyTable t;
    t.n_qubits = data.n_qubits;
    t.settings = all_settings(data.n_qubits);
    std::vector<std::string> missing;
    for (const auto& s : t.settings) {
        auto it = merged.find(s.key());
        std::int64_t total = 0;
        if (it != merged.end()) {
            total = std::accumulate(it->second.begin(), it->second.end(), std::int64_t{0});
        }
        if (total == 0) {
            missing.push_back(s.key());
            continue;
        }
        std::vector<double> f(it->second.size());
        for (std::size_t k = 0; k < f.size(); ++k) {
            f[k] = static_cast<double>(it->second[k]) / static_cast<double>(total);
        }
        t.frequencies.push_back(std::move(f));
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) {
            list += (list.empty() ? "" : ", ") + m;
        }
        throw IncompleteDataError("tomography data has no counts for setting(s) " + list);
    }
    return t;
}

/// Linear inversion rho = 2^-n sum_P <P> P over all 4^n Pauli strings.
///
/// Each <P> averages every setting that measures the non-identity factors of
/// P in the right basis. The result has unit trace but may have negative eigenvalues.
inline Matrix reconstruct_linear(const FrequencyTable& table) {
    const std::size_t n = table.n_qubits;
    if (table.settings.size() != table.frequencies.size()) {
        throw IncompleteDataError("frequency table is inconsistent");
    }
    auto expected = all_settings(n);
    if (table.settings.size() != expected.size()) {
        throw IncompleteDataError("tomography needs all " + std::to_string(expected.size()) + " settings");
    }
    for (std::size_t s = 0; s < expected.size(); ++s) {
        if (!(table.settings[s] == expected[s])) {
            throw IncompleteDataError("settings are missing or out of canonical order");
        }
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    std::size_t n_paulis = std::size_t{1} << (2 * n);
    Matrix rho = Matrix::Zero(dim, dim);
    std::vector<int> p(n);
    for (std::size_t code = 0; code < n_paulis; ++code) {
        for (std::size_t q = 0; q < n; ++q) {
            p[q] = static_cast<int>((code >> (2 * (n - 1 - q))) & 3u);
        }
        double expectation = 0.0;
        if (code == 0) {
            expectation = 1.0;
        } else {
            int used = 0;
            for (std::size_t s = 0; s < expected.size(); ++s) {
                const auto& bases = expected[s].bases;
                bool compatible = true;
                for (std::size_t q = 0; q < n && compatible; ++q) {
                    compatible = p[q] == 0 || static_cast<int>(bases[q]) == detail::basis_for_pauli(p[q]);
                }
                if (!compatible) {
                    continue;
                }
                const auto& f = table.frequencies[s];
                double e = 0.0;
                for (std::size_t k = 0; k < f.size(); ++k) {
                    int parity = 0;
                    for (std::size_t q = 0; q < n; ++q) {
                        if (p[q] != 0) {
                            parity ^= static_cast<int>((k >> (n - 1 - q)) & 1u);
                        }
                    }
                    e += parity ? -f[k] : f[k];
                }
                expectation += e;
                ++used;
            }
            expectation /= used;
        }
        Matrix op = Matrix::Ones(1, 1);
        for (std::size_t q = 0; q < n; ++q) {
            op = kron(op, detail::pauli(p[q]));
        }
        rho += expectation * op;
    }
    return rho / static_cast<double>(dim);
}

inline Matrix reconstruct_linear(const TomographyDataset& data) { return reconstruct_linear(to_frequencies(data)); }

/// Closest density matrix by eigenvalue clipping and redistribution.
///
/// Eigenvalues are sorted in decreasing order; from the smallest upward, any
/// value that would stay negative after receiving its share of the accumulated
/// deficit is set to zero and its mass spread evenly over the larger ones.
/// Eigenvectors are kept.
inline DensityMatrix project_to_physical(const Matrix& estimate, QubitRegister reg) {
    Matrix h = hermitize(estimate);
    double tr = h.trace().real();
    if (!(tr > 0.0)) {
        throw InvalidStateError("cannot project a matrix with nonpositive trace");
    }
    h /= tr;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    // ascending from Eigen; walk from the smallest
    Eigen::VectorXd mu = es.eigenvalues();
    const Eigen::Index d = mu.size();
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(d);
    double deficit = 0.0;
    Eigen::Index remaining = d;
    Eigen::Index i = 0;
    while (i < d && mu(i) + deficit / static_cast<double>(remaining) < 0.0) {
        deficit += mu(i);
        lambda(i) = 0.0;
        ++i;
        --remaining;
    }
    for (Eigen::Index j = i; j < d; ++j) {
        lambda(j) = mu(j) + deficit / static_cast<double>(remaining);
    }
    Matrix rho = es.eigenvectors() * lambda.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    return DensityMatrix(std::move(reg), hermitize(rho));
}

struct ReconstructionResult {
    Matrix rho_linear;
    DensityMatrix rho_physical;
    std::optional<double> fidelity_to_truth;
    double min_linear_eigenvalue;
    double purity;
};

inline ReconstructionResult reconstruct(const TomographyDataset& data) {
    Matrix lin = reconstruct_linear(data);
    DensityMatrix phys = project_to_physical(lin, data.reg());
    double lo = hermitian_eigenvalues(lin).minCoeff();
    return {lin, phys, std::nullopt, lo, qre::purity(phys)};
}

inline constexpr std::size_t kDefaultMaxQubits = 4;

/// Simulate counts from `truth`, reconstruct, and score against `truth`.
inline ReconstructionResult tomography_end_to_end(const DensityMatrix& truth, std::int64_t shots, std::uint64_t seed,
                                                  std::size_t max_qubits = kDefaultMaxQubits) {
    if (truth.reg().size() > max_qubits) {
        throw SizeError("tomography of " + std::to_string(truth.reg().size()) + " qubits exceeds the maximum of " +
                        std::to_string(max_qubits));
    }
    auto result = reconstruct(simulate_counts(truth, shots, seed));
    result.fidelity_to_truth = fidelity(result.rho_physical, truth);
    return result;
}

struct MonteCarloEstimate {
    double mean;
    double std;
    std::vector<double> samples;
};

/// Poisson-resampled error bar on the irreality of X for a measured dataset.
///
/// Each resample replaces every count n by a Poisson(n) draw, reconstructs,
/// projects to a physical state and evaluates the irreality. Samples are
/// seeded per resample, so the result does not depend on `threads`.
inline MonteCarloEstimate monte_carlo_irreality(const TomographyDataset& data, const ObservableSpec& x,
                                                std::size_t n_resamples, std::uint64_t seed, unsigned threads = 1) {
    if (n_resamples < 2) {
        throw DomainError("Monte Carlo needs at least two resamples");
    }
    data.validate();
    QubitRegister reg = data.reg();
    reg.position(x.subsystem());
    std::vector<double> samples(n_resamples);
    parallel_for(n_resamples, threads, [&](std::size_t r) {
        Rng rng = make_rng(seed, r);
        TomographyDataset resampled = data;
        resampled.shots_per_setting = 0;
        for (auto& s : resampled.settings) {
            for (auto& c : s.counts) {
                if (c > 0) {
                    std::poisson_distribution<std::int64_t> draw(static_cast<double>(c));
                    c = draw(rng);
                }
            }
        }
        DensityMatrix rho = project_to_physical(reconstruct_linear(resampled), reg);
        samples[r] = irreality_value(rho, x);
    });
    double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n_resamples);
    double ss = 0.0;
    for (double v : samples) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / static_cast<double>(n_resamples - 1)), std::move(samples)};
}

}  // namespace qre::tomo
