#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "operators.hpp"

namespace chain_eigen {

namespace detail {

// Reduce num modulo 2*den with integer arithmetic before touching floating
// point, so the exact zeros of sin(pi*num/den) (num a multiple of den) come
// out as exactly 0.0 regardless of magnitude.
inline double sin_pi_ratio(long long num, long long den) {
    if (den <= 0) throw domain_error("sin_pi_ratio: denominator must be positive");
    long long m = num % (2 * den);
    if (m < 0) m += 2 * den;
    double sign = 1.0;
    if (m >= den) {
        m -= den;
        sign = -1.0;
    }
    if (m == 0) return 0.0;
    if (2 * m > den) m = den - m; // sin(pi - x) = sin(x)
    if (2 * m == den) return sign;
    return sign * std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(den));
}

// Same reduction for cos(pi*num/den); cos(pi/2) multiples come out as
// exactly 0.0 and supplementary angles negate exactly.
inline double cos_pi_ratio(long long num, long long den) {
    if (den <= 0) throw domain_error("cos_pi_ratio: denominator must be positive");
    long long m = num % (2 * den);
    if (m < 0) m += 2 * den;
    if (m > den) m = 2 * den - m; // cos(2pi - x) = cos(x)
    double sign = 1.0;
    if (2 * m > den) {
        m = den - m; // cos(pi - x) = -cos(x)
        sign = -1.0;
    }
    if (2 * m == den) return 0.0;
    if (m == 0) return sign;
    return sign * std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(den));
}

} // namespace detail

// Mode tuple (g_1, ..., g_M) labeling an eigenstate; admissible tuples are
// strictly increasing within 1..N.
struct ModeTuple {
    std::vector<int> modes;

    auto operator<=>(const ModeTuple&) const = default;
};

inline void validate_mode(const ModeTuple& mode, int n_atoms) {
    if (n_atoms < 1) throw domain_error("validate_mode: n_atoms must be >= 1");
    const auto& g = mode.modes;
    if (static_cast<int>(g.size()) > n_atoms)
        throw domain_error("validate_mode: more modes than atoms");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] < 1 || g[i] > n_atoms)
            throw domain_error("validate_mode: mode " + std::to_string(g[i]) +
                               " outside 1.." + std::to_string(n_atoms));
        if (i > 0 && g[i - 1] >= g[i])
            throw domain_error("validate_mode: modes must be strictly increasing");
    }
}

// All C(N, M) admissible mode tuples in lexicographic order.
inline std::vector<ModeTuple> mode_tuples(int n_atoms, int m,
                                          std::uint64_t cap = default_dimension_cap) {
    std::vector<ExcitationPattern> pats = enumerate_patterns({n_atoms, m}, cap);
    std::vector<ModeTuple> out;
    out.reserve(pats.size());
    for (auto& p : pats) out.push_back(ModeTuple{std::move(p.indices)});
    return out;
}

// Amplitude of pattern (k_1 < ... < k_M) inside the eigenstate labeled by
// (g_1, ..., g_M): det of the M x M matrix with entries
// sin(g_a * k_b * pi / (N + 1)). Defined for arbitrary integer tuples of
// equal length, so boundary and collision cases evaluate to exact zeros.
inline double coefficient(const ModeTuple& mode, const ExcitationPattern& pattern, int n_atoms) {
    if (n_atoms < 1) throw domain_error("coefficient: n_atoms must be >= 1");
    if (mode.modes.size() != pattern.indices.size())
        throw domain_error("coefficient: mode and pattern lengths differ");
    const int m = static_cast<int>(mode.modes.size());
    if (m == 0) return 1.0;
    const long long den = n_atoms + 1;
    DenseMatrix a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a.at(i, j) = detail::sin_pi_ratio(static_cast<long long>(mode.modes[i]) *
                                                  pattern.indices[j],
                                              den);
    return determinant_lu(std::move(a));
}

// Same amplitude as a signed sum over permutations. Exponential cost; used
// to cross-check the determinant path.
inline double coefficient_permutation_sum(const ModeTuple& mode, const ExcitationPattern& pattern,
                                          int n_atoms) {
    if (n_atoms < 1) throw domain_error("coefficient_permutation_sum: n_atoms must be >= 1");
    if (mode.modes.size() != pattern.indices.size())
        throw domain_error("coefficient_permutation_sum: mode and pattern lengths differ");
    const int m = static_cast<int>(mode.modes.size());
    if (m == 0) return 1.0;
    if (m > 8)
        throw resource_error("coefficient_permutation_sum: refusing " + std::to_string(m) +
                             "! permutations");
    const long long den = n_atoms + 1;
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    double sum = 0.0;
    do {
        int inversions = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (perm[i] > perm[j]) ++inversions;
        double term = (inversions % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < m; ++i)
            term *= detail::sin_pi_ratio(
                static_cast<long long>(mode.modes[perm[i]]) * pattern.indices[i], den);
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

// Interaction part of the eigenvalue: 2 * omega * sum_i cos(g_i pi/(N+1)).
inline double energy_shift(const ModeTuple& mode, const ChainConfig& cfg) {
    validate_config(cfg);
    validate_mode(mode, cfg.n_atoms);
    double c = 0.0;
    for (int g : mode.modes) c += detail::cos_pi_ratio(g, cfg.n_atoms + 1);
    return 2.0 * cfg.omega * c;
}

// Total eigenvalue E = M * omega0 + energy_shift, the excitation-counting
// convention (ground state at zero).
inline double energy(const ModeTuple& mode, const ChainConfig& cfg) {
    return static_cast<double>(mode.modes.size()) * cfg.omega0 + energy_shift(mode, cfg);
}

// Eigenstate as an amplitude vector over the lexicographic pattern basis of
// the M-excitation subspace.
struct Eigenstate {
    ModeTuple mode;
    StateVector amplitudes;
    double energy = 0.0;
    bool normalized = true;
};

inline Eigenstate eigenstate(const ModeTuple& mode, const ChainConfig& cfg, bool normalize = true,
                             std::uint64_t cap = default_dimension_cap) {
    validate_config(cfg);
    validate_mode(mode, cfg.n_atoms);
    const int m = static_cast<int>(mode.modes.size());
    const SubspaceAddress addr{cfg.n_atoms, m};
    const std::uint64_t dim = subspace_dimension(addr);
    if (dim > cap)
        throw resource_error("eigenstate: dimension " + std::to_string(dim) + " exceeds cap " +
                             std::to_string(cap));
    Eigenstate st;
    st.mode = mode;
    st.energy = energy(mode, cfg);
    st.normalized = normalize;
    st.amplitudes.resize(dim);
    if (m == 0) {
        st.amplitudes[0] = 1.0;
        return st;
    }
    std::vector<int> idx = first_pattern_indices(m);
    std::uint64_t r = 0;
    do {
        st.amplitudes[r++] = coefficient(mode, ExcitationPattern{idx}, cfg.n_atoms);
    } while (next_pattern_in_place(idx, cfg.n_atoms));
    if (normalize) {
        const double n2 = norm2(st.amplitudes);
        if (n2 == 0.0) throw convergence_error("eigenstate: zero-norm amplitude vector");
        for (double& a : st.amplitudes) a /= n2;
    }
    return st;
}

// (mode, energy) for every admissible tuple at excitation level m, in
// lexicographic mode order.
inline std::vector<std::pair<ModeTuple, double>> full_spectrum(
    const ChainConfig& cfg, int m, std::uint64_t cap = default_dimension_cap) {
    validate_config(cfg);
    const SubspaceAddress addr{cfg.n_atoms, m};
    const std::uint64_t dim = subspace_dimension(addr);
    if (dim > cap)
        throw resource_error("full_spectrum: dimension " + std::to_string(dim) + " exceeds cap " +
                             std::to_string(cap));
    std::vector<std::pair<ModeTuple, double>> out;
    out.reserve(dim);
    for (ModeTuple& mode : mode_tuples(cfg.n_atoms, m, cap)) {
        const double e = energy(mode, cfg);
        out.emplace_back(std::move(mode), e);
    }
    return out;
}

} // namespace chain_eigen
