#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "basis.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "operators.hpp"

namespace chain_eigen {

// Ground-transition dipole element of a single-excitation eigenstate in the
// small-sample model (all atoms couple to the field with equal phase), in
// units of the single-atom matrix element and of the common normalization
// factor.
struct DipoleReport {
    int mode_g1 = 0;
    double amplitude = 0.0;
    bool is_dark = false;
};

inline DipoleReport dipole_to_ground(int g1, int n_atoms) {
    if (n_atoms < 1) throw domain_error("dipole_to_ground: n_atoms must be >= 1");
    if (g1 < 1 || g1 > n_atoms)
        throw domain_error("dipole_to_ground: g1 = " + std::to_string(g1) + " outside 1.." +
                           std::to_string(n_atoms));
    double sum = 0.0;
    for (int k = 1; k <= n_atoms; ++k)
        sum += detail::sin_pi_ratio(static_cast<long long>(g1) * k, n_atoms + 1);
    DipoleReport r;
    r.mode_g1 = g1;
    r.amplitude = sum;
    r.is_dark = std::abs(sum) <= 1e-10 * (n_atoms + 1);
    return r;
}

// Collective lowering sum over all atoms, mapping W^M to W^(M-1): the output
// amplitude at pattern q collects the input amplitude of every superset
// pattern with one extra excitation.
inline ComplexStateVector collective_lowering(const ComplexStateVector& state, int n_atoms,
                                              int m_from,
                                              std::uint64_t cap = default_dimension_cap) {
    if (m_from < 1) throw domain_error("collective_lowering: needs at least one excitation");
    const SubspaceAddress from{n_atoms, m_from};
    const SubspaceAddress to{n_atoms, m_from - 1};
    if (state.size() != subspace_dimension(from))
        throw domain_error("collective_lowering: state length " + std::to_string(state.size()) +
                           " does not match subspace dimension " +
                           std::to_string(subspace_dimension(from)));
    const std::uint64_t out_dim = subspace_dimension(to);
    if (out_dim > cap || state.size() > cap)
        throw resource_error("collective_lowering: dimension exceeds cap");
    ComplexStateVector out(out_dim, std::complex<double>{});
    std::vector<int> idx = first_pattern_indices(m_from);
    std::uint64_t r = 0;
    do {
        if (state[r] != std::complex<double>{}) {
            ExcitationPattern q;
            q.indices.reserve(m_from - 1);
            for (int drop = 0; drop < m_from; ++drop) {
                q.indices.clear();
                for (int i = 0; i < m_from; ++i)
                    if (i != drop) q.indices.push_back(idx[i]);
                out[rank(q, to)] += state[r];
            }
        }
        ++r;
    } while (next_pattern_in_place(idx, n_atoms));
    return out;
}

// Coefficients <psi_g|state> over the normalized analytic eigenstates, in
// lexicographic mode order.
inline std::vector<std::complex<double>> expand_in_eigenbasis(
    const ComplexStateVector& state, const ChainConfig& cfg, int m,
    std::uint64_t cap = default_dimension_cap) {
    validate_config(cfg);
    const std::uint64_t dim = subspace_dimension({cfg.n_atoms, m});
    if (state.size() != dim)
        throw domain_error("expand_in_eigenbasis: state length " + std::to_string(state.size()) +
                           " does not match subspace dimension " + std::to_string(dim));
    if (dim > cap) throw resource_error("expand_in_eigenbasis: dimension exceeds cap");
    std::vector<std::complex<double>> coeffs;
    for (const ModeTuple& mode : mode_tuples(cfg.n_atoms, m, cap)) {
        const Eigenstate st = eigenstate(mode, cfg, true, cap);
        std::complex<double> c{};
        for (std::uint64_t i = 0; i < dim; ++i) c += st.amplitudes[i] * state[i];
        coeffs.push_back(c);
    }
    return coeffs;
}

// Spectral evolution exp(-i H t) within one excitation level, using the
// closed-form eigenbasis. t = 0 returns the input unchanged (the propagator
// is the identity).
inline ComplexStateVector evolve(const ComplexStateVector& state, double t,
                                 const ChainConfig& cfg, int m,
                                 std::uint64_t cap = default_dimension_cap) {
    validate_config(cfg);
    if (!std::isfinite(t)) throw domain_error("evolve: time must be finite");
    const std::uint64_t dim = subspace_dimension({cfg.n_atoms, m});
    if (state.size() != dim)
        throw domain_error("evolve: state length " + std::to_string(state.size()) +
                           " does not match subspace dimension " + std::to_string(dim));
    if (dim > cap) throw resource_error("evolve: dimension exceeds cap");
    if (t == 0.0) return state;
    ComplexStateVector out(dim, std::complex<double>{});
    for (const ModeTuple& mode : mode_tuples(cfg.n_atoms, m, cap)) {
        const Eigenstate st = eigenstate(mode, cfg, true, cap);
        std::complex<double> c{};
        for (std::uint64_t i = 0; i < dim; ++i) c += st.amplitudes[i] * state[i];
        const std::complex<double> phase = c * std::exp(std::complex<double>(0.0, -st.energy * t));
        for (std::uint64_t i = 0; i < dim; ++i) out[i] += phase * st.amplitudes[i];
    }
    return out;
}

} // namespace chain_eigen
