#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "basis.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "numerics.hpp"
#include "operators.hpp"

namespace chain_eigen {

struct VerificationReport {
    std::string check_name;
    int n_atoms = 0;
    int n_excitations = -1; // -1 = whole-space check
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<std::pair<std::string, double>> details;
};

inline VerificationReport make_report(std::string check_name, int n_atoms, int n_excitations,
                                      double max_deviation, double tolerance,
                                      std::vector<std::pair<std::string, double>> details = {}) {
    VerificationReport r;
    r.check_name = std::move(check_name);
    r.n_atoms = n_atoms;
    r.n_excitations = n_excitations;
    r.max_deviation = max_deviation;
    r.tolerance = tolerance;
    r.passed = max_deviation <= tolerance;
    r.details = std::move(details);
    return r;
}

inline DenseMatrix to_dense(const SparseOperator& op, int max_dim = default_dense_cap) {
    if (op.dim > max_dim)
        throw resource_error("to_dense: dimension " + std::to_string(op.dim) +
                             " exceeds dense cap " + std::to_string(max_dim));
    const int n = static_cast<int>(op.dim);
    DenseMatrix a(n, n);
    for (const auto& e : op.entries)
        a.at(static_cast<int>(e.row), static_cast<int>(e.col)) = e.value;
    return a;
}

namespace detail {

// Subspace block of H in the reported energy convention: V plus M*omega0 on
// the diagonal.
inline DenseMatrix dense_subspace_H(const ChainConfig& cfg, int m,
                                    std::uint64_t cap = default_dimension_cap,
                                    int dense_cap = default_dense_cap) {
    DenseMatrix h = to_dense(build_subspace_V(cfg, m, cap), dense_cap);
    const double diag = m * cfg.omega0;
    for (int i = 0; i < h.n_rows; ++i) h.at(i, i) += diag;
    return h;
}

inline double max_abs(const StateVector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Degeneracy grouping by sorted-gap clustering: values must be sorted
// ascending; returns [begin, end) index ranges.
inline std::vector<std::pair<int, int>> cluster_sorted(const std::vector<double>& sorted,
                                                       double gap_tol) {
    std::vector<std::pair<int, int>> groups;
    const int n = static_cast<int>(sorted.size());
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || sorted[i] - sorted[i - 1] > gap_tol) {
            groups.emplace_back(begin, i);
            begin = i;
        }
    }
    return groups;
}

inline double degeneracy_gap_tol(const ChainConfig& cfg) {
    return 1e-9 * std::max(1.0, std::abs(cfg.omega));
}

} // namespace detail

// Relative eigen-residual ||V psi - dE psi|| / ||psi|| of one analytic state
// against the independently built sparse V.
inline double residual(const ModeTuple& mode, const ChainConfig& cfg,
                       std::uint64_t cap = default_dimension_cap) {
    const int m = static_cast<int>(mode.modes.size());
    const SparseOperator v = build_subspace_V(cfg, m, cap);
    const Eigenstate st = eigenstate(mode, cfg, false, cap);
    const StateVector vpsi = matvec(v, st.amplitudes);
    const double de = energy_shift(mode, cfg);
    double acc = 0.0;
    for (std::size_t i = 0; i < vpsi.size(); ++i) {
        const double d = vpsi[i] - de * st.amplitudes[i];
        acc += d * d;
    }
    const double n = norm2(st.amplitudes);
    if (n == 0.0) throw convergence_error("residual: zero-norm state");
    return std::sqrt(acc) / n;
}

// Worst residual over every mode tuple at one excitation level.
inline VerificationReport residual_sweep(const ChainConfig& cfg, int m, double tol = 1e-10,
                                         std::uint64_t cap = default_dimension_cap) {
    validate_config(cfg);
    const SparseOperator v = build_subspace_V(cfg, m, cap);
    double op_norm1 = 0.0; // max column sum, columns have equal weight here
    {
        std::vector<double> col(static_cast<std::size_t>(v.dim), 0.0);
        for (const auto& e : v.entries) col[e.col] += std::abs(e.value);
        for (double c : col) op_norm1 = std::max(op_norm1, c);
    }
    double worst = 0.0;
    for (const ModeTuple& mode : mode_tuples(cfg.n_atoms, m, cap)) {
        const Eigenstate st = eigenstate(mode, cfg, false, cap);
        const StateVector vpsi = matvec(v, st.amplitudes);
        const double de = energy_shift(mode, cfg);
        double acc = 0.0;
        for (std::size_t i = 0; i < vpsi.size(); ++i) {
            const double d = vpsi[i] - de * st.amplitudes[i];
            acc += d * d;
        }
        worst = std::max(worst, std::sqrt(acc) / norm2(st.amplitudes));
    }
    return make_report("residual_sweep", cfg.n_atoms, m, worst, tol,
                       {{"operator_1_norm", op_norm1}});
}

// Maximum violation of the three-term recurrence dE*C(k) = sum_j
// [C(..,k_j+1,..) + C(..,k_j-1,..)] over every basis coefficient of one
// eigenstate, in Omega = 1 units. Out-of-range and duplicate shifted tuples
// are fed straight to the sine formula, which makes them vanish.
inline double recurrence_check(const ModeTuple& mode, int n_atoms,
                               std::uint64_t cap = default_dimension_cap) {
    validate_mode(mode, n_atoms);
    const int m = static_cast<int>(mode.modes.size());
    if (m == 0) return 0.0;
    const std::uint64_t dim = subspace_dimension({n_atoms, m});
    if (dim > cap)
        throw resource_error("recurrence_check: dimension " + std::to_string(dim) +
                             " exceeds cap " + std::to_string(cap));
    double de = 0.0;
    for (int g : mode.modes) de += 2.0 * detail::cos_pi_ratio(g, n_atoms + 1);
    double worst = 0.0;
    std::vector<int> idx = first_pattern_indices(m);
    do {
        const double c = coefficient(mode, ExcitationPattern{idx}, n_atoms);
        double sum = 0.0;
        for (int j = 0; j < m; ++j) {
            for (int step : {-1, +1}) {
                ExcitationPattern shifted{idx};
                shifted.indices[j] += step;
                sum += coefficient(mode, shifted, n_atoms);
            }
        }
        worst = std::max(worst, std::abs(de * c - sum));
    } while (next_pattern_in_place(idx, n_atoms));
    return worst;
}

inline VerificationReport recurrence_sweep(int n_atoms, int m, double tol = 1e-10,
                                           std::uint64_t cap = default_dimension_cap) {
    double worst = 0.0;
    for (const ModeTuple& mode : mode_tuples(n_atoms, m, cap))
        worst = std::max(worst, recurrence_check(mode, n_atoms, cap));
    return make_report("recurrence", n_atoms, m, worst, tol);
}

// Max-norm of (H0 V - V H0) applied to every full-space basis vector.
inline double commutator_residual(const ChainConfig& cfg,
                                  int atom_cap = default_full_space_atom_cap) {
    const SparseOperator h0 = build_full_H0(cfg, atom_cap);
    const SparseOperator v = build_full_V(cfg, atom_cap);
    const std::size_t dim = static_cast<std::size_t>(h0.dim);
    double worst = 0.0;
    StateVector e(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        e[j] = 1.0;
        const StateVector a = matvec(h0, matvec(v, e));
        const StateVector b = matvec(v, matvec(h0, e));
        for (std::size_t i = 0; i < dim; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
        e[j] = 0.0;
    }
    return worst;
}

inline VerificationReport commutator_report(const ChainConfig& cfg, double tol = 1e-12,
                                            int atom_cap = default_full_space_atom_cap) {
    const double dev = commutator_residual(cfg, atom_cap);
    return make_report("commutator", cfg.n_atoms, -1, dev, tol);
}

// Gram matrix of all normalized analytic states at one level against the
// identity.
inline VerificationReport orthonormality(const ChainConfig& cfg, int m, double tol = 1e-10,
                                         std::uint64_t cap = default_dimension_cap) {
    validate_config(cfg);
    std::vector<StateVector> states;
    for (const ModeTuple& mode : mode_tuples(cfg.n_atoms, m, cap))
        states.push_back(eigenstate(mode, cfg, true, cap).amplitudes);
    const DenseMatrix g = gram_matrix(states);
    double worst = 0.0;
    for (int i = 0; i < g.n_rows; ++i)
        for (int j = 0; j < g.n_cols; ++j)
            worst = std::max(worst, std::abs(g.at(i, j) - (i == j ? 1.0 : 0.0)));
    return make_report("orthonormality", cfg.n_atoms, m, worst, tol,
                       {{"n_states", static_cast<double>(states.size())}});
}

// Sorted analytic energies against Jacobi eigenvalues of the independently
// built subspace block.
inline VerificationReport spectrum_match(const ChainConfig& cfg, int m, double tol = 1e-9,
                                         std::uint64_t cap = default_dimension_cap,
                                         int dense_cap = default_dense_cap) {
    validate_config(cfg);
    const DenseMatrix h = detail::dense_subspace_H(cfg, m, cap, dense_cap);
    const EigenDecomposition eig = jacobi_eigh(h);
    std::vector<double> analytic;
    for (const auto& [mode, e] : full_spectrum(cfg, m, cap)) analytic.push_back(e);
    std::sort(analytic.begin(), analytic.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i)
        worst = std::max(worst, std::abs(analytic[i] - eig.eigenvalues[i]));
    return make_report("spectrum_match", cfg.n_atoms, m, worst, tol,
                       {{"n_states", static_cast<double>(analytic.size())}});
}

// Projector comparison per degenerate energy group: sum of v v^T over the
// group from the Jacobi oracle against the same-index-range sum over
// energy-sorted analytic states. Robust to eigenvector rotation inside a
// degenerate eigenspace, which vector-by-vector comparison is not.
inline VerificationReport eigenspace_projector_match(const ChainConfig& cfg, int m,
                                                     double tol = 1e-8,
                                                     std::uint64_t cap = default_dimension_cap,
                                                     int dense_cap = default_dense_cap) {
    validate_config(cfg);
    const DenseMatrix h = detail::dense_subspace_H(cfg, m, cap, dense_cap);
    const EigenDecomposition eig = jacobi_eigh(h);
    const int dim = h.n_rows;

    std::vector<Eigenstate> states;
    for (const ModeTuple& mode : mode_tuples(cfg.n_atoms, m, cap))
        states.push_back(eigenstate(mode, cfg, true, cap));
    std::stable_sort(states.begin(), states.end(),
                     [](const Eigenstate& a, const Eigenstate& b) { return a.energy < b.energy; });

    const auto groups = detail::cluster_sorted(eig.eigenvalues, detail::degeneracy_gap_tol(cfg));
    double worst = 0.0;
    DenseMatrix diff(dim, dim);
    for (const auto& [begin, end] : groups) {
        std::fill(diff.values.begin(), diff.values.end(), 0.0);
        for (int s = begin; s < end; ++s) {
            const StateVector& u = states[s].amplitudes;
            for (int i = 0; i < dim; ++i) {
                const double oi = eig.eigenvectors.at(i, s);
                const double ai = u[i];
                for (int j = 0; j < dim; ++j)
                    diff.at(i, j) += oi * eig.eigenvectors.at(j, s) - ai * u[j];
            }
        }
        worst = std::max(worst, frobenius_norm(diff));
    }
    return make_report("projector_match", cfg.n_atoms, m, worst, tol,
                       {{"n_groups", static_cast<double>(groups.size())}});
}

// Level counts against binomial(N, M), completeness of the total count, and
// the energy-degeneracy group sizes per level.
inline VerificationReport degeneracy_census(const ChainConfig& cfg,
                                            std::uint64_t cap = default_dimension_cap) {
    validate_config(cfg);
    const int n = cfg.n_atoms;
    std::vector<std::pair<std::string, double>> details;
    double worst = 0.0;
    std::uint64_t total = 0;
    const double gap_tol = detail::degeneracy_gap_tol(cfg);
    for (int m = 0; m <= n; ++m) {
        const auto spec = full_spectrum(cfg, m, cap);
        const std::uint64_t expected = binomial(n, m);
        total += spec.size();
        worst = std::max(worst, std::abs(static_cast<double>(spec.size()) -
                                         static_cast<double>(expected)));
        std::vector<double> energies;
        for (const auto& [mode, e] : spec) energies.push_back(e);
        std::sort(energies.begin(), energies.end());
        const auto groups = detail::cluster_sorted(energies, gap_tol);
        int largest = 0;
        for (const auto& [b, e] : groups) largest = std::max(largest, e - b);
        const std::string lvl = "M=" + std::to_string(m);
        details.emplace_back("count[" + lvl + "]", static_cast<double>(spec.size()));
        details.emplace_back("groups[" + lvl + "]", static_cast<double>(groups.size()));
        details.emplace_back("max_degeneracy[" + lvl + "]", static_cast<double>(largest));
    }
    const std::uint64_t full = std::uint64_t(1) << n;
    worst = std::max(worst,
                     std::abs(static_cast<double>(total) - static_cast<double>(full)));
    details.emplace_back("total", static_cast<double>(total));
    return make_report("degeneracy_census", n, -1, worst, 0.0, std::move(details));
}

// {"check":…, "N":…, "M":…, "max_deviation":…, "tolerance":…, "passed":…,
// "details":[[label, value],…]} on one line. M is null for whole-space
// checks.
inline std::string serialize_json(const VerificationReport& r) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::string s = "{\"check\":" + quote(r.check_name) + ",\"N\":" + std::to_string(r.n_atoms) +
                    ",\"M\":" + (r.n_excitations < 0 ? "null" : std::to_string(r.n_excitations)) +
                    ",\"max_deviation\":" + format_double(r.max_deviation) +
                    ",\"tolerance\":" + format_double(r.tolerance) +
                    ",\"passed\":" + (r.passed ? "true" : "false") + ",\"details\":[";
    bool first = true;
    for (const auto& [label, value] : r.details) {
        if (!first) s += ',';
        first = false;
        s += '[' + quote(label) + ',' + format_double(value) + ']';
    }
    s += "]}";
    return s;
}

} // namespace chain_eigen
