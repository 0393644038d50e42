#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "numerics.hpp"

namespace chain_eigen {

// Chain parameters in units with hbar = 1. omega is the nearest-neighbor
// excitation-exchange coupling; its sign depends on the dipole orientation,
// so negative values are allowed.
struct ChainConfig {
    int n_atoms = 1;
    double omega0 = 0.0;
    double omega = 1.0;
};

inline void validate_config(const ChainConfig& cfg) {
    if (cfg.n_atoms < 1) throw domain_error("ChainConfig: n_atoms must be >= 1");
    if (!std::isfinite(cfg.omega0) || !std::isfinite(cfg.omega))
        throw domain_error("ChainConfig: omega0 and omega must be finite");
}

// Full-space builders refuse chains longer than this by default (2^N states).
inline constexpr int default_full_space_atom_cap = 14;

struct SparseEntry {
    std::int64_t row = 0;
    std::int64_t col = 0;
    double value = 0.0;
};

// Real symmetric operator in coordinate form. Entries are sorted by
// (row, col), contain no duplicates, and exact zeros are dropped at build
// time.
struct SparseOperator {
    std::int64_t dim = 0;
    std::vector<SparseEntry> entries;
};

namespace detail {

inline void canonicalize(SparseOperator& op) {
    std::sort(op.entries.begin(), op.entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t i = 0; i < op.entries.size(); ++i) {
        const auto& e = op.entries[i];
        if (e.row < 0 || e.row >= op.dim || e.col < 0 || e.col >= op.dim)
            throw std::logic_error("SparseOperator: entry index out of range");
        if (i > 0 && e.row == op.entries[i - 1].row && e.col == op.entries[i - 1].col)
            throw std::logic_error("SparseOperator: duplicate entry");
    }
}

} // namespace detail

// Interaction operator V restricted to the M-excitation subspace, in the
// lexicographic pattern basis: entry (rank(p'), rank(p)) = omega for every
// valid hop p -> p'.
inline SparseOperator build_subspace_V(const ChainConfig& cfg, int m,
                                       std::uint64_t cap = default_dimension_cap) {
    validate_config(cfg);
    const SubspaceAddress addr{cfg.n_atoms, m};
    const std::uint64_t dim = subspace_dimension(addr);
    if (dim > cap)
        throw resource_error("build_subspace_V: dimension " + std::to_string(dim) +
                             " exceeds cap " + std::to_string(cap));
    SparseOperator op;
    op.dim = static_cast<std::int64_t>(dim);
    if (m == 0) return op;

    std::vector<int> idx = first_pattern_indices(m);
    std::uint64_t r = 0;
    do {
        const ExcitationPattern p{idx};
        for (int slot = 1; slot <= m; ++slot) {
            for (int dir : {-1, +1}) {
                if (auto hopped = apply_hop(p, slot, dir, addr); hopped && cfg.omega != 0.0) {
                    op.entries.push_back({static_cast<std::int64_t>(rank(*hopped, addr)),
                                          static_cast<std::int64_t>(r), cfg.omega});
                }
            }
        }
        ++r;
    } while (next_pattern_in_place(idx, cfg.n_atoms));
    detail::canonicalize(op);
    return op;
}

// Free Hamiltonian H0 on the full 2^N space over the bitmask basis
// (bit i set = atom i+1 excited). Diagonal entry for a mask with m set bits
// is omega0 * (m - N/2), the S^z eigenvalue convention with eigenvalues
// +-1/2.
inline SparseOperator build_full_H0(const ChainConfig& cfg,
                                    int atom_cap = default_full_space_atom_cap) {
    validate_config(cfg);
    if (cfg.n_atoms > atom_cap)
        throw resource_error("build_full_H0: " + std::to_string(cfg.n_atoms) +
                             " atoms exceeds full-space cap " + std::to_string(atom_cap));
    const int n = cfg.n_atoms;
    SparseOperator op;
    op.dim = std::int64_t(1) << n;
    for (std::int64_t mask = 0; mask < op.dim; ++mask) {
        const int m = std::popcount(static_cast<std::uint64_t>(mask));
        const double value = cfg.omega0 * (m - 0.5 * n);
        if (value != 0.0) op.entries.push_back({mask, mask, value});
    }
    detail::canonicalize(op);
    return op;
}

// Interaction V on the full 2^N space: coupling omega between masks that
// differ by moving one set bit to an adjacent position.
inline SparseOperator build_full_V(const ChainConfig& cfg,
                                   int atom_cap = default_full_space_atom_cap) {
    validate_config(cfg);
    if (cfg.n_atoms > atom_cap)
        throw resource_error("build_full_V: " + std::to_string(cfg.n_atoms) +
                             " atoms exceeds full-space cap " + std::to_string(atom_cap));
    const int n = cfg.n_atoms;
    SparseOperator op;
    op.dim = std::int64_t(1) << n;
    if (cfg.omega != 0.0) {
        for (std::int64_t mask = 0; mask < op.dim; ++mask) {
            for (int bond = 0; bond + 1 < n; ++bond) {
                const std::int64_t pair = std::int64_t(3) << bond;
                const std::int64_t bits = mask & pair;
                if (bits == 0 || bits == pair) continue; // bond needs exactly one excitation
                op.entries.push_back({mask ^ pair, mask, cfg.omega});
            }
        }
    }
    detail::canonicalize(op);
    return op;
}

// H = H0 + V on the full 2^N space.
inline SparseOperator build_full_H(const ChainConfig& cfg,
                                   int atom_cap = default_full_space_atom_cap) {
    SparseOperator h0 = build_full_H0(cfg, atom_cap);
    SparseOperator v = build_full_V(cfg, atom_cap);
    // H0 is diagonal and V strictly off-diagonal, so entries never collide.
    h0.entries.insert(h0.entries.end(), v.entries.begin(), v.entries.end());
    detail::canonicalize(h0);
    return h0;
}

template <class Scalar>
std::vector<Scalar> matvec(const SparseOperator& op, const std::vector<Scalar>& v) {
    if (static_cast<std::int64_t>(v.size()) != op.dim)
        throw domain_error("matvec: vector length " + std::to_string(v.size()) +
                           " does not match operator dimension " + std::to_string(op.dim));
    std::vector<Scalar> out(v.size(), Scalar{});
    for (const auto& e : op.entries) out[e.row] += e.value * v[e.col];
    return out;
}

// {"dim": D, "entries": [[r, c, v], ...]} with entries in (row, col) order
// and values in shortest round-trip decimal.
inline std::string serialize_json(const SparseOperator& op) {
    std::string s = "{\"dim\":" + std::to_string(op.dim) + ",\"entries\":[";
    bool first = true;
    for (const auto& e : op.entries) {
        if (!first) s += ',';
        first = false;
        s += '[' + std::to_string(e.row) + ',' + std::to_string(e.col) + ',' +
             format_double(e.value) + ']';
    }
    s += "]}";
    return s;
}

} // namespace chain_eigen
