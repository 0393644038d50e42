#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace chain_eigen {

// Default refusal threshold for enumerating or materializing a subspace.
inline constexpr std::uint64_t default_dimension_cap = std::uint64_t(1) << 26;

// Indices of the excited atoms, 1-based and strictly increasing. The empty
// pattern is the collective ground state.
struct ExcitationPattern {
    std::vector<int> indices;

    auto operator<=>(const ExcitationPattern&) const = default;
};

// One fixed-excitation subspace: M excited atoms out of N.
struct SubspaceAddress {
    int n_atoms = 0;
    int n_excitations = 0;
};

// Exact binomial coefficient; throws resource_error when the value does not
// fit in 64 bits.
inline std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw domain_error("binomial: require 0 <= k <= n");
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // result * (n-k+i) / i == C(n-k+i, i), so the division is exact.
        unsigned __int128 next = static_cast<unsigned __int128>(result) *
                                 static_cast<std::uint64_t>(n - k + i);
        next /= static_cast<unsigned>(i);
        if (next > std::numeric_limits<std::uint64_t>::max())
            throw resource_error("binomial: value exceeds 64-bit range");
        result = static_cast<std::uint64_t>(next);
    }
    return result;
}

inline void validate_address(SubspaceAddress addr) {
    if (addr.n_atoms < 1) throw domain_error("SubspaceAddress: n_atoms must be >= 1");
    if (addr.n_excitations < 0 || addr.n_excitations > addr.n_atoms)
        throw domain_error("SubspaceAddress: require 0 <= n_excitations <= n_atoms");
}

inline std::uint64_t subspace_dimension(SubspaceAddress addr) {
    validate_address(addr);
    return binomial(addr.n_atoms, addr.n_excitations);
}

inline bool is_valid_pattern(const ExcitationPattern& pattern, SubspaceAddress addr) {
    if (static_cast<int>(pattern.indices.size()) != addr.n_excitations) return false;
    int prev = 0;
    for (int k : pattern.indices) {
        if (k <= prev || k > addr.n_atoms) return false;
        prev = k;
    }
    return true;
}

inline void validate_pattern(const ExcitationPattern& pattern, SubspaceAddress addr) {
    validate_address(addr);
    if (!is_valid_pattern(pattern, addr))
        throw domain_error("ExcitationPattern: indices must be strictly increasing in [1, N] "
                           "with length M");
}

// 0-based position of the pattern in lexicographic order of all M-subsets
// of {1, ..., N} (combinatorial number system).
inline std::uint64_t rank(const ExcitationPattern& pattern, SubspaceAddress addr) {
    validate_pattern(pattern, addr);
    const int n = addr.n_atoms;
    const int m = addr.n_excitations;
    std::uint64_t r = 0;
    int prev = 0;
    for (int i = 0; i < m; ++i) {
        for (int v = prev + 1; v < pattern.indices[i]; ++v)
            r += binomial(n - v, m - i - 1);
        prev = pattern.indices[i];
    }
    return r;
}

// Inverse of rank.
inline ExcitationPattern unrank(std::uint64_t index, SubspaceAddress addr) {
    validate_address(addr);
    const int n = addr.n_atoms;
    const int m = addr.n_excitations;
    if (index >= binomial(n, m))
        throw domain_error("unrank: index " + std::to_string(index) + " out of range");
    ExcitationPattern p;
    p.indices.reserve(m);
    int v = 1;
    for (int i = 0; i < m; ++i) {
        for (;;) {
            const std::uint64_t block = binomial(n - v, m - i - 1);
            if (index < block) break;
            index -= block;
            ++v;
        }
        p.indices.push_back(v);
        ++v;
    }
    return p;
}

// Lexicographically first M-subset {1, ..., M}.
inline std::vector<int> first_pattern_indices(int m) {
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i + 1;
    return idx;
}

// Advance to the lexicographic successor; false when already at the last subset.
inline bool next_pattern_in_place(std::vector<int>& idx, int n_atoms) {
    const int m = static_cast<int>(idx.size());
    for (int i = m - 1; i >= 0; --i) {
        if (idx[i] < n_atoms - (m - 1 - i)) {
            ++idx[i];
            for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Moves the excitation in the given slot (1-based) one site left or right.
// Empty result when the move falls off either chain end or collides with
// another excitation; those are the only invalid cases.
inline std::optional<ExcitationPattern> apply_hop(const ExcitationPattern& pattern, int slot,
                                                  int direction, SubspaceAddress addr) {
    validate_pattern(pattern, addr);
    const int m = addr.n_excitations;
    if (slot < 1 || slot > m) throw domain_error("apply_hop: slot out of range");
    if (direction != 1 && direction != -1)
        throw domain_error("apply_hop: direction must be +1 or -1");
    const int moved = pattern.indices[slot - 1] + direction;
    if (moved == 0) return std::nullopt;                 // (a) left of the chain
    if (moved == addr.n_atoms + 1) return std::nullopt;  // (b) right of the chain
    for (int i = 0; i < m; ++i)
        if (i != slot - 1 && pattern.indices[i] == moved) return std::nullopt; // (c) collision
    ExcitationPattern out = pattern;
    out.indices[slot - 1] = moved;
    std::sort(out.indices.begin(), out.indices.end());
    return out;
}

// All patterns of the subspace in lexicographic order; element i equals unrank(i).
inline std::vector<ExcitationPattern> enumerate_patterns(SubspaceAddress addr,
                                                         std::uint64_t cap = default_dimension_cap) {
    const std::uint64_t dim = subspace_dimension(addr);
    if (dim > cap)
        throw resource_error("enumerate_patterns: dimension " + std::to_string(dim) +
                             " exceeds cap " + std::to_string(cap));
    std::vector<ExcitationPattern> out;
    out.reserve(dim);
    std::vector<int> idx = first_pattern_indices(addr.n_excitations);
    do {
        out.push_back(ExcitationPattern{idx});
    } while (next_pattern_in_place(idx, addr.n_atoms));
    return out;
}

} // namespace chain_eigen
