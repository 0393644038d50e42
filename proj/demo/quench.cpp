// Quench: start with one excitation on the first atom and watch it walk
// the chain. Prints site populations against time.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>

#include "chain_eigen/chain_eigen.hpp"

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 6;
    const double t_max = argc > 2 ? std::atof(argv[2]) : 8.0;
    if (n < 1 || !(t_max > 0.0)) {
        std::fprintf(stderr, "usage: quench [n_atoms] [t_max]\n");
        return 64;
    }
    const chain_eigen::ChainConfig cfg{n, 0.0, 1.0};
    chain_eigen::ComplexStateVector state(static_cast<std::size_t>(n));
    state[0] = 1.0;

    std::printf("# t");
    for (int site = 1; site <= n; ++site) std::printf("  p%d", site);
    std::printf("\n");
    const int steps = 40;
    for (int s = 0; s <= steps; ++s) {
        const double t = t_max * s / steps;
        const auto now = chain_eigen::evolve(state, t, cfg, 1);
        std::printf("%7.4f", t);
        for (const auto& amp : now) std::printf(" %7.4f", std::norm(amp));
        std::printf("\n");
    }
    return 0;
}
