// Draws a random rank-2 bundle over Q(i), prints its minima and the dual's, and checks the
// transference sandwich at every index.
#include <cstdio>

#include "hermlat/hermlat.hpp"

int main() {
    using namespace hermlat;
    const auto F = number_field::build({1, 0, 1});
    gaussian_source rng(2024);
    const auto E = random_bundle(F, 2, rng);

    transference_context ctx(E);
    const auto& mu = ctx.mu();
    const auto& mu_star = ctx.mu_dual();
    for (std::size_t k = 0; k < mu.values.size(); ++k)
        std::printf("mu_%zu(E) = % .6Lf   mu_%zu(E*) = % .6Lf\n", k + 1, mu.values[k], k + 1, mu_star.values[k]);

    std::printf("C(2, Q(i)) = %.6Lf\n", constant_C(2, F));
    for (int k = 1; k <= E.rank(); ++k) {
        const auto rep = check_transference(ctx, k);
        std::printf("k=%d  %.6Lf <= %.6Lf <= %.6Lf  %s\n", k, rep.links[0].lhs, rep.links[0].rhs, rep.links[1].rhs,
                    to_string(rep.outcome).c_str());
    }
}
