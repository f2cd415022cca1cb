// Builds the restricted first Koszul flattening of T_cw,q^2 and its split
// into the predecessor and difference parts, then prints their ranks.

#include <flatrank/flatrank.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    using namespace flatrank;
    const std::uint32_t q = argc > 1 ? static_cast<std::uint32_t>(std::atoi(argv[1])) : 5;

    const auto full = restricted_flattening(q, 2, Variant::Tq);
    const auto prev = restricted_flattening(q, 2, Variant::TqMinus1);
    const auto diff = restricted_flattening(q, 2, Variant::Sq);

    const auto r_full = rank_mod_p(full.matrix()).rank;
    const auto r_prev = rank_mod_p(prev.matrix()).rank;
    const auto r_diff = rank_mod_p(diff.matrix()).rank;

    std::cout << "q = " << q << ", matrix " << full.rows() << " x " << full.cols() << '\n'
              << "rank(T_q)     = " << r_full << "  (2(q+2)^2 = " << 2 * (q + 2) * (q + 2) << ")\n"
              << "rank(T_{q-1}) = " << r_prev << '\n'
              << "rank(S_q)     = " << r_diff << "  (2(2q+3) = " << 2 * (2 * q + 3) << ")\n"
              << "border rank  >= " << lo_bound(r_full, 3, 1) << '\n';
}
