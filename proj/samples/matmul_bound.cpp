// Koszul flattening bounds for two small tensors: T_cw,2 directly (dim A = 3),
// and M_<2> through random restrictions of A to dimension 3.

#include <flatrank/flatrank.hpp>

#include <iostream>

int main() {
    using namespace flatrank;

    const auto flat = koszul_flattening(cw_tensor(2), 1);
    const auto r = rank_exact(flat.matrix());
    std::cout << "T_cw,2: " << flat.rows() << "x" << flat.cols() << " flattening, rank " << r.rank
              << ", border rank >= " << lo_bound(r.rank, 3, 1) << '\n';

    const auto rep = bound_matmul(2, 1, 25, 7);
    std::cout << rep.subject << ": border rank >= " << rep.lo_bound << " (" << rep.notes.front() << ")\n";
}
