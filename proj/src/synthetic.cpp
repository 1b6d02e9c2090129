#include "logdet/synthetic.hpp"

#include "logdet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace logdet {

namespace {

// 53 random bits mapped to [0, 1); portable unlike std::uniform_real_distribution.
double unit(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

struct Placed {
    index_t row;
    index_t col;
    std::size_t order;
    double value;
};

} // namespace

SparseMatrix random_sparse_pd(std::size_t d, std::uint64_t seed, std::size_t offdiag_per_row,
                              double diagonal_shift) {
    if (d == 0) throw PreconditionError("dimension must be positive");
    if (offdiag_per_row >= d) throw PreconditionError("offdiag_per_row must be smaller than d");
    std::mt19937_64 engine(seed);

    std::vector<Placed> placed;
    placed.reserve(2 * d * offdiag_per_row);
    std::vector<index_t> picked;
    std::size_t order = 0;
    for (index_t i = 0; i < d; ++i) {
        picked.clear();
        while (picked.size() < offdiag_per_row) {
            auto j = static_cast<index_t>(engine() % (d - 1));
            if (j >= i) ++j;
            if (std::find(picked.begin(), picked.end(), j) != picked.end()) continue;
            picked.push_back(j);
            const double v = 2.0 * unit(engine) - 1.0;
            placed.push_back({i, j, order, v});
            placed.push_back({j, i, order, v});
            ++order;
        }
    }
    std::sort(placed.begin(), placed.end(), [](const Placed& a, const Placed& b) {
        if (a.row != b.row) return a.row < b.row;
        if (a.col != b.col) return a.col < b.col;
        return a.order < b.order;
    });

    TripletBuffer triplets(d, d);
    triplets.reserve(placed.size() + d);
    std::vector<double> abs_row_sum(d, 0.0);
    for (std::size_t k = 0; k < placed.size(); ++k) {
        const bool last_write = k + 1 == placed.size() || placed[k + 1].row != placed[k].row ||
                                placed[k + 1].col != placed[k].col;
        if (!last_write) continue;
        triplets.add(placed[k].row, placed[k].col, placed[k].value);
        abs_row_sum[placed[k].row] += std::abs(placed[k].value);
    }
    for (index_t i = 0; i < d; ++i) triplets.add(i, i, abs_row_sum[i] + diagonal_shift);
    return triplets.finalize();
}

} // namespace logdet
