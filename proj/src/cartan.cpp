#include "yangian/cartan.hpp"

#include <algorithm>

namespace yangian {

AlgebraData build_algebra_data(int N) {
    AlgebraData d;
    d.a = cartan_matrix<int>(N);
    d.N = N;
    d.g = N;
    const int r = N - 1;
    d.B = d.a.cast<Rational>() / Rational(2);
    // (B^{-1})_{ij} = 2 min(i,j) (N - max(i,j)) / N
    d.Binv.resize(r, r);
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
            d.Binv(i - 1, j - 1) = Rational(2 * std::min(i, j) * (N - std::max(i, j)), N);
    return d;
}

}  // namespace yangian
