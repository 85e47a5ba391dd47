#pragma once

#include <Eigen/Core>

#include "yangian/errors.hpp"
#include "yangian/rational.hpp"

namespace yangian {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalMatrix = Matrix<Rational>;

// Cartan data of type A_{N-1}. Indices in the accessors are 1-based, as in
// the formulas; the matrices themselves are 0-based.
struct AlgebraData {
    int N = 0;
    Eigen::MatrixXi a;
    RationalMatrix B;     // a/2
    RationalMatrix Binv;  // B^{-1}
    int g = 0;            // dual Coxeter number

    int rank() const { return N - 1; }
    const Rational& b(int i, int j) const { return B(i - 1, j - 1); }
    const Rational& binv(int i, int j) const { return Binv(i - 1, j - 1); }
};

AlgebraData build_algebra_data(int N);

template <typename Scalar>
Matrix<Scalar> cartan_matrix(int N) {
    if (N < 2) throw InvalidRank("rank must satisfy N >= 2, got N=" + std::to_string(N));
    const int r = N - 1;
    Matrix<Scalar> a = Matrix<Scalar>::Constant(r, r, Scalar(0));
    for (int i = 0; i < r; ++i) {
        a(i, i) = Scalar(2);
        if (i + 1 < r) a(i, i + 1) = a(i + 1, i) = Scalar(-1);
    }
    return a;
}

// Gauss-Jordan inverse over an exact field. Throws on a singular input.
template <typename Scalar>
Matrix<Scalar> exact_inverse(const Matrix<Scalar>& m) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw Error("exact_inverse: matrix not square");
    Matrix<Scalar> w = m;
    Matrix<Scalar> inv = Matrix<Scalar>::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        while (p < n && w(p, c) == Scalar(0)) ++p;
        if (p == n) throw Error("exact_inverse: singular matrix");
        w.row(p).swap(w.row(c));
        inv.row(p).swap(inv.row(c));
        Scalar piv = w(c, c);
        w.row(c) /= piv;
        inv.row(c) /= piv;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c || w(r, c) == Scalar(0)) continue;
            Scalar f = w(r, c);
            w.row(r) -= f * w.row(c);
            inv.row(r) -= f * inv.row(c);
        }
    }
    return inv;
}

}  // namespace yangian
