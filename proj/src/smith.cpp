#include "flipk/smith.hpp"

#include <stdexcept>

namespace flipk {

namespace {

// smallest |entry| != 0 in M[t.., t..], earliest row-major on ties
bool find_pivot(const IntMatrix& M, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < M.rows(); ++i)
        for (std::size_t j = t; j < M.cols(); ++j) {
            if (M(i, j) == 0) continue;
            Int mag = abs(M(i, j));
            if (!found || mag < best) {
                found = true;
                best = mag;
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace

std::size_t SmithForm::rank() const {
    std::size_t r = 0;
    std::size_t n = std::min(D.rows(), D.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (D(i, i) != 0) ++r;
    return r;
}

IntVec SmithForm::diagonal() const {
    std::size_t n = std::min(D.rows(), D.cols());
    IntVec d;
    d.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (D(i, i) != 0) d.push_back(D(i, i));
    return d;
}

SmithForm smith_normal_form(const IntMatrix& M) {
    SmithForm s;
    s.D = M;
    s.U = IntMatrix::identity(M.rows());
    s.Uinv = IntMatrix::identity(M.rows());
    s.V = IntMatrix::identity(M.cols());
    s.Vinv = IntMatrix::identity(M.cols());
    IntMatrix& D = s.D;

    auto row_add = [&](std::size_t dst, std::size_t src, const Int& q) {
        D.add_row_multiple(dst, src, q);
        s.U.add_row_multiple(dst, src, q);
        s.Uinv.add_col_multiple(src, dst, -q); // right-multiply by inverse op
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Int& q) {
        D.add_col_multiple(dst, src, q);
        s.V.add_col_multiple(dst, src, q);
        s.Vinv.add_row_multiple(src, dst, -q);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        D.swap_rows(i, j);
        s.U.swap_rows(i, j);
        s.Uinv.swap_cols(i, j);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        D.swap_cols(i, j);
        s.V.swap_cols(i, j);
        s.Vinv.swap_rows(i, j);
    };
    auto row_negate = [&](std::size_t i) {
        D.negate_row(i);
        s.U.negate_row(i);
        s.Uinv.negate_col(i);
    };

    std::size_t n = std::min(M.rows(), M.cols());
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            std::size_t pi, pj;
            if (!find_pivot(D, t, pi, pj)) { t = n; break; } // all remaining zero
            row_swap(t, pi);
            col_swap(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < D.rows(); ++i) {
                if (D(i, t) == 0) continue;
                Int q = D(i, t) / D(t, t); // truncating: remainder smaller than pivot
                row_add(i, t, -q);
                if (D(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < D.cols(); ++j) {
                if (D(t, j) == 0) continue;
                Int q = D(t, j) / D(t, t);
                col_add(j, t, -q);
                if (D(t, j) != 0) dirty = true;
            }
            if (dirty) continue; // a smaller-magnitude entry appeared; re-pick pivot

            // enforce the divisibility chain: fold in any later entry the pivot misses
            bool fixed = true;
            for (std::size_t i = t + 1; i < D.rows() && fixed; ++i)
                for (std::size_t j = t + 1; j < D.cols() && fixed; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_add(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (t >= n) break;
        if (D(t, t) < 0) row_negate(t);
    }
    return s;
}

IntMatrix hnf_cols(const IntMatrix& A) {
    IntMatrix H = A;
    std::size_t c = 0;
    for (std::size_t r = 0; r < H.rows() && c < H.cols(); ++r) {
        while (true) {
            // minimal-magnitude nonzero in row r among columns >= c
            std::size_t pj = 0;
            bool found = false;
            Int best;
            for (std::size_t j = c; j < H.cols(); ++j) {
                if (H(r, j) == 0) continue;
                Int mag = abs(H(r, j));
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pj = j;
                }
            }
            if (!found) break;
            H.swap_cols(c, pj);
            bool clean = true;
            for (std::size_t j = c + 1; j < H.cols(); ++j) {
                if (H(r, j) == 0) continue;
                Int q = H(r, j) / H(r, c);
                H.add_col_multiple(j, c, -q);
                if (H(r, j) != 0) clean = false;
            }
            if (clean) {
                if (H(r, c) < 0) H.negate_col(c);
                ++c;
                break;
            }
        }
    }
    // first c columns span the lattice; the rest are zero
    std::vector<std::size_t> rows(H.rows()), cols(c);
    for (std::size_t i = 0; i < H.rows(); ++i) rows[i] = i;
    for (std::size_t j = 0; j < c; ++j) cols[j] = j;
    return H.submatrix(rows, cols);
}

IntMatrix kernel_cols(const IntMatrix& A) {
    SmithForm s = smith_normal_form(A);
    std::size_t diag = std::min(A.rows(), A.cols());
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < A.cols(); ++j)
        if (j >= diag || s.D(j, j) == 0) free_cols.push_back(j);
    std::vector<std::size_t> rows(A.cols());
    for (std::size_t i = 0; i < A.cols(); ++i) rows[i] = i;
    return s.V.submatrix(rows, free_cols);
}

std::optional<IntVec> solve_cols(const SmithForm& s, const IntVec& b) {
    std::size_t rows = s.U.rows(), cols = s.V.rows();
    IntVec z = s.U.mul_vec(b);
    IntVec y(cols);
    std::size_t diag = std::min(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (i < diag && s.D(i, i) != 0) {
            if (z[i] % s.D(i, i) != 0) return std::nullopt;
            y[i] = z[i] / s.D(i, i);
        } else if (z[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.mul_vec(y);
}

std::optional<IntVec> solve_cols(const IntMatrix& A, const IntVec& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("solve_cols: dimension mismatch");
    return solve_cols(smith_normal_form(A), b);
}

bool in_lattice(const IntMatrix& L, const IntVec& v) {
    return solve_cols(L, v).has_value();
}

std::optional<IntVec> solve_mod(const IntMatrix& A, const IntVec& b, const IntMatrix& L) {
    if (A.rows() != L.rows()) throw std::invalid_argument("solve_mod: dimension mismatch");
    auto full = solve_cols(A.hstack(L), b);
    if (!full) return std::nullopt;
    return IntVec(full->begin(), full->begin() + A.cols());
}

IntMatrix preimage_lattice(const IntMatrix& A, const IntMatrix& L) {
    if (A.rows() != L.rows()) throw std::invalid_argument("preimage_lattice: dimension mismatch");
    IntMatrix K = kernel_cols(A.hstack(L));
    std::vector<std::size_t> rows(A.cols()), cols(K.cols());
    for (std::size_t i = 0; i < A.cols(); ++i) rows[i] = i;
    for (std::size_t j = 0; j < K.cols(); ++j) cols[j] = j;
    return hnf_cols(K.submatrix(rows, cols));
}

} // namespace flipk
