#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

namespace flipk {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

// dense matrix over exact integers; rows/cols may be zero
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const;
    IntMatrix transposed() const;
    IntMatrix mul(const IntMatrix& o) const;
    IntVec mul_vec(const IntVec& x) const;
    IntMatrix hstack(const IntMatrix& o) const; // [this | o]
    IntMatrix vstack(const IntMatrix& o) const; // [this; o]
    IntMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    IntVec col(std::size_t c) const;
    void set_col(std::size_t c, const IntVec& v);

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& q);  // row_dst += q*row_src
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& q);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    std::string to_string() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// Kronecker product with row-major pair indexing: (i,k) -> i*B.rows()+k
IntMatrix kron(const IntMatrix& A, const IntMatrix& B);

} // namespace flipk
