#ifndef LLDFORGE_MATRIX_HPP
#define LLDFORGE_MATRIX_HPP

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lldforge/scalar.hpp"

namespace lldforge {

// Dense matrix of exact scalars sharing one field descriptor.
class Mat {
public:
    Mat() = default;
    Mat(FieldPtr f, std::size_t rows, std::size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols),
          a_(rows * cols, Scalar::zero(field_)) {}

    static Mat identity(const FieldPtr& f, std::size_t n);
    static Mat zero(const FieldPtr& f, std::size_t rows, std::size_t cols);
    // unit matrix E_{ij}
    static Mat unit(const FieldPtr& f, std::size_t rows, std::size_t cols, std::size_t i,
                    std::size_t j);
    // parse whitespace-separated scalar tokens, one row per inner list
    static Mat from_strings(const FieldPtr& f, const std::vector<std::vector<std::string>>& rows);
    static Mat from_ints(const FieldPtr& f, const std::vector<std::vector<long long>>& rows);
    static Mat col_vector(const FieldPtr& f, const std::vector<Scalar>& v);

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat scaled(const Scalar& c) const;
    Mat operator-() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const;
    bool is_zero() const;
    bool is_identity() const;
    bool is_square() const { return rows_ == cols_; }
    // skew-symmetric with zero diagonal (the characteristic-2-safe notion)
    bool is_alternating() const;

    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Mat& b);
    static Mat hstack(const Mat& a, const Mat& b);
    static Mat vstack(const Mat& a, const Mat& b);
    Mat col(std::size_t j) const;
    Mat row(std::size_t i) const;

    std::vector<Scalar> flatten() const { return a_; }
    Mat widened(const FieldPtr& wider) const;

    std::string to_string() const;

private:
    FieldPtr field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

// --- exact linear algebra -------------------------------------------------

// exact rank; fraction-free elimination over function fields
std::size_t rank(const Mat& m);

// basis of the right kernel as column vectors; count = cols - rank
std::vector<Mat> kernel_basis(const Mat& m);

Scalar det(const Mat& m);
// recursive expansion along the first row; square, even, alternating input
Scalar pfaffian(const Mat& m);

std::optional<Mat> inverse(const Mat& m);

// first solution of A x = b by elimination (free variables set to zero)
std::optional<Mat> solve(const Mat& a, const Mat& b);

// evaluate a function-field matrix at a point, producing a base-field matrix;
// every variable must be assigned and no denominator may vanish
Mat specialize(const Mat& m, const std::map<std::string, Scalar>& point);

// substitute a subset of the variables, landing in the target field whose
// variable list must consist of the unassigned variables (same base)
Mat substitute_vars(const Mat& m, const std::map<std::string, Scalar>& assign,
                    const FieldPtr& target);

// rank of an integer matrix reduced mod a prime; entries row-major, any sign
std::size_t rank_mod_p(std::vector<std::int64_t> entries, std::size_t rows, std::size_t cols,
                       std::int64_t p);

// column span helpers (work on any rectangular matrices over one field)
std::size_t span_dim(const std::vector<Mat>& mats);           // dim of span (flattened)
bool in_span(const std::vector<Mat>& basis, const Mat& m);    // membership (flattened)
bool same_span(const std::vector<Mat>& a, const std::vector<Mat>& b);
// deterministically select a maximal independent sublist (first-wins)
std::vector<Mat> independent_subset(const std::vector<Mat>& mats);
// coordinates of m in the given independent basis, if it lies in the span
std::optional<std::vector<Scalar>> span_coordinates(const std::vector<Mat>& basis, const Mat& m);

} // namespace lldforge

#endif
