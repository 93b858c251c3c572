#pragma once

// Exact integer linear algebra: matrices over Z, Hermite and Smith normal
// forms, lattice charts, affine lattices and quotient lattices.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace toric {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;

IntVector make_vector(std::initializer_list<long> values);

Int dot(std::span<const Int> a, std::span<const Int> b);
IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a);
IntVector scaled(const IntVector& v, const Int& factor);
bool is_zero(std::span<const Int> v);

/// gcd of the entries, 0 for the zero vector.
Int content(std::span<const Int> v);

/// v divided by its content; the zero vector is returned unchanged.
IntVector primitive(IntVector v);

std::string to_string(const IntVector& v);

class IntegerMatrix
{
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols);
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    std::vector<IntVector> row_vectors() const;
    IntegerMatrix transposed() const;
    IntegerMatrix operator*(const IntegerMatrix& other) const;

    /// Row vector times matrix: x^T M.
    IntVector left_multiply(const IntVector& x) const;

    bool is_zero() const;
    bool operator==(const IntegerMatrix& other) const = default;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const Int& factor);
    /// col[target] += factor * col[source]
    void add_col_multiple(std::size_t target, std::size_t source, const Int& factor);
    void negate_row(std::size_t r);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> entries_;
};

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

/// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntegerMatrix& m);

std::size_t rank(const IntegerMatrix& m);
std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols);

/// Inverse of a unimodular matrix; throws InvalidInput when |det| != 1.
IntegerMatrix unimodular_inverse(const IntegerMatrix& m);

struct HermiteForm
{
    IntegerMatrix H;
    IntegerMatrix U;
};

/// Row Hermite normal form: U * M = H with U unimodular, H in row echelon
/// form with positive pivots, entries above each pivot reduced into
/// [0, pivot) and zero rows at the bottom.
HermiteForm hermite_normal_form(const IntegerMatrix& m);

struct SmithForm
{
    IntegerMatrix D;
    IntegerMatrix U;
    IntegerMatrix V;
};

/// U * M * V = D with D diagonal, d1 | d2 | ... and all d_i >= 0.
SmithForm smith_normal_form(const IntegerMatrix& m);

/// Coordinate system attached to the lattice generated by a set of integer
/// row vectors in Z^n. With U*G*V = diag(d_1..d_r, 0..) and y = x V:
///   x lies in the real span        iff y_j = 0 for j >= r
///   x lies in the generated lattice iff additionally d_j | y_j
/// so y_j / d_j (j < r) are coordinates in the generated lattice, y_j (j < r)
/// are coordinates in its saturation Z^n cap span, and y_j (j >= r) are
/// coordinates in the free quotient Z^n / (Z^n cap span).
class LatticeChart
{
public:
    LatticeChart() = default;
    LatticeChart(const std::vector<IntVector>& generators, std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t rank() const { return invariants_.size(); }
    const std::vector<Int>& invariants() const { return invariants_; }

    bool in_span(const IntVector& x) const;
    bool in_lattice(const IntVector& x) const;

    /// Coordinates in the generated lattice; throws InvalidInput for non-members.
    IntVector coordinates(const IntVector& x) const;
    /// Coordinates in the saturation; throws InvalidInput outside the span.
    IntVector saturated_coordinates(const IntVector& x) const;
    /// Coordinates in Z^n / (Z^n cap span), a free lattice of rank n - r.
    IntVector quotient_coordinates(const IntVector& x) const;

    IntVector from_coordinates(const IntVector& c) const;
    IntVector from_saturated_coordinates(const IntVector& c) const;

    /// [Z^n cap span : generated lattice] = d_1 * ... * d_r.
    Int saturation_index() const;

    /// Basis rows of the generated lattice and of its saturation.
    std::vector<IntVector> basis() const;
    std::vector<IntVector> saturated_basis() const;

    /// n x (n - r) integer matrix of the quotient coordinate map (x -> x * Q).
    IntegerMatrix quotient_map() const;

    /// Primitive integer covector w on Z^n with <w, x> a positive multiple of
    /// <a, coordinates(x)> for every x in the generated lattice.
    IntVector pullback(const IntVector& a) const;

private:
    IntVector transform(const IntVector& x) const;

    std::size_t ambient_dim_ = 0;
    std::vector<Int> invariants_;
    IntegerMatrix V_;
    IntegerMatrix V_inverse_;
};

/// M(B) = { sum c_v v : c_v in Z, sum c_v = 1 }: an origin plus a direction
/// lattice stored as the nonzero rows of its row Hermite normal form.
class AffineLattice
{
public:
    AffineLattice() = default;
    AffineLattice(IntVector origin, IntegerMatrix basis);

    /// Lattice generated by the points; origin = first point.
    static AffineLattice of(const std::vector<IntVector>& points);
    /// The linear lattice spanned (over Z) by the given direction vectors.
    static AffineLattice linear(const std::vector<IntVector>& directions, std::size_t ambient_dim);

    const IntVector& origin() const { return origin_; }
    const IntegerMatrix& basis() const { return basis_; }
    std::size_t rank() const { return basis_.rows(); }
    std::size_t ambient_dim() const { return origin_.size(); }

    bool contains(const IntVector& point) const;
    bool direction_contains(const IntVector& vector) const;
    /// Z^n cap (real span of the directions), same origin.
    AffineLattice saturation() const;
    LatticeChart chart() const;

    /// Same point set (origins may differ by a lattice vector).
    bool operator==(const AffineLattice& other) const;

private:
    IntVector origin_;
    IntegerMatrix basis_;
};

AffineLattice affine_lattice_of(const std::vector<IntVector>& points);

/// [outer : inner] for direction lattices of equal rank with inner contained
/// in outer; 1 when both have rank 0.
Int lattice_index(const AffineLattice& outer, const AffineLattice& inner);

/// The quotient of the direction lattice of `ambient` by the real span of
/// `killed` intersected back with it. Coordinates are taken with respect to
/// the ambient lattice's own coordinates (LatticeChart::coordinates).
class QuotientLattice
{
public:
    QuotientLattice(AffineLattice ambient, const std::vector<IntVector>& killed);

    const AffineLattice& ambient() const { return ambient_; }
    const std::vector<IntVector>& killed() const { return killed_; }
    std::size_t rank() const { return ambient_.rank() - killed_chart_.rank(); }

    /// Integer matrix acting on ambient-lattice coordinates.
    IntegerMatrix coordinate_map() const { return killed_chart_.quotient_map(); }

    /// Image of a direction vector of the ambient lattice.
    IntVector project(const IntVector& direction) const;

private:
    AffineLattice ambient_;
    std::vector<IntVector> killed_;
    LatticeChart ambient_chart_;
    LatticeChart killed_chart_;
};

QuotientLattice quotient_projection(const AffineLattice& lattice, const std::vector<IntVector>& killed);

} // namespace toric
