#include "toric/lattice.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>
#include <utility>

namespace toric {

IntVector make_vector(std::initializer_list<long> values)
{
    IntVector v;
    v.reserve(values.size());
    for (long x : values)
        v.emplace_back(x);
    return v;
}

Int dot(std::span<const Int> a, std::span<const Int> b)
{
    assert(a.size() == b.size());
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

IntVector operator+(const IntVector& a, const IntVector& b)
{
    assert(a.size() == b.size());
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

IntVector operator-(const IntVector& a, const IntVector& b)
{
    assert(a.size() == b.size());
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

IntVector operator-(const IntVector& a)
{
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = -a[i];
    return r;
}

IntVector scaled(const IntVector& v, const Int& factor)
{
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = v[i] * factor;
    return r;
}

bool is_zero(std::span<const Int> v)
{
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

Int content(std::span<const Int> v)
{
    Int g = 0;
    for (const Int& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntVector primitive(IntVector v)
{
    Int g = content(v);
    if (g > 1)
        for (Int& x : v)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return v;
}

std::string to_string(const IntVector& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols)
{
}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
{
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InvalidInput("ragged matrix literal");
        for (long x : r)
            entries_.emplace_back(x);
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n)
{
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols)
{
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw InvalidInput("row length mismatch: expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

IntVector IntegerMatrix::row(std::size_t r) const
{
    return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<IntVector> IntegerMatrix::row_vectors() const
{
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out.push_back(row(r));
    return out;
}

IntegerMatrix IntegerMatrix::transposed() const
{
    IntegerMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& other) const
{
    assert(cols_ == other.rows_);
    IntegerMatrix p(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(r, k);
            if (sgn(a) == 0)
                continue;
            for (std::size_t c = 0; c < other.cols_; ++c)
                p(r, c) += a * other(k, c);
        }
    return p;
}

IntVector IntegerMatrix::left_multiply(const IntVector& x) const
{
    assert(x.size() == rows_);
    IntVector y(cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (sgn(x[r]) == 0)
            continue;
        for (std::size_t c = 0; c < cols_; ++c)
            y[c] += x[r] * (*this)(r, c);
    }
    return y;
}

bool IntegerMatrix::is_zero() const
{
    return toric::is_zero(entries_);
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        std::swap((*this)(a, c), (*this)(b, c));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        std::swap((*this)(r, a), (*this)(r, b));
}

void IntegerMatrix::add_row_multiple(std::size_t target, std::size_t source, const Int& factor)
{
    if (sgn(factor) == 0)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(target, c) += factor * (*this)(source, c);
}

void IntegerMatrix::add_col_multiple(std::size_t target, std::size_t source, const Int& factor)
{
    if (sgn(factor) == 0)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, target) += factor * (*this)(r, source);
}

void IntegerMatrix::negate_row(std::size_t r)
{
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(r, c) = -(*this)(r, c);
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m)
{
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ",[" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c)
            os << (c ? "," : "") << m(r, c);
        os << ']';
    }
    return os << ']';
}

Int determinant(const IntegerMatrix& input)
{
    if (input.rows() != input.cols())
        throw InvalidInput("determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0)
        return 1;
    IntegerMatrix m = input;
    Int sign = 1;
    Int previous = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
            }
        previous = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols)
{
    std::vector<std::vector<Rat>> a;
    a.reserve(rows.size());
    for (const auto& r : rows) {
        assert(r.size() == cols);
        a.emplace_back(r.begin(), r.end());
    }
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < a.size(); ++c) {
        std::size_t p = rk;
        while (p < a.size() && sgn(a[p][c]) == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[rk]);
        for (std::size_t i = rk + 1; i < a.size(); ++i) {
            if (sgn(a[i][c]) == 0)
                continue;
            Rat f = a[i][c] / a[rk][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[rk][j];
        }
        ++rk;
    }
    return rk;
}

std::size_t rank(const IntegerMatrix& m)
{
    return rank(m.row_vectors(), m.cols());
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& m)
{
    const std::size_t n = m.rows();
    if (m.cols() != n)
        throw InvalidInput("inverse of a non-square matrix");
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = m(r, c);
        a[r][n + r] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a[p][c]) == 0)
            ++p;
        if (p == n)
            throw InvalidInput("matrix is singular");
        std::swap(a[p], a[c]);
        Rat pivot = a[c][c];
        for (auto& x : a[c])
            x /= pivot;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0)
                continue;
            Rat f = a[r][c];
            for (std::size_t j = 0; j < 2 * n; ++j)
                a[r][j] -= f * a[c][j];
        }
    }
    IntegerMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const Rat& x = a[r][n + c];
            if (x.get_den() != 1)
                throw InvalidInput("matrix is not unimodular");
            inv(r, c) = x.get_num();
        }
    return inv;
}

// ---------------------------------------------------------------------------
// Normal forms

HermiteForm hermite_normal_form(const IntegerMatrix& m)
{
    IntegerMatrix H = m;
    IntegerMatrix U = IntegerMatrix::identity(m.rows());
    const std::size_t rows = H.rows();
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < H.cols() && pivot_row < rows; ++c) {
        // Euclid on column c over rows pivot_row..: keep the smallest nonzero on top.
        for (;;) {
            std::size_t best = rows;
            for (std::size_t r = pivot_row; r < rows; ++r)
                if (sgn(H(r, c)) != 0 && (best == rows || abs(H(r, c)) < abs(H(best, c))))
                    best = r;
            if (best == rows)
                break;
            H.swap_rows(pivot_row, best);
            U.swap_rows(pivot_row, best);
            bool cleared = true;
            for (std::size_t r = pivot_row + 1; r < rows; ++r) {
                if (sgn(H(r, c)) == 0)
                    continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), H(r, c).get_mpz_t(), H(pivot_row, c).get_mpz_t());
                H.add_row_multiple(r, pivot_row, -q);
                U.add_row_multiple(r, pivot_row, -q);
                if (sgn(H(r, c)) != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (sgn(H(pivot_row, c)) == 0)
            continue;
        if (sgn(H(pivot_row, c)) < 0) {
            H.negate_row(pivot_row);
            U.negate_row(pivot_row);
        }
        for (std::size_t r = 0; r < pivot_row; ++r) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H(r, c).get_mpz_t(), H(pivot_row, c).get_mpz_t());
            H.add_row_multiple(r, pivot_row, -q);
            U.add_row_multiple(r, pivot_row, -q);
        }
        ++pivot_row;
    }
    return {std::move(H), std::move(U)};
}

SmithForm smith_normal_form(const IntegerMatrix& m)
{
    IntegerMatrix D = m;
    IntegerMatrix U = IntegerMatrix::identity(m.rows());
    IntegerMatrix V = IntegerMatrix::identity(m.cols());
    const std::size_t rows = D.rows();
    const std::size_t cols = D.cols();
    const std::size_t diag = std::min(rows, cols);

    for (std::size_t t = 0; t < diag; ++t) {
        for (;;) {
            std::size_t pr = rows, pc = cols;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (sgn(D(r, c)) != 0 && (pr == rows || abs(D(r, c)) < abs(D(pr, pc)))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == rows)
                return {std::move(D), std::move(U), std::move(V)};
            D.swap_rows(t, pr);
            U.swap_rows(t, pr);
            D.swap_cols(t, pc);
            V.swap_cols(t, pc);

            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (sgn(D(r, t)) == 0)
                    continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(r, t).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_row_multiple(r, t, -q);
                U.add_row_multiple(r, t, -q);
                if (sgn(D(r, t)) != 0)
                    clean = false;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (sgn(D(t, c)) == 0)
                    continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(t, c).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_col_multiple(c, t, -q);
                V.add_col_multiple(c, t, -q);
                if (sgn(D(t, c)) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // Divisibility: fold a row carrying a non-multiple into row t.
            bool divisible = true;
            for (std::size_t r = t + 1; r < rows && divisible; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (!mpz_divisible_p(D(r, c).get_mpz_t(), D(t, t).get_mpz_t())) {
                        D.add_row_multiple(t, r, 1);
                        U.add_row_multiple(t, r, 1);
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (sgn(D(t, t)) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
    }
    return {std::move(D), std::move(U), std::move(V)};
}

// ---------------------------------------------------------------------------
// LatticeChart

LatticeChart::LatticeChart(const std::vector<IntVector>& generators, std::size_t ambient_dim)
    : ambient_dim_(ambient_dim)
{
    IntegerMatrix G = IntegerMatrix::from_rows(generators, ambient_dim);
    SmithForm snf = smith_normal_form(G);
    for (std::size_t i = 0; i < std::min(G.rows(), G.cols()); ++i) {
        if (sgn(snf.D(i, i)) == 0)
            break;
        invariants_.push_back(snf.D(i, i));
    }
    V_ = std::move(snf.V);
    V_inverse_ = unimodular_inverse(V_);
}

IntVector LatticeChart::transform(const IntVector& x) const
{
    if (x.size() != ambient_dim_)
        throw InvalidInput("vector of length " + std::to_string(x.size()) + " in a chart of dimension " +
                           std::to_string(ambient_dim_));
    return V_.left_multiply(x);
}

bool LatticeChart::in_span(const IntVector& x) const
{
    IntVector y = transform(x);
    for (std::size_t j = rank(); j < ambient_dim_; ++j)
        if (sgn(y[j]) != 0)
            return false;
    return true;
}

bool LatticeChart::in_lattice(const IntVector& x) const
{
    IntVector y = transform(x);
    for (std::size_t j = rank(); j < ambient_dim_; ++j)
        if (sgn(y[j]) != 0)
            return false;
    for (std::size_t j = 0; j < rank(); ++j)
        if (!mpz_divisible_p(y[j].get_mpz_t(), invariants_[j].get_mpz_t()))
            return false;
    return true;
}

IntVector LatticeChart::coordinates(const IntVector& x) const
{
    if (!in_lattice(x))
        throw InvalidInput("vector " + to_string(x) + " is not in the lattice");
    IntVector y = transform(x);
    IntVector c(rank());
    for (std::size_t j = 0; j < rank(); ++j)
        mpz_divexact(c[j].get_mpz_t(), y[j].get_mpz_t(), invariants_[j].get_mpz_t());
    return c;
}

IntVector LatticeChart::saturated_coordinates(const IntVector& x) const
{
    if (!in_span(x))
        throw InvalidInput("vector " + to_string(x) + " is outside the lattice span");
    IntVector y = transform(x);
    y.resize(rank());
    return y;
}

IntVector LatticeChart::quotient_coordinates(const IntVector& x) const
{
    IntVector y = transform(x);
    return IntVector(y.begin() + static_cast<std::ptrdiff_t>(rank()), y.end());
}

IntVector LatticeChart::from_coordinates(const IntVector& c) const
{
    assert(c.size() == rank());
    IntVector y(ambient_dim_);
    for (std::size_t j = 0; j < rank(); ++j)
        y[j] = c[j] * invariants_[j];
    return V_inverse_.left_multiply(y);
}

IntVector LatticeChart::from_saturated_coordinates(const IntVector& c) const
{
    assert(c.size() == rank());
    IntVector y(ambient_dim_);
    for (std::size_t j = 0; j < rank(); ++j)
        y[j] = c[j];
    return V_inverse_.left_multiply(y);
}

Int LatticeChart::saturation_index() const
{
    Int p = 1;
    for (const Int& d : invariants_)
        p *= d;
    return p;
}

std::vector<IntVector> LatticeChart::basis() const
{
    std::vector<IntVector> b;
    for (std::size_t j = 0; j < rank(); ++j)
        b.push_back(scaled(V_inverse_.row(j), invariants_[j]));
    return b;
}

std::vector<IntVector> LatticeChart::saturated_basis() const
{
    std::vector<IntVector> b;
    for (std::size_t j = 0; j < rank(); ++j)
        b.push_back(V_inverse_.row(j));
    return b;
}

IntegerMatrix LatticeChart::quotient_map() const
{
    IntegerMatrix q(ambient_dim_, ambient_dim_ - rank());
    for (std::size_t r = 0; r < ambient_dim_; ++r)
        for (std::size_t c = rank(); c < ambient_dim_; ++c)
            q(r, c - rank()) = V_(r, c);
    return q;
}

IntVector LatticeChart::pullback(const IntVector& a) const
{
    assert(a.size() == rank());
    Int l = 1;
    for (const Int& d : invariants_)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    IntVector w(ambient_dim_);
    for (std::size_t j = 0; j < rank(); ++j) {
        Int f = a[j] * (l / invariants_[j]);
        for (std::size_t r = 0; r < ambient_dim_; ++r)
            w[r] += f * V_(r, j);
    }
    return primitive(std::move(w));
}

// ---------------------------------------------------------------------------
// AffineLattice

namespace {

IntegerMatrix hermite_basis(const std::vector<IntVector>& generators, std::size_t ambient_dim)
{
    HermiteForm hnf = hermite_normal_form(IntegerMatrix::from_rows(generators, ambient_dim));
    std::vector<IntVector> rows;
    for (std::size_t r = 0; r < hnf.H.rows(); ++r) {
        IntVector row = hnf.H.row(r);
        if (!is_zero(row))
            rows.push_back(std::move(row));
    }
    return IntegerMatrix::from_rows(rows, ambient_dim);
}

} // namespace

AffineLattice::AffineLattice(IntVector origin, IntegerMatrix basis)
    : origin_(std::move(origin)), basis_(std::move(basis))
{
    if (basis_.rows() > 0 && basis_.cols() != origin_.size())
        throw InvalidInput("affine lattice basis and origin disagree in dimension");
    if (basis_.rows() == 0)
        basis_ = IntegerMatrix(0, origin_.size());
}

AffineLattice AffineLattice::of(const std::vector<IntVector>& points)
{
    if (points.empty())
        throw InvalidInput("affine lattice of an empty point set");
    const std::size_t n = points.front().size();
    std::vector<IntVector> directions;
    for (const auto& p : points) {
        if (p.size() != n)
            throw InvalidInput("points of mixed dimension");
        directions.push_back(p - points.front());
    }
    return AffineLattice(points.front(), hermite_basis(directions, n));
}

AffineLattice AffineLattice::linear(const std::vector<IntVector>& directions, std::size_t ambient_dim)
{
    return AffineLattice(IntVector(ambient_dim), hermite_basis(directions, ambient_dim));
}

LatticeChart AffineLattice::chart() const
{
    return LatticeChart(basis_.row_vectors(), ambient_dim());
}

bool AffineLattice::direction_contains(const IntVector& vector) const
{
    return chart().in_lattice(vector);
}

bool AffineLattice::contains(const IntVector& point) const
{
    return direction_contains(point - origin_);
}

AffineLattice AffineLattice::saturation() const
{
    LatticeChart c = chart();
    return AffineLattice(origin_, hermite_basis(c.saturated_basis(), ambient_dim()));
}

bool AffineLattice::operator==(const AffineLattice& other) const
{
    return basis_ == other.basis_ && contains(other.origin_);
}

AffineLattice affine_lattice_of(const std::vector<IntVector>& points)
{
    return AffineLattice::of(points);
}

Int lattice_index(const AffineLattice& outer, const AffineLattice& inner)
{
    if (outer.rank() != inner.rank())
        throw InvalidInput("lattice_index: rank mismatch");
    if (outer.rank() == 0)
        return 1;
    LatticeChart chart = outer.chart();
    std::vector<IntVector> coords;
    for (const IntVector& b : inner.basis().row_vectors()) {
        if (!chart.in_lattice(b))
            throw InvalidInput("lattice_index: inner lattice is not contained in outer lattice");
        coords.push_back(chart.coordinates(b));
    }
    return abs(determinant(IntegerMatrix::from_rows(coords, outer.rank())));
}

// ---------------------------------------------------------------------------
// QuotientLattice

QuotientLattice::QuotientLattice(AffineLattice ambient, const std::vector<IntVector>& killed)
    : ambient_(std::move(ambient)), killed_(killed), ambient_chart_(ambient_.chart())
{
    std::vector<IntVector> coords;
    for (const IntVector& s : killed_) {
        if (!ambient_chart_.in_lattice(s))
            throw InvalidInput("quotient_projection: killed vector " + to_string(s) +
                               " is not in the ambient lattice");
        coords.push_back(ambient_chart_.coordinates(s));
    }
    killed_chart_ = LatticeChart(coords, ambient_.rank());
}

IntVector QuotientLattice::project(const IntVector& direction) const
{
    return killed_chart_.quotient_coordinates(ambient_chart_.coordinates(direction));
}

QuotientLattice quotient_projection(const AffineLattice& lattice, const std::vector<IntVector>& killed)
{
    return QuotientLattice(lattice, killed);
}

} // namespace toric
