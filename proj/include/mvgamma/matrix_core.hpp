#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvgamma/rng.hpp"

namespace mvg {

// Thrown when a Cholesky factorization hits a non-positive pivot; carries the
// index of the failing pivot.
class NotPositiveDefiniteError : public std::domain_error {
public:
    NotPositiveDefiniteError(int pivot, const std::string& message)
        : std::domain_error(message), pivot_(pivot) {}

    int pivot() const noexcept { return pivot_; }

private:
    int pivot_;
};

// Dense real symmetric matrix, row-major full storage. Loaders reject
// asymmetry beyond 1e-12 * max(1, ||A||_inf) and store the symmetrized
// average, so (i,j) and (j,i) always read identically.
class SymMatrix {
public:
    explicit SymMatrix(int dim);  // zero matrix

    static SymMatrix identity(int dim);
    static SymMatrix diagonal(const std::vector<double>& entries);
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

    int dim() const noexcept { return dim_; }

    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

    // Writes both (i, j) and (j, i).
    void set(int i, int j, double value);

    double trace() const;
    double inf_norm() const;

    SymMatrix& operator+=(const SymMatrix& other);
    SymMatrix& operator-=(const SymMatrix& other);
    SymMatrix& operator*=(double scale);

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }

    const std::vector<double>& data() const noexcept { return a_; }

private:
    int dim_;
    std::vector<double> a_;
};

// Lower Cholesky factor of M, or the index of the first non-positive pivot.
struct CholeskyOutcome {
    std::vector<double> lower;      // row-major, valid when pivot < 0
    int failed_pivot = -1;          // -1 on success
    bool ok() const noexcept { return failed_pivot < 0; }
};
CholeskyOutcome try_cholesky(const SymMatrix& m);

// ln|M| = 2 sum ln L_ii for positive definite M; throws
// NotPositiveDefiniteError with the failing pivot otherwise.
double logdet_pd(const SymMatrix& m);

// Plain Cholesky succeeds.
bool is_positive_definite(const SymMatrix& m);

// Cholesky on M + jitter*I with jitter = 1e-12 * trace(M)/dim; falls back to
// an eigenvalue bound for the singular boundary (e.g. the zero matrix, where
// the jitter vanishes).
bool is_positive_semidefinite(const SymMatrix& m);

// Jacobi eigendecomposition of a symmetric matrix. values ascending;
// vectors row-major with column j the unit eigenvector of values[j].
struct EigenSystem {
    std::vector<double> values;
    std::vector<double> vectors;
    int dim = 0;
};
EigenSystem sym_eigen(const SymMatrix& m);

// B * A * B for symmetric A, B (result symmetrized).
SymMatrix sandwich(const SymMatrix& b, const SymMatrix& a);

// |A+B|^(1/m) vs |A|^(1/m) + |B|^(1/m) for positive semidefinite inputs.
// holds is lhs >= rhs - 1e-10. Determinant roots of singular matrices are 0.
struct MinkowskiCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};
MinkowskiCheck minkowski_det_check(const SymMatrix& a, const SymMatrix& b);

// Interior point of the unit simplex: r explicit positive coordinates with
// sum < 1; the (r+1)-th coordinate is the stored remainder 1 - sum.
class SimplexPoint {
public:
    explicit SimplexPoint(std::vector<double> coords);

    int count() const noexcept { return static_cast<int>(u_.size()); }  // r
    double coord(int i) const { return u_[static_cast<std::size_t>(i)]; }
    double last() const noexcept { return last_; }

    // i in [0, r]; i == r yields the implicit remainder.
    double full_coord(int i) const {
        return i == count() ? last_ : u_[static_cast<std::size_t>(i)];
    }

    const std::vector<double>& coords() const noexcept { return u_; }

private:
    std::vector<double> u_;
    double last_;
};

// Matrices M_1..M_r plus the derived complement M_{r+1} = I - sum M_i. Every
// block must certify positive semidefinite; the complement is always stored
// as the elementwise result of I - sum(parts).
class MatrixPartition {
public:
    explicit MatrixPartition(std::vector<SymMatrix> parts);

    int dim() const noexcept { return complement_.dim(); }
    int parts_count() const noexcept { return static_cast<int>(parts_.size()); }  // r

    const SymMatrix& part(int i) const { return parts_[static_cast<std::size_t>(i)]; }
    const SymMatrix& complement() const noexcept { return complement_; }

    // i in [0, r]; i == r yields the complement.
    const SymMatrix& block(int i) const {
        return i == parts_count() ? complement_ : parts_[static_cast<std::size_t>(i)];
    }
    int block_count() const noexcept { return parts_count() + 1; }

private:
    std::vector<SymMatrix> parts_;
    SymMatrix complement_;
};

// Uniform interior simplex point with every implicit coordinate >= floor.
// Resamples up to 1000 times, then widens the floor tenfold (with a warning
// to stderr) so the call always terminates.
SimplexPoint sample_simplex_interior(int r, RngStream& rng, double floor = 1e-3);

// Random partition: A_i = G G^T + 0.1 I with standard-normal G, then
// M_i = S^(-1/2) A_i S^(-1/2) against S = sum A_i, so the blocks are positive
// definite with eigenvalues in (0, 1) and sum to the identity by
// construction.
MatrixPartition sample_partition(int m, int r, RngStream& rng);

}  // namespace mvg
