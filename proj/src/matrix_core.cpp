#include "mvgamma/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace mvg {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kMinkowskiSlack = 1e-10;

void require_same_dim(const SymMatrix& a, const SymMatrix& b, const char* fn) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(fn) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) +
                                    ")");
}

// |M|^(1/m) for a positive semidefinite matrix: Cholesky when definite,
// eigenvalue product otherwise (singular inputs give 0).
double det_root_psd(const SymMatrix& m) {
    const CholeskyOutcome chol = try_cholesky(m);
    if (chol.ok()) {
        double logdet = 0.0;
        for (int i = 0; i < m.dim(); ++i)
            logdet += std::log(chol.lower[static_cast<std::size_t>(i) * m.dim() + i]);
        return std::exp(2.0 * logdet / m.dim());
    }
    const EigenSystem eig = sym_eigen(m);
    const double scale = std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
    double logdet = 0.0;
    for (double value : eig.values) {
        if (value <= scale * 1e-14) return 0.0;  // singular within noise
        logdet += std::log(value);
    }
    return std::exp(logdet / m.dim());
}

}  // namespace

SymMatrix::SymMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("SymMatrix: dimension must be positive");
    a_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

SymMatrix SymMatrix::identity(int dim) {
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& entries) {
    SymMatrix m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim(); ++i) m.set(i, i, entries[static_cast<std::size_t>(i)]);
    return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int dim = static_cast<int>(rows.size());
    SymMatrix m(dim);
    double norm = 0.0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("SymMatrix: rows must form a square matrix");
        double row_sum = 0.0;
        for (double v : row) {
            if (!std::isfinite(v)) throw std::invalid_argument("SymMatrix: entries must be finite");
            row_sum += std::fabs(v);
        }
        norm = std::max(norm, row_sum);
    }
    const double tol = kSymmetryTol * std::max(1.0, norm);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            const double upper = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const double lower = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (std::fabs(upper - lower) > tol)
                throw std::invalid_argument("SymMatrix: asymmetric entry at (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
            m.set(i, j, 0.5 * (upper + lower));
        }
    return m;
}

void SymMatrix::set(int i, int j, double value) {
    a_[static_cast<std::size_t>(i) * dim_ + j] = value;
    a_[static_cast<std::size_t>(j) * dim_ + i] = value;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SymMatrix::inf_norm() const {
    double norm = 0.0;
    for (int i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (int j = 0; j < dim_; ++j) row += std::fabs((*this)(i, j));
        norm = std::max(norm, row);
    }
    return norm;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
    require_same_dim(*this, other, "SymMatrix::operator+=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
    require_same_dim(*this, other, "SymMatrix::operator-=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
    return *this;
}

SymMatrix& SymMatrix::operator*=(double scale) {
    for (double& v : a_) v *= scale;
    return *this;
}

CholeskyOutcome try_cholesky(const SymMatrix& m) {
    const int n = m.dim();
    CholeskyOutcome out;
    out.lower.assign(static_cast<std::size_t>(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& {
        return out.lower[static_cast<std::size_t>(i) * n + j];
    };
    for (int j = 0; j < n; ++j) {
        double diag = m(j, j);
        for (int k = 0; k < j; ++k) diag -= at(j, k) * at(j, k);
        if (!(diag > 0.0) || !std::isfinite(diag)) {
            out.failed_pivot = j;
            return out;
        }
        at(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < n; ++i) {
            double v = m(i, j);
            for (int k = 0; k < j; ++k) v -= at(i, k) * at(j, k);
            at(i, j) = v / at(j, j);
        }
    }
    return out;
}

double logdet_pd(const SymMatrix& m) {
    const CholeskyOutcome chol = try_cholesky(m);
    if (!chol.ok())
        throw NotPositiveDefiniteError(
            chol.failed_pivot, "logdet_pd: matrix is not positive definite (pivot " +
                                   std::to_string(chol.failed_pivot) + ")");
    double logdet = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        logdet += std::log(chol.lower[static_cast<std::size_t>(i) * m.dim() + i]);
    return 2.0 * logdet;
}

bool is_positive_definite(const SymMatrix& m) { return try_cholesky(m).ok(); }

bool is_positive_semidefinite(const SymMatrix& m) {
    SymMatrix jittered = m;
    const double jitter = 1e-12 * m.trace() / m.dim();
    if (jitter > 0.0)
        for (int i = 0; i < m.dim(); ++i) jittered.set(i, i, jittered(i, i) + jitter);
    if (try_cholesky(jittered).ok()) return true;
    // Singular boundary (or indefinite): decide by the smallest eigenvalue.
    const EigenSystem eig = sym_eigen(m);
    const double scale =
        std::max({1.0, std::fabs(eig.values.front()), std::fabs(eig.values.back())});
    return eig.values.front() >= -1e-10 * scale;
}

EigenSystem sym_eigen(const SymMatrix& m) {
    const int n = m.dim();
    EigenSystem out;
    out.dim = n;
    std::vector<double> a = m.data();
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

    // Cyclic Jacobi sweeps; quadratic convergence for these small dims.
    for (int sweep = 0; sweep < 128; ++sweep) {
        double off = 0.0;
        double diag = 0.0;
        for (int i = 0; i < n; ++i) {
            diag += A(i, i) * A(i, i);
            for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        }
        if (off <= 1e-30 * std::max(1e-300, diag + off)) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                const double tau = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = A(i, p);
                    const double aiq = A(i, q);
                    A(i, p) = c * aip - s * aiq;
                    A(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = A(p, i);
                    const double aqi = A(q, i);
                    A(p, i) = c * api - s * aqi;
                    A(q, i) = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = V(i, p);
                    const double viq = V(i, q);
                    V(i, p) = c * vip - s * viq;
                    V(i, q) = s * vip + c * viq;
                }
            }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) { return A(lhs, lhs) < A(rhs, rhs); });
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        out.values[static_cast<std::size_t>(j)] = A(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
        for (int i = 0; i < n; ++i)
            out.vectors[static_cast<std::size_t>(i) * n + j] = V(i, order[static_cast<std::size_t>(j)]);
    }
    return out;
}

SymMatrix sandwich(const SymMatrix& b, const SymMatrix& a) {
    require_same_dim(b, a, "sandwich");
    const int n = b.dim();
    std::vector<double> ba(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += b(i, k) * a(k, j);
            ba[static_cast<std::size_t>(i) * n + j] = acc;
        }
    SymMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += ba[static_cast<std::size_t>(i) * n + k] * b(k, j);
            out.set(i, j, acc);
        }
    // Exact symmetry comes from writing only the upper triangle.
    return out;
}

MinkowskiCheck minkowski_det_check(const SymMatrix& a, const SymMatrix& b) {
    require_same_dim(a, b, "minkowski_det_check");
    MinkowskiCheck check;
    check.lhs = det_root_psd(a + b);
    check.rhs = det_root_psd(a) + det_root_psd(b);
    check.holds = check.lhs >= check.rhs - kMinkowskiSlack;
    return check;
}

SimplexPoint::SimplexPoint(std::vector<double> coords) : u_(std::move(coords)) {
    if (u_.empty()) throw std::invalid_argument("SimplexPoint: need at least one coordinate");
    double sum = 0.0;
    for (double v : u_) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::domain_error("SimplexPoint: coordinates must be positive");
        sum += v;
    }
    last_ = 1.0 - sum;
    if (!(last_ > 0.0))
        throw std::domain_error("SimplexPoint: coordinates must sum to less than 1");
}

MatrixPartition::MatrixPartition(std::vector<SymMatrix> parts)
    : parts_(std::move(parts)), complement_(parts_.empty() ? 1 : parts_.front().dim()) {
    if (parts_.empty()) throw std::invalid_argument("MatrixPartition: need at least one part");
    const int n = parts_.front().dim();
    SymMatrix sum(n);
    for (const auto& part : parts_) {
        require_same_dim(part, sum, "MatrixPartition");
        if (!is_positive_semidefinite(part))
            throw std::domain_error("MatrixPartition: part is not positive semidefinite");
        sum += part;
    }
    complement_ = SymMatrix::identity(n);
    complement_ -= sum;
    if (!is_positive_semidefinite(complement_))
        throw std::domain_error(
            "MatrixPartition: parts exceed the identity (complement not positive semidefinite)");
}

SimplexPoint sample_simplex_interior(int r, RngStream& rng, double floor) {
    if (r < 1) throw std::invalid_argument("sample_simplex_interior: r must be >= 1");
    for (;;) {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            // Normalized exponentials give the uniform (flat Dirichlet) law.
            std::vector<double> raw(static_cast<std::size_t>(r) + 1);
            double sum = 0.0;
            for (double& v : raw) {
                v = rng.exponential();
                sum += v;
            }
            bool interior = true;
            for (double v : raw)
                if (v < floor * sum) {
                    interior = false;
                    break;
                }
            if (!interior) continue;
            std::vector<double> coords(static_cast<std::size_t>(r));
            for (int i = 0; i < r; ++i) coords[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(i)] / sum;
            return SimplexPoint(std::move(coords));
        }
        std::fprintf(stderr,
                     "sample_simplex_interior: floor %.3g unreachable after 1000 attempts "
                     "(r = %d); widening to %.3g\n",
                     floor, r, floor * 0.1);
        floor *= 0.1;
    }
}

MatrixPartition sample_partition(int m, int r, RngStream& rng) {
    if (m < 1 || r < 1) throw std::invalid_argument("sample_partition: m and r must be >= 1");
    std::vector<SymMatrix> raw;
    raw.reserve(static_cast<std::size_t>(r) + 1);
    SymMatrix total(m);
    for (int i = 0; i <= r; ++i) {
        std::vector<double> g(static_cast<std::size_t>(m) * m);
        for (double& v : g) v = rng.normal();
        SymMatrix a(m);
        for (int row = 0; row < m; ++row)
            for (int col = row; col < m; ++col) {
                double acc = 0.0;
                for (int k = 0; k < m; ++k)
                    acc += g[static_cast<std::size_t>(row) * m + k] * g[static_cast<std::size_t>(col) * m + k];
                a.set(row, col, acc);
            }
        for (int d = 0; d < m; ++d) a.set(d, d, a(d, d) + 0.1);  // ridge keeps A_i definite
        total += a;
        raw.push_back(std::move(a));
    }
    const EigenSystem eig = sym_eigen(total);
    SymMatrix inv_sqrt(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double acc = 0.0;
            for (int k = 0; k < m; ++k)
                acc += eig.vectors[static_cast<std::size_t>(i) * m + k] *
                       eig.vectors[static_cast<std::size_t>(j) * m + k] /
                       std::sqrt(eig.values[static_cast<std::size_t>(k)]);
            inv_sqrt.set(i, j, acc);
        }
    std::vector<SymMatrix> parts;
    parts.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) parts.push_back(sandwich(inv_sqrt, raw[static_cast<std::size_t>(i)]));
    return MatrixPartition(std::move(parts));
}

}  // namespace mvg
