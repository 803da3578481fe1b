#include "xxzb/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace xxzb {

BulkParams::BulkParams(double nu) : nu_(nu), mu_(kPi / nu), q_(std::exp(kI * (kPi / nu))) {
    if (!std::isfinite(nu) || nu <= 2.0) {
        std::ostringstream os;
        os << "bulk anisotropy nu must be finite and > 2 (got " << nu << ")";
        throw InvalidInput(os.str());
    }
}

std::size_t max_dense_dim() {
    if (const char* env = std::getenv("BB_MAX_DIM")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return 1024;
}

std::size_t chain_dim(int n_sites) {
    if (n_sites < 1) throw InvalidInput("chain needs at least one site");
    if (n_sites > 30) throw InvalidInput("chain length exceeds the dense-matrix cap");
    const std::size_t dim = std::size_t{1} << n_sites;
    if (dim > max_dense_dim()) {
        std::ostringstream os;
        os << "2^" << n_sites << " = " << dim << " exceeds the dense-matrix cap " << max_dense_dim()
           << " (set BB_MAX_DIM to raise it)";
        throw InvalidInput(os.str());
    }
    return dim;
}

double max_norm(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace pauli {
Matrix identity() { return Matrix::Identity(2, 2); }
Matrix x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
Matrix y() {
    Matrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}
Matrix z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
Matrix plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}
Matrix minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}
}  // namespace pauli

Matrix build_r_matrix(Complex lambda, const BulkParams& bulk, RReading reading) {
    const double mu = bulk.mu();
    const double s = reading == RReading::SpinHalf ? 0.5 : 1.0;
    const Complex a = std::sinh(mu * (lambda + 0.5 * kI + s * kI));
    const Complex b = std::sinh(mu * (lambda + 0.5 * kI - s * kI));
    const Complex c = std::sinh(kI * mu);

    // Auxiliary-space blocks: upper-left carries sigma^z with +, lower-right with -;
    // the off-diagonal blocks are sinh(i mu) e^{+-mu lambda} sigma^-/sigma^+.
    Matrix r = Matrix::Zero(4, 4);
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = b;
    r(3, 3) = a;
    r(1, 2) = c * std::exp(mu * lambda);
    r(2, 1) = c * std::exp(-mu * lambda);
    return r;
}

Matrix permutation_matrix() {
    Matrix p = Matrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) p(2 * a + b, 2 * b + a) = 1.0;
    return p;
}

Matrix build_k_minus(Complex lambda, const BulkParams& bulk, const BoundaryParams& bnd) {
    const double mu = bulk.mu();
    const Complex q_theta = std::exp(kI * mu * bnd.theta);
    Matrix k(2, 2);
    k(0, 0) = std::sinh(mu * (-lambda + kI * bnd.xi)) * std::exp(mu * lambda);
    k(1, 1) = std::sinh(mu * (lambda + kI * bnd.xi)) * std::exp(-mu * lambda);
    k(0, 1) = bnd.kappa * q_theta * std::sinh(2.0 * mu * lambda);
    k(1, 0) = bnd.kappa / q_theta * std::sinh(2.0 * mu * lambda);
    return k;
}

namespace {

// Embed a 4x4 operator acting on spaces (i, j) of an n-fold product of C^2.
Matrix embed_pair(const Matrix& op, int i, int j, int n) {
    const int dim = 1 << n;
    Matrix out = Matrix::Zero(dim, dim);
    auto bit = [n](int state, int k) { return (state >> (n - 1 - k)) & 1; };
    for (int x = 0; x < dim; ++x) {
        for (int y = 0; y < dim; ++y) {
            bool spectators_match = true;
            for (int k = 0; k < n && spectators_match; ++k)
                if (k != i && k != j && bit(x, k) != bit(y, k)) spectators_match = false;
            if (!spectators_match) continue;
            out(x, y) = op(2 * bit(x, i) + bit(x, j), 2 * bit(y, i) + bit(y, j));
        }
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double normalized_residual(const Matrix& lhs, const Matrix& rhs, double scale) {
    return scale > 0.0 ? max_norm(lhs - rhs) / scale : max_norm(lhs - rhs);
}

// 2x2 array of chain operators indexed by auxiliary-space row/column.
using Blocks = std::array<std::array<Matrix, 2>, 2>;

// A <- A * (1 x .. x op(site) x .. x 1), done in place in O(dim^2).
void apply_site_right(Matrix& a, const Matrix& op, int site, int n_sites) {
    const Eigen::Index dim = a.cols();
    const Eigen::Index stride = Eigen::Index{1} << (n_sites - site);
    Matrix out(a.rows(), dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const int b = static_cast<int>((col / stride) & 1);
        const Eigen::Index col0 = col - b * stride;
        out.col(col) = a.col(col0) * op(0, b) + a.col(col0 + stride) * op(1, b);
    }
    a = std::move(out);
}

// A <- A * R_block where R_block(a, a') = 1 x .. x r_{a a'} x .. x 1.
void multiply_by_site_blocks(Blocks& acc, const std::array<std::array<Matrix, 2>, 2>& r,
                             int site, int n_sites) {
    Blocks out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Matrix left = acc[i][0];
            apply_site_right(left, r[0][j], site, n_sites);
            Matrix right = acc[i][1];
            apply_site_right(right, r[1][j], site, n_sites);
            out[i][j] = left + right;
        }
    }
    acc = std::move(out);
}

// Site operators of R_{0n}: aux indices (a, a'), quantum (b, b') = R(2a+b, 2a'+b').
std::array<std::array<Matrix, 2>, 2> aux_first_blocks(const Matrix& r) {
    std::array<std::array<Matrix, 2>, 2> out;
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) out[a][ap] = r.block(2 * a, 2 * ap, 2, 2);
    return out;
}

// Site operators of R_{n0}: aux indices (a, a'), quantum (b, b') = R(2b+a, 2b'+a').
std::array<std::array<Matrix, 2>, 2> aux_second_blocks(const Matrix& r) {
    std::array<std::array<Matrix, 2>, 2> out;
    for (int a = 0; a < 2; ++a) {
        for (int ap = 0; ap < 2; ++ap) {
            Matrix m(2, 2);
            for (int b = 0; b < 2; ++b)
                for (int bp = 0; bp < 2; ++bp) m(b, bp) = r(2 * b + a, 2 * bp + ap);
            out[a][ap] = m;
        }
    }
    return out;
}

}  // namespace

double check_yang_baxter(Complex lambda1, Complex lambda2,
                         const std::function<Matrix(Complex)>& r_of) {
    const Matrix r12 = r_of(lambda1 - lambda2);
    const Matrix r13 = r_of(lambda1);
    const Matrix r23 = r_of(lambda2);
    const Matrix e12 = embed_pair(r12, 0, 1, 3);
    const Matrix e13 = embed_pair(r13, 0, 2, 3);
    const Matrix e23 = embed_pair(r23, 1, 2, 3);
    const double scale = max_norm(r12) * max_norm(r13) * max_norm(r23);
    return normalized_residual(e12 * e13 * e23, e23 * e13 * e12, scale);
}

double check_yang_baxter(Complex lambda1, Complex lambda2, const BulkParams& bulk,
                         RReading reading) {
    return check_yang_baxter(lambda1, lambda2,
                             [&](Complex l) { return build_r_matrix(l, bulk, reading); });
}

double check_reflection(Complex lambda1, Complex lambda2, const BulkParams& bulk,
                        const std::function<Matrix(Complex)>& k_of) {
    const Matrix p = permutation_matrix();
    const Matrix r_minus = build_r_matrix(lambda1 - lambda2, bulk);
    const Matrix r_plus = build_r_matrix(lambda1 + lambda2, bulk);
    const Matrix r21_minus = p * r_minus * p;
    const Matrix r21_plus = p * r_plus * p;
    const Matrix k1 = k_of(lambda1);
    const Matrix k2 = k_of(lambda2);
    const Matrix k1e = kron(k1, pauli::identity());
    const Matrix k2e = kron(pauli::identity(), k2);

    const Matrix lhs = r_minus * k1e * r21_plus * k2e;
    const Matrix rhs = k2e * r_plus * k1e * r21_minus;
    const double scale = max_norm(r_minus) * max_norm(k1) * max_norm(r_plus) * max_norm(k2);
    return normalized_residual(lhs, rhs, scale);
}

double check_reflection(Complex lambda1, Complex lambda2, const BulkParams& bulk,
                        const BoundaryParams& bnd) {
    return check_reflection(lambda1, lambda2, bulk,
                            [&](Complex l) { return build_k_minus(l, bulk, bnd); });
}

Matrix embed_site_operator(const Matrix& op, int site, int n_sites) {
    if (op.rows() != 2 || op.cols() != 2) throw InvalidInput("site operator must be 2x2");
    const std::size_t dim = chain_dim(n_sites);
    if (site < 1 || site > n_sites) {
        std::ostringstream os;
        os << "site " << site << " outside 1.." << n_sites;
        throw InvalidInput(os.str());
    }
    Matrix out = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    apply_site_right(out, op, site, n_sites);
    return out;
}

Matrix build_transfer_matrix(Complex lambda, const SpinChainSpec& spec) {
    const int n = spec.n_sites;
    const auto dim = static_cast<Eigen::Index>(chain_dim(n));
    const Matrix r = build_r_matrix(lambda, spec.bulk);
    const auto r0n = aux_first_blocks(r);
    const auto rn0 = aux_second_blocks(r);

    Blocks acc;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            acc[i][j] = i == j ? Matrix(Matrix::Identity(dim, dim)) : Matrix(Matrix::Zero(dim, dim));

    // T = R_0N ... R_01
    for (int site = n; site >= 1; --site) multiply_by_site_blocks(acc, r0n, site, n);

    // T K^-
    const Matrix k = build_k_minus(lambda, spec.bulk, spec.boundary);
    Blocks tk;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) tk[i][j] = acc[i][0] * k(0, j) + acc[i][1] * k(1, j);
    acc = std::move(tk);

    // T^ = R_10 ... R_N0
    for (int site = 1; site <= n; ++site) multiply_by_site_blocks(acc, rn0, site, n);

    // tr_0 { M K+ (...) } with K+ = 1.
    const Complex q = spec.bulk.q();
    return q * acc[0][0] + acc[1][1] / q;
}

Matrix build_transfer_matrix_dense(Complex lambda, const SpinChainSpec& spec) {
    const int n = spec.n_sites;
    const auto dim = static_cast<Eigen::Index>(chain_dim(n));
    const int spaces = n + 1;  // space 0 = auxiliary
    const Matrix r = build_r_matrix(lambda, spec.bulk);
    const Matrix p = permutation_matrix();
    const Matrix r_swapped = p * r * p;

    const Eigen::Index full = 2 * dim;
    Matrix t_mono = Matrix::Identity(full, full);
    for (int site = n; site >= 1; --site) t_mono = t_mono * embed_pair(r, 0, site, spaces);
    Matrix t_hat = Matrix::Identity(full, full);
    // R_{n0} acts with site n as the first space: (site, aux) ordering.
    for (int site = 1; site <= n; ++site) t_hat = t_hat * embed_pair(r_swapped, 0, site, spaces);

    Matrix mk = Matrix::Zero(2, 2);
    mk(0, 0) = spec.bulk.q();
    mk(1, 1) = 1.0 / spec.bulk.q();
    const Matrix chain_id = Matrix::Identity(dim, dim);
    const Matrix k = build_k_minus(lambda, spec.bulk, spec.boundary);
    const Matrix prod = kron(mk, chain_id) * t_mono * kron(k, chain_id) * t_hat;
    return prod.topLeftCorner(dim, dim) + prod.bottomRightCorner(dim, dim);
}

Matrix build_hamiltonian(const SpinChainSpec& spec) {
    const int n = spec.n_sites;
    if (n < 2) throw InvalidInput("Hamiltonian needs at least two sites");
    const auto dim = static_cast<Eigen::Index>(chain_dim(n));
    const double mu = spec.bulk.mu();
    const Complex ch = std::cosh(kI * mu);
    const Complex sh = std::sinh(kI * mu);
    const auto& b = spec.boundary;

    Matrix h = Matrix::Zero(dim, dim);
    for (int i = 1; i < n; ++i) {
        Matrix xx = embed_site_operator(pauli::x(), i, n);
        apply_site_right(xx, pauli::x(), i + 1, n);
        Matrix yy = embed_site_operator(pauli::y(), i, n);
        apply_site_right(yy, pauli::y(), i + 1, n);
        Matrix zz = embed_site_operator(pauli::z(), i, n);
        apply_site_right(zz, pauli::z(), i + 1, n);
        h -= 0.25 * (xx + yy + ch * zz);
    }
    h -= (n / 4.0) * ch * Matrix::Identity(dim, dim);
    h -= (sh / 4.0) * embed_site_operator(pauli::z(), n, n);

    const Complex sxi = std::sinh(kI * mu * b.xi);
    if (std::abs(sxi) < 1e-300) throw NumericalError("Hamiltonian: sinh(i mu xi) = 0");
    h += (sh * std::cosh(kI * mu * b.xi) / (4.0 * sxi)) * embed_site_operator(pauli::z(), 1, n);
    const Complex transverse = -b.kappa * sh / (2.0 * sxi);
    const double th = mu * b.theta;
    h += transverse * (std::cosh(kI * th) * embed_site_operator(pauli::x(), 1, n) +
                       kI * std::sinh(kI * th) * embed_site_operator(pauli::y(), 1, n));
    return h;
}

double commutator_residual(const Matrix& a, const Matrix& b) {
    const double scale = max_norm(a) * max_norm(b);
    return normalized_residual(a * b, b * a, scale);
}

std::vector<Complex> diagonalize(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidInput("diagonalize: matrix is not square");
    if (static_cast<std::size_t>(m.rows()) > max_dense_dim())
        throw InvalidInput("diagonalize: dimension exceeds the dense-matrix cap");
    if (!m.allFinite()) throw InvalidInput("diagonalize: non-finite entries");
    Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os << "diagonalize: Schur iteration did not converge (dim " << m.rows()
           << ", max|m| = " << max_norm(m) << ")";
        throw NumericalError(os.str());
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Matrix transfer_eigenfunctions(const SpinChainSpec& spec, Complex lambda_ref,
                               const std::vector<Complex>& points) {
    const Matrix t0 = build_transfer_matrix(lambda_ref, spec);
    Eigen::ComplexEigenSolver<Matrix> solver(t0);
    if (solver.info() != Eigen::Success) throw NumericalError("transfer eigenbasis: no convergence");
    const Matrix v = solver.eigenvectors();
    Eigen::PartialPivLU<Matrix> lu(v);
    const Matrix vinv = lu.inverse();
    if (!vinv.allFinite()) throw NumericalError("transfer eigenbasis is singular");
    Matrix out(static_cast<Eigen::Index>(points.size()), t0.rows());
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Matrix d = vinv * build_transfer_matrix(points[k], spec) * v;
        out.row(static_cast<Eigen::Index>(k)) = d.diagonal().transpose();
    }
    return out;
}

std::pair<Complex, Complex> k_eigenvalues_closed_form(Complex lambda, const BulkParams& bulk,
                                                      Complex p_plus, Complex p_minus,
                                                      Complex kappa) {
    const double mu = bulk.mu();
    const Complex pref = -2.0 * kI * kappa;
    return {pref * std::sinh(mu * (lambda + kI * p_plus)) * std::sinh(mu * (lambda + kI * p_minus)),
            pref * std::sinh(mu * (lambda - kI * p_plus)) * std::sinh(mu * (lambda - kI * p_minus))};
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) throw InvalidInput("multiset_distance: size mismatch");
    double worst = 0.0;
    while (!a.empty()) {
        std::size_t bi = 0, bj = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (const double d = std::abs(a[i] - b[j]); d < best) best = d, bi = i, bj = j;
        worst = std::max(worst, best);
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(bi));
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return worst;
}

}  // namespace xxzb
