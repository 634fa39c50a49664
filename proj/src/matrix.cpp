#include "ghzsim/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ghzsim {

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

int ComplexMatrix::dim() const {
    if (!square()) throw DimMismatch("matrix is " + std::to_string(rows_) + "x" +
                                     std::to_string(cols_) + ", expected square");
    return rows_;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimMismatch("operator+=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimMismatch("operator-=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& x : a_) x *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw DimMismatch("operator*");
    ComplexMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex{}) continue;
            const Complex* brow = &o.a_[static_cast<size_t>(k) * o.cols_];
            Complex* rrow = &r.a_[static_cast<size_t>(i) * o.cols_];
            for (int j = 0; j < o.cols_; ++j) rrow[j] += aik * brow[j];
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::conj(a_[i]);
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim(); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](const Complex& x) {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    });
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
    if (!square()) return false;
    double off = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) off += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    const double nrm = frobenius_norm();
    return std::sqrt(off) <= rel_tol * std::max(1e-300, nrm) || nrm == 0.0;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim();
    const int nb = b.dim();
    ComplexMatrix r(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return r;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
    const int n = a.dim();
    if (!a.all_finite()) throw NotHermitian("matrix has non-finite entries");
    if (!a.is_hermitian(1e-10))
        throw NotHermitian("||a - a^dag||_F exceeds 1e-10 * ||a||_F");

    ComplexMatrix m = a;
    // Symmetrize so round-off in the input cannot bias the rotations.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(m.frobenius_norm(), 1e-300);
    const double tol = 1e-14 * scale;
    const int max_sweeps = 100;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(m) <= tol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = m(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const Complex phase = apq / r;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                double t;
                if (tau >= 0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Right-multiply columns p,q of m and v by the rotation.
                for (int i = 0; i < n; ++i) {
                    const Complex mip = m(i, p);
                    const Complex miq = m(i, q);
                    m(i, p) = c * mip - s * std::conj(phase) * miq;
                    m(i, q) = s * phase * mip + c * miq;
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(phase) * viq;
                    v(i, q) = s * phase * vip + c * viq;
                }
                // Left-multiply rows p,q by the adjoint rotation.
                for (int j = 0; j < n; ++j) {
                    const Complex mpj = m(p, j);
                    const Complex mqj = m(q, j);
                    m(p, j) = c * mpj - s * phase * mqj;
                    m(q, j) = s * std::conj(phase) * mpj + c * mqj;
                }
                m(p, q) = std::conj(m(q, p));  // keep exactly Hermitian
            }
        }
    }
    if (sweep == max_sweeps && offdiag_norm(m) > tol)
        throw NoConvergence("Jacobi sweeps exhausted (" + std::to_string(max_sweeps) + ")");

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = m(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return diag[i] < diag[j]; });
    out.eigenvectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a) {
    const EigenDecomposition ed = hermitian_eig(a);
    const int n = a.dim();
    for (double lam : ed.eigenvalues)
        if (lam < -1e-9)
            throw NotPSD("eigenvalue " + std::to_string(lam) + " below -1e-9");
    ComplexMatrix r(n);
    const ComplexMatrix& v = ed.eigenvectors;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < n; ++k) {
                const double lam = std::max(ed.eigenvalues[k], 0.0);
                s += v(i, k) * std::sqrt(lam) * std::conj(v(j, k));
            }
            r(i, j) = s;
        }
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::set<int>& keep) {
    if (rho.rows() != 8 || rho.cols() != 8) throw DimMismatch("partial_trace expects 8x8");
    if (keep.empty() || keep.size() >= 3) throw BadSubset("keep must be a proper nonempty subset");
    for (int q : keep)
        if (q < 1 || q > 3) throw BadSubset("qubit index " + std::to_string(q) + " not in {1,2,3}");

    std::vector<int> kept(keep.begin(), keep.end());  // ascending
    std::vector<int> traced;
    for (int q = 1; q <= 3; ++q)
        if (!keep.count(q)) traced.push_back(q);

    const int nk = static_cast<int>(kept.size());
    const int nt = static_cast<int>(traced.size());
    const int dk = 1 << nk;
    ComplexMatrix r(dk);

    auto bit_pos = [](int q) { return 3 - q; };  // qubit 1 = MSB
    for (int a = 0; a < dk; ++a) {
        for (int b = 0; b < dk; ++b) {
            Complex s = 0.0;
            for (int t = 0; t < (1 << nt); ++t) {
                int row = 0, col = 0;
                for (int i = 0; i < nk; ++i) {
                    const int bit = (a >> (nk - 1 - i)) & 1;
                    const int bbit = (b >> (nk - 1 - i)) & 1;
                    row |= bit << bit_pos(kept[i]);
                    col |= bbit << bit_pos(kept[i]);
                }
                for (int i = 0; i < nt; ++i) {
                    const int bit = (t >> (nt - 1 - i)) & 1;
                    row |= bit << bit_pos(traced[i]);
                    col |= bit << bit_pos(traced[i]);
                }
                s += rho(row, col);
            }
            r(a, b) = s;
        }
    }
    return r;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimMismatch("frobenius_distance");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - b(i, j));
    return std::sqrt(s);
}

double spectral_norm_hermitian(const ComplexMatrix& a) {
    const EigenDecomposition ed = hermitian_eig(a);
    double m = 0.0;
    for (double lam : ed.eigenvalues) m = std::max(m, std::abs(lam));
    return m;
}

ComplexMatrix solve_linear(ComplexMatrix a, ComplexMatrix b) {
    const int n = a.dim();
    if (b.rows() != n) throw DimMismatch("solve_linear rhs rows");
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) < 1e-300)
            throw DegenerateDenominator("singular matrix in solve_linear");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            for (int j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(piv, j));
        }
        const Complex d = a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const Complex f = a(r, col) / d;
            if (f == Complex{}) continue;
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            for (int j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
        }
    }
    ComplexMatrix x(n, b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        for (int r = n - 1; r >= 0; --r) {
            Complex s = b(r, j);
            for (int k = r + 1; k < n; ++k) s -= a(r, k) * x(k, j);
            x(r, j) = s / a(r, r);
        }
    }
    return x;
}

}  // namespace ghzsim
