#include "eigedge/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "eigedge/errors.hpp"

namespace eigedge {

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < order; ++i) t += at(i, i);
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : entries) s += v * v;
    return std::sqrt(s);
}

bool SymMatrix::is_symmetric(double rel_tol) const {
    const double scale = frobenius_norm();
    const double tol = rel_tol * std::max(scale, 1e-300);
    for (int i = 0; i < order; ++i) {
        for (int j = i + 1; j < order; ++j) {
            if (std::fabs(at(i, j) - at(j, i)) > tol) return false;
        }
    }
    return true;
}

namespace {

double off_diagonal_norm(const SymMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.order; ++i) {
        for (int j = 0; j < a.order; ++j) {
            if (i != j) s += a.at(i, j) * a.at(i, j);
        }
    }
    return std::sqrt(s);
}

} // namespace

EigenDecomposition jacobi_eigen(const SymMatrix& m) {
    if (!m.is_symmetric()) {
        throw std::invalid_argument("jacobi_eigen: matrix is not symmetric");
    }
    const int d = m.order;
    SymMatrix a = m;
    std::vector<std::vector<double>> v(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i) v[i][i] = 1.0;

    const double tol = 1e-12 * m.frobenius_norm();
    constexpr int max_sweeps = 100;
    bool converged = false;
    double off = 0.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        off = off_diagonal_norm(a);
        if (off <= tol) {
            converged = true;
            break;
        }
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                double t;
                if (std::fabs(theta) > 1e100) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    const double sgn = theta >= 0.0 ? 1.0 : -1.0;
                    t = sgn / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a.at(p, p) -= t * apq;
                a.at(q, q) += t * apq;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                for (int i = 0; i < d; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = aip - s * (aiq + tau * aip);
                    a.at(p, i) = a.at(i, p);
                    a.at(i, q) = aiq + s * (aip - tau * aiq);
                    a.at(q, i) = a.at(i, q);
                }
                for (int i = 0; i < d; ++i) {
                    const double g = v[i][p], h = v[i][q];
                    v[i][p] = g - s * (h + g * tau);
                    v[i][q] = h + s * (g - h * tau);
                }
            }
        }
    }
    if (!converged && off_diagonal_norm(a) > tol) {
        std::ostringstream msg;
        msg << "jacobi_eigen: no convergence after " << max_sweeps
            << " sweeps, off-diagonal residual " << off_diagonal_norm(a);
        throw ConvergenceError(msg.str());
    }

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a.at(i, i) < a.at(j, j); });

    EigenDecomposition dec;
    dec.eigenvalues.resize(d);
    dec.eigenvectors.assign(d, std::vector<double>(d, 0.0));
    for (int j = 0; j < d; ++j) {
        dec.eigenvalues[j] = a.at(order[j], order[j]);
        std::vector<double>& col = dec.eigenvectors[j];
        for (int i = 0; i < d; ++i) col[i] = v[i][order[j]];
        int imax = 0;
        for (int i = 1; i < d; ++i) {
            if (std::fabs(col[i]) > std::fabs(col[imax])) imax = i;
        }
        if (col[imax] < 0.0) {
            for (double& x : col) x = -x;
        }
    }
    return dec;
}

} // namespace eigedge
