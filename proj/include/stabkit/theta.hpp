// Copyright 2026 The stabkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABKIT_THETA_HPP_
#define STABKIT_THETA_HPP_

// Lovasz theta by a projection splitting on dense matrices:
//
//   maximize <J, X>  subject to  X PSD, tr X = 1, X_ij = 0 on edges.
//
// Each iteration projects onto the affine constraint set (closed form: zero
// the edge entries, shift the diagonal to unit trace) and onto the PSD cone
// (eigenvalue clipping), coupled by a scaled multiplier and over-relaxation.
// This is ADMM on the splitting f(X) = -<J,X> + 1_A(X), g(Z) = 1_PSD(Z).
//
// Reported value: the PSD iterate is projected exactly onto the affine set,
// then shifted by eps I (eps = its most negative eigenvalue) and rescaled to
// unit trace. That matrix is feasible, so the value is a lower bound on theta.
// The multiplier gives an upper bound lambda_max(J with edge entries set to
// the multiplier); the solver stops once the two bounds are within tol.
//
// The splitting converges slowly on some degenerate instances. When it has
// not certified the gap within max_iterations, a primal-dual interior-point
// method (HKM direction, started from the feasible pair X = I/N,
// S = (N+1)I - J) finishes the solve and is certified the same way.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "stabkit/errors.hpp"
#include "stabkit/graphs.hpp"

namespace stabkit {

inline constexpr int kMaxThetaOrder = 64;

struct ThetaOptions {
    double tol = 1e-6;
    int max_iterations = 2000;  // splitting iterations
    double relaxation = 1.6;
    int check_every = 10;
    bool interior_point_fallback = true;
    int max_interior_iterations = 200;
};

struct ThetaResiduals {
    double psd_violation = 0;
    double trace_gap = 0;
    double edge_violation = 0;
};

struct ThetaResult {
    double value = 0;
    double upper_bound = 0;
    Eigen::MatrixXd primal_matrix;
    ThetaResiduals residuals;
    int iterations = 0;  // splitting plus interior-point iterations
    std::string method = "splitting";  // or "interior_point"
};

/// Raised when the iteration cap is hit; carries the last iterate.
class ThetaNotConverged : public CapExceeded {
   public:
    ThetaNotConverged(const std::string &what, ThetaResult last) : CapExceeded(what), result(std::move(last)) {}
    ThetaResult result;
};

namespace detail {

class ThetaSolver {
   public:
    ThetaSolver(const SimpleGraph &g, const ThetaOptions &options)
        : n_(g.order()), edges_(g.edges()), opts_(options) {}

    ThetaResult solve() {
        using Eigen::MatrixXd;
        const double n = n_;
        const MatrixXd ones = MatrixXd::Ones(n_, n_);
        MatrixXd z = MatrixXd::Identity(n_, n_) / n;
        MatrixXd u = MatrixXd::Zero(n_, n_);
        double rho = n;
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig;
        ThetaResult best;
        for (int it = 1; it <= opts_.max_iterations; ++it) {
            MatrixXd x = z - u + ones / rho;
            project_affine(x);
            const MatrixXd xh = opts_.relaxation * x + (1 - opts_.relaxation) * z;
            const MatrixXd z_old = z;
            eig.compute(xh + u);
            z = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).asDiagonal() * eig.eigenvectors().transpose();
            u += xh - z;

            if (it % opts_.check_every != 0 && it != opts_.max_iterations) {
                continue;
            }
            best = certificate(z, splitting_edge_weights(u * rho), it);
            const double gap = best.upper_bound - best.value;
            if (best.residuals.psd_violation <= opts_.tol && gap <= opts_.tol) {
                return best;
            }
            if (it % 100 != 0) {
                continue;
            }
            const double r_primal = (x - z).norm();
            const double r_dual = rho * (z - z_old).norm();
            if (r_primal > 10 * r_dual) {
                rho *= 2;
                u /= 2;
            } else if (r_dual > 10 * r_primal) {
                rho /= 2;
                u *= 2;
            }
        }
        if (opts_.interior_point_fallback) {
            return interior_point(best);
        }
        throw not_converged(best);
    }

   private:
    ThetaNotConverged not_converged(const ThetaResult &last) const {
        return ThetaNotConverged("lovasz_theta: no convergence within " + std::to_string(last.iterations) +
                                     " iterations (psd residual " + std::to_string(last.residuals.psd_violation) +
                                     ", bound gap " + std::to_string(last.upper_bound - last.value) + ")",
                                 last);
    }

    std::vector<double> splitting_edge_weights(const Eigen::MatrixXd &dual) const {
        std::vector<double> w;
        w.reserve(edges_.size());
        for (auto [i, j] : edges_) {
            w.push_back(0.5 * (dual(i, j) + dual(j, i)));
        }
        return w;
    }

    // Largest alpha with m + alpha dm PSD, for m positive definite.
    static double max_step(const Eigen::MatrixXd &m, const Eigen::MatrixXd &dm) {
        const Eigen::LLT<Eigen::MatrixXd> llt(m);
        const Eigen::MatrixXd l_inv = llt.matrixL().solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
        const Eigen::MatrixXd scaled = l_inv * dm * l_inv.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (scaled + scaled.transpose()), Eigen::EigenvaluesOnly);
        const double lo = eig.eigenvalues()(0);
        return lo >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
    }

    // Shrinks alpha until m + alpha dm has a Cholesky factor; 0 if none found.
    static double backtrack(const Eigen::MatrixXd &m, const Eigen::MatrixXd &dm, double alpha) {
        for (int k = 0; k < 60; ++k, alpha *= 0.8) {
            const Eigen::MatrixXd next = m + alpha * dm;
            if (Eigen::LLT<Eigen::MatrixXd>(0.5 * (next + next.transpose())).info() == Eigen::Success) {
                return alpha;
            }
        }
        return 0;
    }

    // Standard form: minimize <C, X> with C = -J subject to <I, X> = 1 and
    // <E_e, X> = 0 for each edge e, where E_e = e_i e_j^T + e_j e_i^T. The dual
    // slack is S = C - y_0 I - sum_e y_e E_e.
    ThetaResult interior_point(const ThetaResult &from_splitting) const {
        using Eigen::MatrixXd;
        using Eigen::VectorXd;
        const int n = n_;
        const auto m = static_cast<Eigen::Index>(edges_.size()) + 1;
        const MatrixXd c = -MatrixXd::Ones(n, n);
        MatrixXd x = MatrixXd::Identity(n, n) / n;
        VectorXd y = VectorXd::Zero(m);
        y(0) = -(n + 1.0);
        MatrixXd s = c - y(0) * MatrixXd::Identity(n, n);

        auto apply_a = [&](const MatrixXd &v) {
            VectorXd out(m);
            out(0) = v.trace();
            for (std::size_t e = 0; e < edges_.size(); ++e) {
                const auto [i, j] = edges_[e];
                out(static_cast<Eigen::Index>(e) + 1) = v(i, j) + v(j, i);
            }
            return out;
        };
        auto apply_at = [&](const VectorXd &v) {
            MatrixXd out = v(0) * MatrixXd::Identity(n, n);
            for (std::size_t e = 0; e < edges_.size(); ++e) {
                const auto [i, j] = edges_[e];
                out(i, j) += v(static_cast<Eigen::Index>(e) + 1);
                out(j, i) += v(static_cast<Eigen::Index>(e) + 1);
            }
            return out;
        };
        VectorXd b = VectorXd::Zero(m);
        b(0) = 1;

        ThetaResult best = from_splitting;
        for (int it = 1; it <= opts_.max_interior_iterations; ++it) {
            const MatrixXd w = s.llt().solve(MatrixXd::Identity(n, n));
            const double mu = x.cwiseProduct(s).sum() / n;
            const VectorXd rp = b - apply_a(x);
            const MatrixXd rd = c - s - apply_at(y);

            // Schur complement M_kl = <A_k, X A_l W>.
            const MatrixXd p = x * w;
            MatrixXd schur(m, m);
            schur(0, 0) = p.trace();
            for (Eigen::Index e = 1; e < m; ++e) {
                const auto [i, j] = edges_[static_cast<std::size_t>(e - 1)];
                schur(0, e) = schur(e, 0) = p(i, j) + p(j, i);
                for (Eigen::Index f = e; f < m; ++f) {
                    const auto [k, l] = edges_[static_cast<std::size_t>(f - 1)];
                    schur(e, f) = schur(f, e) =
                        x(j, k) * w(l, i) + x(j, l) * w(k, i) + x(i, k) * w(l, j) + x(i, l) * w(k, j);
                }
            }
            const double sigma = mu > 1e-3 ? 0.1 : 0.01;
            const VectorXd rhs = rp - apply_a(sigma * mu * w - x - x * rd * w);
            const VectorXd dy = schur.ldlt().solve(rhs);
            const MatrixXd ds = rd - apply_at(dy);
            MatrixXd dx = sigma * mu * w - x - x * ds * w;
            dx = (0.5 * (dx + dx.transpose())).eval();

            const double ap = backtrack(x, dx, std::min(1.0, 0.95 * max_step(x, dx)));
            const double ad = backtrack(s, ds, std::min(1.0, 0.95 * max_step(s, ds)));
            if (ap == 0 && ad == 0) {
                break;
            }
            x += ap * dx;
            y += ad * dy;
            s += ad * ds;
            x = (0.5 * (x + x.transpose())).eval();
            s = (0.5 * (s + s.transpose())).eval();

            std::vector<double> weights(edges_.size());
            for (std::size_t e = 0; e < edges_.size(); ++e) {
                weights[e] = 1.0 + y(static_cast<Eigen::Index>(e) + 1);
            }
            best = certificate(x, weights, from_splitting.iterations + it);
            best.method = "interior_point";
            if (best.residuals.psd_violation <= opts_.tol && best.upper_bound - best.value <= opts_.tol) {
                return best;
            }
        }
        throw not_converged(best);
    }

    void project_affine(Eigen::MatrixXd &m) const {
        m = (0.5 * (m + m.transpose())).eval();
        for (auto [i, j] : edges_) {
            m(i, j) = 0;
            m(j, i) = 0;
        }
        const double shift = (1.0 - m.trace()) / n_;
        m.diagonal().array() += shift;
    }

    ThetaResult certificate(const Eigen::MatrixXd &z, const std::vector<double> &edge_weights, int iterations) const {
        ThetaResult r;
        r.iterations = iterations;
        r.primal_matrix = z;
        project_affine(r.primal_matrix);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r.primal_matrix, Eigen::EigenvaluesOnly);
        // Shift by eps I and rescale to unit trace: this keeps the edge zeros
        // and makes the matrix PSD, so the value is a feasible lower bound.
        const double eps = std::max(0.0, -eig.eigenvalues()(0));
        if (eps > 0) {
            r.primal_matrix.diagonal().array() += eps;
            r.primal_matrix /= 1.0 + n_ * eps;
        }
        r.residuals.psd_violation = std::max(0.0, -(eig.eigenvalues()(0) + eps) / (1.0 + n_ * eps));
        r.residuals.trace_gap = std::abs(r.primal_matrix.trace() - 1.0);
        double edge = 0;
        for (auto [i, j] : edges_) {
            edge = std::max(edge, std::abs(r.primal_matrix(i, j)));
        }
        r.residuals.edge_violation = edge;
        r.value = r.primal_matrix.sum();

        Eigen::MatrixXd d = Eigen::MatrixXd::Ones(n_, n_);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto [i, j] = edges_[e];
            d(i, j) = edge_weights[e];
            d(j, i) = edge_weights[e];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> deig(d, Eigen::EigenvaluesOnly);
        r.upper_bound = deig.eigenvalues()(n_ - 1);
        return r;
    }

    int n_;
    std::vector<std::pair<int, int>> edges_;
    ThetaOptions opts_;
};

}  // namespace detail

/// Lovasz theta of g (N <= 64) with residuals and bound gap within opts.tol.
inline ThetaResult lovasz_theta(const SimpleGraph &g, const ThetaOptions &opts) {
    detail::require(g.order() >= 1, "lovasz_theta: graph must be nonempty");
    if (g.order() > kMaxThetaOrder) {
        throw CapExceeded("lovasz_theta: order " + std::to_string(g.order()) + " exceeds the cap of 64");
    }
    detail::require(opts.tol >= 1e-8 && opts.tol <= 1e-3, "lovasz_theta: tol must lie in [1e-8, 1e-3]");
    detail::require(opts.max_iterations >= 1, "lovasz_theta: iteration cap must be positive");
    return detail::ThetaSolver(g, opts).solve();
}

inline ThetaResult lovasz_theta(const SimpleGraph &g, double tol = 1e-6) {
    ThetaOptions opts;
    opts.tol = tol;
    return lovasz_theta(g, opts);
}

}  // namespace stabkit

#endif  // STABKIT_THETA_HPP_
