#include "specgap/eigensolve.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace specgap::spectral {

namespace {

EigenSolveResult solve_dense(const AssembledSystem& sys, int k) {
  const Eigen::MatrixXd A = Eigen::MatrixXd(sys.stiffness);
  const Eigen::MatrixXd B = Eigen::MatrixXd(sys.mass);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B);
  if (es.info() != Eigen::Success) throw std::runtime_error("solve_lowest: dense eigensolver failed");

  EigenSolveResult out;
  out.vectors = es.eigenvectors().leftCols(k);
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXd x = out.vectors.col(i);
    const double r = (sys.stiffness * x - out.values[static_cast<std::size_t>(i)] * (sys.mass * x)).norm() /
                     (sys.mass * x).norm();
    out.residuals.push_back(r);
  }
  return out;
}

}  // namespace

EigenSolveResult solve_lowest(const AssembledSystem& sys, int k, const EigenSolveOptions& opts) {
  const int n = sys.size();
  if (k < 1) throw std::invalid_argument("solve_lowest: k must be >= 1");
  if (k > n) throw std::invalid_argument("solve_lowest: k exceeds system dimension");
  if (n <= 700) return solve_dense(sys, k);

  const double shift = opts.shift;
  Eigen::SparseMatrix<double> K = sys.stiffness + shift * sys.mass;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(K);
  if (factor.info() != Eigen::Success)
    throw std::runtime_error("solve_lowest: factorization of shifted stiffness failed");

  const int m_max = opts.max_basis > 0 ? std::min(opts.max_basis, n)
                                       : std::min(n, std::max(170, 10 * k + 40));
  Eigen::MatrixXd V(n, m_max + 1);   // Lanczos basis, B-orthonormal
  Eigen::MatrixXd BV(n, m_max + 1);  // mass * basis
  Eigen::VectorXd alpha(m_max), beta(m_max);

  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto random_vector = [&] {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uni(rng);
    return v;
  };

  auto b_orthonormalize = [&](Eigen::VectorXd& w, int j) {
    // two passes of classical Gram-Schmidt against V[0..j)
    for (int pass = 0; pass < 2 && j > 0; ++pass) {
      const Eigen::VectorXd coeffs = BV.leftCols(j).transpose() * w;
      w.noalias() -= V.leftCols(j) * coeffs;
    }
    Eigen::VectorXd bw = sys.mass * w;
    const double norm = std::sqrt(std::max(0.0, w.dot(bw)));
    return norm;
  };

  {
    Eigen::VectorXd v = random_vector();
    const double norm = b_orthonormalize(v, 0);
    V.col(0) = v / norm;
    BV.col(0) = sys.mass * V.col(0);
  }

  EigenSolveResult best;
  int j = 0;
  for (; j < m_max; ++j) {
    Eigen::VectorXd w = factor.solve(BV.col(j));
    alpha[j] = w.dot(BV.col(j));
    w.noalias() -= alpha[j] * V.col(j);
    if (j > 0) w.noalias() -= beta[j - 1] * V.col(j - 1);
    double norm = b_orthonormalize(w, j + 1);
    if (!(norm > 1e-13)) {
      // invariant subspace reached; continue with a fresh direction
      w = random_vector();
      norm = b_orthonormalize(w, j + 1);
      if (!(norm > 1e-13)) break;
      beta[j] = 0.0;
    } else {
      beta[j] = norm;
    }
    V.col(j + 1) = w / norm;
    BV.col(j + 1) = sys.mass * V.col(j + 1);

    const int dim = j + 1;
    if (dim < k) continue;
    if (dim % 8 != 0 && dim != m_max) continue;

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < dim) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> te(T);
    // theta = 1/(lambda + shift); largest theta <-> smallest lambda
    EigenSolveResult cand;
    cand.iterations = dim;
    cand.vectors.resize(n, k);
    bool converged = true;
    for (int i = 0; i < k; ++i) {
      const int col = dim - 1 - i;  // descending theta
      const double theta = te.eigenvalues()[col];
      if (!(theta > 0.0)) {
        converged = false;
        break;
      }
      const double lambda = 1.0 / theta - shift;
      Eigen::VectorXd x = V.leftCols(dim) * te.eigenvectors().col(col);
      const Eigen::VectorXd bx = sys.mass * x;
      const double res = (sys.stiffness * x - lambda * bx).norm() / bx.norm();
      cand.values.push_back(lambda);
      cand.vectors.col(i) = x;
      cand.residuals.push_back(res);
      if (res > opts.tol) converged = false;
    }
    if (!cand.values.empty()) {
      std::vector<int> order(cand.values.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return cand.values[static_cast<std::size_t>(a)] < cand.values[static_cast<std::size_t>(b)]; });
      EigenSolveResult sorted;
      sorted.iterations = cand.iterations;
      sorted.vectors.resize(n, k);
      for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.values.push_back(cand.values[static_cast<std::size_t>(order[i])]);
        sorted.residuals.push_back(cand.residuals[static_cast<std::size_t>(order[i])]);
        sorted.vectors.col(static_cast<int>(i)) = cand.vectors.col(order[i]);
      }
      best = std::move(sorted);
    }
    if (converged && static_cast<int>(best.values.size()) == k) return best;
  }

  std::ostringstream msg;
  msg << "solve_lowest: Lanczos did not converge (n=" << n << ", k=" << k << ", basis=" << j
      << ", residuals:";
  for (double r : best.residuals) msg << ' ' << r;
  msg << ")";
  throw std::runtime_error(msg.str());
}

}  // namespace specgap::spectral
