#include "specgrowth/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "specgrowth/util.hpp"

namespace specgrowth {

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  y.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) acc += vals[k] * x[cols[k]];
    y[i] = acc;
  }
}

double CsrMatrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) acc += std::abs(vals[k]);
    best = std::max(best, acc);
  }
  return best;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// number of eigenvalues of the tridiagonal (a, b) strictly below x
std::size_t sturm_count(const std::vector<double>& a, const std::vector<double>& b,
                        std::size_t k, double x, double scale) {
  std::size_t count = 0;
  double q = a[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < k; ++i) {
    if (q == 0.0) q = -1e-30 * std::max(1.0, scale);
    q = (a[i] - x) - b[i - 1] * b[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// smallest eigenvalue of the leading k-by-k tridiagonal block, by bisection
double tridiag_smallest(const std::vector<double>& a, const std::vector<double>& b,
                        std::size_t k, double scale) {
  double lo = a[0], hi = a[0];
  for (std::size_t i = 0; i < k; ++i) {
    double radius = (i > 0 ? std::abs(b[i - 1]) : 0.0) + (i + 1 < k ? std::abs(b[i]) : 0.0);
    lo = std::min(lo, a[i] - radius);
    hi = std::max(hi, a[i] + radius);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::max(std::abs(lo), std::abs(hi))); ++it) {
    double mid = lo + (hi - lo) / 2.0;
    if (sturm_count(a, b, k, mid, scale) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return lo + (hi - lo) / 2.0;
}

// unit eigenvector of the leading k-by-k block for an eigenvalue near theta,
// via two rounds of inverse iteration with a pivoted tridiagonal solve
std::vector<double> tridiag_eigenvector(const std::vector<double>& a, const std::vector<double>& b,
                                        std::size_t k, double theta, double scale) {
  if (k == 1) return {1.0};
  double shift = theta + std::max(std::abs(theta), scale) * 1e-13;
  std::vector<double> s(k, 1.0 / std::sqrt(static_cast<double>(k)));
  for (int round = 0; round < 2; ++round) {
    // factor (T - shift) with partial pivoting; du2 holds second-super fill
    std::vector<double> dl(k, 0.0), d(k), du(k, 0.0), du2(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) d[i] = a[i] - shift;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      dl[i] = b[i];
      du[i] = b[i];
    }
    std::vector<double> rhs = s;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = 1e-30 * std::max(1.0, scale);
        double m = dl[i] / d[i];
        d[i + 1] -= m * du[i];
        if (i + 2 < k) {
          // du2 of row i stays 0; nothing to do beyond the diagonal update
        }
        rhs[i + 1] -= m * rhs[i];
        dl[i] = 0.0;
      } else {
        // swap rows i and i+1
        double m = d[i] / dl[i];
        double d_new = du[i] - m * d[i + 1];
        double du_next = (i + 2 < k) ? du[i + 1] : 0.0;
        d[i] = dl[i];
        du[i] = d[i + 1];
        du2[i] = du_next;
        d[i + 1] = d_new;
        if (i + 2 < k) du[i + 1] = -m * du_next;
        std::swap(rhs[i], rhs[i + 1]);
        rhs[i + 1] -= m * rhs[i];
        dl[i] = 0.0;
      }
    }
    if (d[k - 1] == 0.0) d[k - 1] = 1e-30 * std::max(1.0, scale);
    // back substitution with the du2 band
    std::vector<double> x(k);
    x[k - 1] = rhs[k - 1] / d[k - 1];
    if (k >= 2) x[k - 2] = (rhs[k - 2] - du[k - 2] * x[k - 1]) / d[k - 2];
    for (std::size_t ri = k; ri-- > 0;) {
      if (ri + 2 >= k) continue;
      x[ri] = (rhs[ri] - du[ri] * x[ri + 1] - du2[ri] * x[ri + 2]) / d[ri];
    }
    double nx = norm(x);
    if (nx == 0.0 || !std::isfinite(nx)) break;
    for (double& v : x) v /= nx;
    s = std::move(x);
  }
  return s;
}

struct Cycle {
  std::vector<double> alphas;
  std::vector<double> betas;   // beta connecting step j to j+1, pushed when used
  double theta = 0.0;
  std::vector<double> s;       // tridiagonal eigenvector over the basis
  std::size_t steps = 0;       // basis size actually built
  int multiplies = 0;
};

}  // namespace

EigenResult smallest_eigenpair(const CsrMatrix& a, const SolverOptions& opts,
                               std::vector<double>* eigenvector) {
  std::size_t n = a.n;
  if (n == 0) throw validation_error("eigensolver: empty matrix");
  if (a.offsets.size() != n + 1)
    throw validation_error("eigensolver: malformed CSR offsets");
  double scale = a.inf_norm();
  double zero_floor = 1e-13 * std::max(1.0, scale);

  std::vector<double> x(n);
  if (n == 1) {
    std::vector<double> e{1.0}, y(1);
    a.multiply(e, y);
    if (eigenvector) *eigenvector = e;
    return {y[0], 0.0, 1, 0, true};
  }

  SplitMix64 rng(opts.seed);
  auto fill_random_unit = [&](std::vector<double>& v) {
    double nn = 0.0;
    while (nn == 0.0) {
      for (double& c : v) c = rng.uniform(-1.0, 1.0);
      nn = norm(v);
    }
    for (double& c : v) c /= nn;
  };
  fill_random_unit(x);

  std::size_t max_basis = std::min(opts.max_basis, n);
  if (max_basis < 2) max_basis = 2;
  bool store_basis = n * max_basis <= 12'500'000;  // ~100 MB of basis vectors

  EigenResult best;
  best.residual = kInf;
  int total_multiplies = 0;

  // one Lanczos sweep from `start`; assembles into y when accum != nullptr
  auto run_recurrence = [&](const std::vector<double>& start, Cycle& cyc, bool probe,
                            std::vector<std::vector<double>>* basis,
                            std::vector<double>* accum) {
    std::vector<double> v = start, v_prev(n, 0.0), w(n);
    for (std::size_t k = 0;; ++k) {
      if (accum && k < cyc.s.size())
        for (std::size_t i = 0; i < n; ++i) (*accum)[i] += cyc.s[k] * v[i];
      if (accum && k + 1 >= cyc.s.size()) return;  // assembly pass is done
      if (basis) basis->push_back(v);
      a.multiply(v, w);
      ++cyc.multiplies;
      if (k > 0)
        for (std::size_t i = 0; i < n; ++i) w[i] -= cyc.betas[k - 1] * v_prev[i];
      double ak = dot(w, v);
      for (std::size_t i = 0; i < n; ++i) w[i] -= ak * v[i];
      if (basis) {
        for (int pass = 0; pass < 2; ++pass)
          for (const std::vector<double>& q : *basis) {
            double c = dot(w, q);
            for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
          }
      }
      if (!accum) cyc.alphas.push_back(ak);
      double bk = norm(w);
      bool last = k + 1 >= max_basis || bk <= 1e-13 * std::max(1.0, scale);
      if (!accum) {
        cyc.steps = k + 1;
        bool do_probe = probe && (last || (k + 1) % 10 == 0);
        if (do_probe) {
          cyc.theta = tridiag_smallest(cyc.alphas, cyc.betas, cyc.steps, scale);
          cyc.s = tridiag_eigenvector(cyc.alphas, cyc.betas, cyc.steps, cyc.theta, scale);
          double res_est = bk * std::abs(cyc.s.back());
          if (opts.trace)
            *opts.trace << total_multiplies + cyc.multiplies << "," << cyc.theta << ","
                        << res_est << "\n";
          if (res_est <= 0.3 * std::max(opts.tol * std::abs(cyc.theta), zero_floor)) last = true;
        }
      }
      if (last) {
        if (!accum && cyc.s.size() != cyc.steps) {
          cyc.theta = tridiag_smallest(cyc.alphas, cyc.betas, cyc.steps, scale);
          cyc.s = tridiag_eigenvector(cyc.alphas, cyc.betas, cyc.steps, cyc.theta, scale);
        }
        return;
      }
      if (!accum) cyc.betas.push_back(bk);
      v_prev.swap(v);
      v.swap(w);
      if (v_prev.empty()) v_prev.assign(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) v[i] /= bk;
      w.assign(n, 0.0);
      // note: w is recomputed from scratch next step; v holds v_{k+1}
    }
  };

  for (std::size_t restart = 0;; ++restart) {
    if (restart >= opts.max_restarts) {
      std::ostringstream os;
      os << "eigensolver did not meet residual " << opts.tol << " within "
         << opts.max_restarts << " restarts (best lambda " << best.lambda << ", residual "
         << best.residual << ")";
      throw convergence_error(os.str(), best.lambda, best.residual, total_multiplies);
    }
    Cycle cyc;
    std::vector<std::vector<double>> basis;
    std::vector<double> y(n, 0.0);
    if (store_basis) {
      basis.reserve(max_basis);
      run_recurrence(x, cyc, true, &basis, nullptr);
      for (std::size_t k = 0; k < cyc.s.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) y[i] += cyc.s[k] * basis[k][i];
    } else {
      run_recurrence(x, cyc, true, nullptr, nullptr);
      Cycle replay = cyc;  // carries betas and s for the assembly pass
      replay.multiplies = 0;
      run_recurrence(x, replay, false, nullptr, &y);
      cyc.multiplies += replay.multiplies;
    }
    total_multiplies += cyc.multiplies;

    double ny = norm(y);
    if (ny < 1e-8) {  // ghost-dominated cycle; reseed
      fill_random_unit(x);
      continue;
    }
    for (double& c : y) c /= ny;
    std::vector<double> ay(n);
    a.multiply(y, ay);
    ++total_multiplies;
    double lambda = dot(ay, y);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = ay[i] - lambda * y[i];
      res += d * d;
    }
    res = std::sqrt(res);

    double quality = res / std::max(std::abs(lambda), zero_floor);
    if (quality < best.residual / std::max(std::abs(best.lambda), zero_floor) ||
        best.residual == kInf) {
      best.lambda = lambda;
      best.residual = res;
      if (eigenvector) *eigenvector = y;
    }
    if (res <= opts.tol * std::abs(lambda) || res <= zero_floor) {
      if (eigenvector) *eigenvector = y;
      return {lambda, res, total_multiplies, static_cast<int>(restart), true};
    }
    x = y;
  }
}

}  // namespace specgrowth
