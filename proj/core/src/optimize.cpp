// Copyright 2026 The qotsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qot/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "qot/error.hpp"

namespace qot {
namespace {

using Vec = Eigen::VectorXd;

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

class Counted {
 public:
  explicit Counted(const Objective& f) : f_(f) {}
  double operator()(const Vec& x) {
    ++count;
    return f_(to_std(x));
  }
  int count = 0;

 private:
  const Objective& f_;
};

Vec gradient(Counted& f, const Vec& x, double h) {
  Vec g(x.size());
  Vec xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    xp(i) = xi + h;
    const double fp = f(xp);
    xp(i) = xi - h;
    const double fm = f(xp);
    xp(i) = xi;
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace

OptimResult minimize_bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& opts) {
  if (x0.empty()) throw DomainError("minimize_bfgs: empty starting point");
  Counted fn(f);
  const Eigen::Index n = static_cast<Eigen::Index>(x0.size());
  Vec x = Eigen::Map<Vec>(x0.data(), n);
  double fx = fn(x);
  Vec g = gradient(fn, x, opts.fd_step);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);

  OptimResult res;
  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it + 1;
    if (g.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance) {
      res.converged = true;
      break;
    }
    Vec p = -h * g;
    if (p.dot(g) >= 0.0) {  // lost descent direction; restart from steepest descent
      h.setIdentity();
      p = -g;
    }
    double step = 1.0;
    Vec xn;
    double fn_new = fx;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * p;
      fn_new = fn(xn);
      if (fn_new <= fx + 1e-4 * step * g.dot(p)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.converged = g.lpNorm<Eigen::Infinity>() < std::sqrt(opts.gradient_tolerance);
      break;
    }
    const Vec gn = gradient(fn, xn, opts.fd_step);
    const Vec s = xn - x;
    const Vec y = gn - g;
    const double sy = s.dot(y);
    if (sy > 1e-16) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      h = (id - rho * s * y.transpose()) * h * (id - rho * y * s.transpose()) +
          rho * s * s.transpose();
    }
    const double decrease = fx - fn_new;
    x = xn;
    fx = fn_new;
    g = gn;
    res.history.push_back(fx);
    if (decrease >= 0.0 && decrease < opts.value_tolerance * std::max(1.0, std::abs(fx))) {
      res.converged = true;
      break;
    }
  }
  res.x = to_std(x);
  res.value = fx;
  res.evaluations = fn.count;
  return res;
}

OptimResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                 const NelderMeadOptions& opts) {
  if (x0.empty()) throw DomainError("minimize_nelder_mead: empty starting point");
  Counted fn(f);
  const Eigen::Index n = static_cast<Eigen::Index>(x0.size());
  std::vector<Vec> pts;
  std::vector<double> vals;
  const Vec start = Eigen::Map<Vec>(x0.data(), n);
  pts.push_back(start);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec p = start;
    p(i) += opts.initial_step;
    pts.push_back(p);
  }
  for (const auto& p : pts) vals.push_back(fn(p));

  std::vector<std::size_t> order(pts.size());
  OptimResult res;
  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it + 1;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    res.history.push_back(vals[best]);
    if (std::abs(vals[worst] - vals[best]) <=
        opts.value_tolerance * std::max(1.0, std::abs(vals[best]))) {
      res.converged = true;
      break;
    }
    Vec centroid = Vec::Zero(n);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k != worst) centroid += pts[k];
    }
    centroid /= static_cast<double>(n);

    const Vec xr = centroid + (centroid - pts[worst]);
    const double fr = fn(xr);
    if (fr < vals[best]) {
      const Vec xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = fn(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const Vec xc = outside ? Vec(centroid + 0.5 * (xr - centroid))
                             : Vec(centroid + 0.5 * (pts[worst] - centroid));
      const double fc = fn(xc);
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t k = 0; k < pts.size(); ++k) {
          if (k == best) continue;
          pts[k] = pts[best] + 0.5 * (pts[k] - pts[best]);
          vals[k] = fn(pts[k]);
        }
      }
    }
  }
  const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
  res.x = to_std(pts[best]);
  res.value = vals[best];
  res.evaluations = fn.count;
  return res;
}

}  // namespace qot
