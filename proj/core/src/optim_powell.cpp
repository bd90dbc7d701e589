// Copyright 2026 The vqebench Authors
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

// Powell's conjugate direction method: coordinate-initialized direction set,
// Brent line searches restricted to the box, and the classical rule for
// replacing the direction of largest decrease.

#include "optim_detail.hpp"

namespace vqeb::detail {
namespace {

constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5) / 2
constexpr double kGrow = 1.618033988749895;

class LineSearch {
 public:
  LineSearch(Evaluator& eval, const PowellOptions& opts) : eval_(eval), opts_(opts) {}

  /// Minimizes along u from x (value fx), updating both in place.
  void minimize(std::vector<double>& x, double& fx, std::span<const double> u) {
    x_ = &x;
    u_ = u;
    double tlo = -std::numeric_limits<double>::infinity();
    double thi = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (u[j] == 0.0) continue;
      double a = (eval_.lower(j) - x[j]) / u[j];
      double b = (eval_.upper(j) - x[j]) / u[j];
      if (a > b) std::swap(a, b);
      tlo = std::max(tlo, a);
      thi = std::min(thi, b);
    }
    tlo = std::min(tlo, 0.0);
    thi = std::max(thi, 0.0);
    if (thi - tlo <= 0.0) return;

    best_t_ = 0.0;
    best_f_ = fx;
    double lo = 0.0;
    double hi = 0.0;
    bracket(fx, tlo, thi, lo, hi);
    brent(lo, hi);

    if (best_t_ != 0.0) {
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += best_t_ * u[j];
      eval_.project(x);
      fx = best_f_;
    }
  }

 private:
  double at(double t) {
    std::vector<double> p(*x_);
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += t * u_[j];
    eval_.project(p);
    const double f = eval_(p);
    if (f < best_f_) {
      best_f_ = f;
      best_t_ = t;
    }
    return f;
  }

  // Produces an interval [lo, hi] around the current best abscissa.
  void bracket(double f0, double tlo, double thi, double& lo, double& hi) {
    double step = opts_.initial_bracket;
    double b = std::min(step, thi);
    double sign = 1.0;
    if (b <= 0.0) {
      b = std::max(-step, tlo);
      sign = -1.0;
    }
    double fb = at(b);
    if (fb >= f0) {
      if (sign > 0.0 && tlo < 0.0) {
        const double c = std::max(-step, tlo);
        const double fc = at(c);
        if (fc >= f0) {
          lo = c;
          hi = b;
          return;
        }
        sign = -1.0;
        b = c;
        fb = fc;
      } else {
        lo = std::min(0.0, b);
        hi = std::max(0.0, b);
        return;
      }
    }
    // Expand in the descent direction until the value rises or the box ends.
    double a = 0.0;
    for (;;) {
      const double limit = sign > 0.0 ? thi : tlo;
      if (b == limit) {
        lo = std::min(a, b);
        hi = std::max(a, b);
        return;
      }
      double c = b + kGrow * (b - a);
      c = sign > 0.0 ? std::min(c, thi) : std::max(c, tlo);
      const double fc = at(c);
      if (fc >= fb) {
        lo = std::min(a, c);
        hi = std::max(a, c);
        return;
      }
      a = b;
      b = c;
      fb = fc;
    }
  }

  // Brent's parabolic/golden-section minimization on [a, b] seeded with the
  // best point seen so far.
  void brent(double a, double b) {
    double x = best_t_;
    double fxv = best_f_;
    double w = x, v = x, fw = fxv, fv = fxv;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      const double m = 0.5 * (a + b);
      const double tol1 = opts_.line_tol * std::abs(x) + 1e-10;
      const double tol2 = 2.0 * tol1;
      if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) return;
      bool golden = true;
      if (std::abs(e) > tol1) {
        double r = (x - w) * (fxv - fv);
        double q = (x - v) * (fxv - fw);
        double p = (x - v) * q - (x - w) * r;
        q = 2.0 * (q - r);
        if (q > 0.0) p = -p;
        q = std::abs(q);
        const double etemp = e;
        e = d;
        if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
          d = p / q;
          const double u = x + d;
          if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
          golden = false;
        }
      }
      if (golden) {
        e = (x >= m) ? a - x : b - x;
        d = kGolden * e;
      }
      const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
      const double fu = at(u);
      if (fu <= fxv) {
        if (u >= x) a = x; else b = x;
        v = w; fv = fw;
        w = x; fw = fxv;
        x = u; fxv = fu;
      } else {
        if (u < x) a = u; else b = u;
        if (fu <= fw || w == x) {
          v = w; fv = fw;
          w = u; fw = fu;
        } else if (fu <= fv || v == x || v == w) {
          v = u; fv = fu;
        }
      }
    }
  }

  Evaluator& eval_;
  const PowellOptions& opts_;
  std::vector<double>* x_ = nullptr;
  std::span<const double> u_;
  double best_t_ = 0.0;
  double best_f_ = 0.0;
};

}  // namespace

void run_powell(Evaluator& eval, std::vector<double> x, const PowellOptions& opts) {
  const std::size_t n = eval.dimension();
  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) dirs[i][i] = 1.0;

  LineSearch line(eval, opts);
  double fx = eval(x);
  for (;;) {
    const std::vector<double> start = x;
    const double fstart = fx;
    double biggest = 0.0;
    std::size_t ibig = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double before = fx;
      line.minimize(x, fx, dirs[i]);
      if (before - fx > biggest) {
        biggest = before - fx;
        ibig = i;
      }
    }

    std::vector<double> delta(n);
    for (std::size_t j = 0; j < n; ++j) delta[j] = x[j] - start[j];
    const double moved = norm2(delta);
    if (moved < opts.min_step) return;

    std::vector<double> extrapolated(n);
    for (std::size_t j = 0; j < n; ++j) extrapolated[j] = x[j] + delta[j];
    eval.project(extrapolated);
    const double fe = eval(extrapolated);
    if (fe < fstart) {
      const double t = 2.0 * (fstart - 2.0 * fx + fe) * (fstart - fx - biggest) * (fstart - fx - biggest) -
                       biggest * (fstart - fe) * (fstart - fe);
      if (t < 0.0) {
        for (double& v : delta) v /= moved;
        line.minimize(x, fx, delta);
        dirs[ibig] = dirs.back();
        dirs.back() = delta;
      }
    }
  }
}

}  // namespace vqeb::detail
