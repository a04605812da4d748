// Copyright 2026 The speechcx Authors.
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

#include "speechcx/clm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "speechcx/error.hpp"
#include "speechcx/io_util.hpp"
#include "speechcx/text_util.hpp"

namespace speechcx {

namespace {

double logistic(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

constexpr double kStationaryDecrement = 1e-12;

double logit(double p) { return std::log(p / (1.0 - p)); }

// True when some cut between adjacent classes splits the predictor without
// overlap (ties allowed), in either direction. The slope MLE does not exist then.
bool separable(std::span<const double> z, std::span<const int> cls, int classes) {
  for (int cut = 0; cut + 1 < classes; ++cut) {
    double lo_min = INFINITY, lo_max = -INFINITY, hi_min = INFINITY, hi_max = -INFINITY;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (cls[i] <= cut) {
        lo_min = std::min(lo_min, z[i]);
        lo_max = std::max(lo_max, z[i]);
      } else {
        hi_min = std::min(hi_min, z[i]);
        hi_max = std::max(hi_max, z[i]);
      }
    }
    if (lo_max <= hi_min || hi_max <= lo_min) return true;
  }
  return false;
}

struct Evaluation {
  double loglik = 0;
  Eigen::VectorXd grad;  // over (theta_1..theta_{J-1}, beta)
  Eigen::MatrixXd hess;
};

// Log-likelihood with gradient and Hessian in (theta, beta).
Evaluation evaluate(std::span<const double> z, std::span<const int> cls,
                    const std::vector<double>& theta, double beta, bool with_beta) {
  const int k = static_cast<int>(theta.size());
  const int dim = k + (with_beta ? 1 : 0);
  Evaluation ev;
  ev.grad = Eigen::VectorXd::Zero(dim);
  ev.hess = Eigen::MatrixXd::Zero(dim, dim);
  const int b_idx = k;

  for (std::size_t i = 0; i < z.size(); ++i) {
    const int c = cls[i];  // 0..J-1
    const double x = z[i];
    const bool has_upper = c < k;
    const bool has_lower = c > 0;
    double fa = 1, ga = 0, ha = 0;
    double fb = 0, gb = 0, hb = 0;
    if (has_upper) {
      fa = logistic(theta[c] - beta * x);
      ga = fa * (1 - fa);
      ha = ga * (1 - 2 * fa);
    }
    if (has_lower) {
      fb = logistic(theta[c - 1] - beta * x);
      gb = fb * (1 - fb);
      hb = gb * (1 - 2 * fb);
    }
    // Computing p from the complementary tail where it is tiny keeps the
    // log finite far out in the tails.
    double p = fa - fb;
    if (!has_upper) p = logistic(-(theta[c - 1] - beta * x));
    if (!has_lower) p = fa;
    p = std::max(p, 1e-300);
    ev.loglik += std::log(p);

    const double p2 = p * p;
    if (has_upper) {
      ev.grad[c] += ga / p;
      ev.hess(c, c) += ha / p - ga * ga / p2;
    }
    if (has_lower) {
      ev.grad[c - 1] -= gb / p;
      ev.hess(c - 1, c - 1) += -hb / p - gb * gb / p2;
    }
    if (has_upper && has_lower) {
      ev.hess(c, c - 1) += ga * gb / p2;
      ev.hess(c - 1, c) += ga * gb / p2;
    }
    if (with_beta) {
      const double dg = ga - gb;
      ev.grad[b_idx] += -x * dg / p;
      ev.hess(b_idx, b_idx) += x * x * ((ha - hb) / p - dg * dg / p2);
      if (has_upper) {
        const double v = -x * (ha / p - ga * dg / p2);
        ev.hess(c, b_idx) += v;
        ev.hess(b_idx, c) += v;
      }
      if (has_lower) {
        const double v = x * (hb / p - gb * dg / p2);
        ev.hess(c - 1, b_idx) += v;
        ev.hess(b_idx, c - 1) += v;
      }
    }
  }
  return ev;
}

// theta_1 = u_1, theta_j = theta_{j-1} + exp(u_j).
std::vector<double> thresholds_from(const Eigen::VectorXd& u, int k) {
  std::vector<double> theta(k);
  theta[0] = u[0];
  for (int j = 1; j < k; ++j) theta[j] = theta[j - 1] + std::exp(u[j]);
  return theta;
}

}  // namespace

double clm_loglik(std::span<const double> z, std::span<const int> classes,
                  std::span<const double> thresholds, double beta) {
  std::vector<double> theta(thresholds.begin(), thresholds.end());
  return evaluate(z, classes, theta, beta, false).loglik;
}

ClmFit fit_clm(std::span<const double> x, std::span<const int> y, const ClmOptions& options) {
  if (x.size() != y.size()) throw ValidationError("fit_clm: x and y differ in length");
  ClmFit fit;
  fit.levels.assign(y.begin(), y.end());
  std::sort(fit.levels.begin(), fit.levels.end());
  fit.levels.erase(std::unique(fit.levels.begin(), fit.levels.end()), fit.levels.end());
  if (fit.levels.size() < 2) throw ValidationError("fit_clm: need at least two outcome classes");

  const std::size_t n = x.size();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0)) throw DomainError("fit_clm: constant predictor");

  std::vector<double> z(n);
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = (x[i] - mean) / sd;
    cls[i] = static_cast<int>(std::lower_bound(fit.levels.begin(), fit.levels.end(), y[i]) -
                              fit.levels.begin());
  }

  const int k = static_cast<int>(fit.levels.size()) - 1;
  const bool with_beta = !options.fix_beta_zero;
  const bool diverges = with_beta && separable(z, cls, k + 1);
  const int dim = k + (with_beta ? 1 : 0);

  // Start from equally spaced cumulative probabilities j/J and beta = 0.
  Eigen::VectorXd u(dim);
  {
    const double classes = static_cast<double>(k + 1);
    u[0] = logit(1.0 / classes);
    for (int j = 1; j < k; ++j) {
      u[j] = std::log(logit((j + 1) / classes) - logit(j / classes));
    }
    if (with_beta) u[k] = 0;
  }

  auto beta_of = [&](const Eigen::VectorXd& v) { return with_beta ? v[k] : 0.0; };

  auto eval_u = [&](const Eigen::VectorXd& v) {
    return evaluate(z, cls, thresholds_from(v, k), beta_of(v), with_beta);
  };

  Evaluation ev = eval_u(u);
  fit.loglik_trace.push_back(ev.loglik);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (!diverges && ev.grad.cwiseAbs().maxCoeff() < options.gradient_tolerance) {
      fit.converged = true;
      break;
    }
    fit.iterations = iter + 1;

    // Chain rule into u-space.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j < k; ++j) {
      jac(j, 0) = 1.0;
      for (int m = 1; m <= j; ++m) jac(j, m) = std::exp(u[m]);
    }
    if (with_beta) jac(k, k) = 1.0;
    const Eigen::VectorXd g = jac.transpose() * ev.grad;
    Eigen::MatrixXd h = jac.transpose() * ev.hess * jac;
    for (int m = 1; m < k; ++m) {
      double s = 0;
      for (int j = m; j < k; ++j) s += ev.grad[j];
      h(m, m) += s * std::exp(u[m]);
    }

    // Newton direction on -H, ridged until positive definite.
    const Eigen::MatrixXd neg = -h;
    Eigen::VectorXd dir;
    double ridge = 0;
    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::LLT<Eigen::MatrixXd> llt(neg + ridge * Eigen::MatrixXd::Identity(dim, dim));
      if (llt.info() == Eigen::Success) {
        dir = llt.solve(g);
        break;
      }
      ridge = ridge == 0 ? 1e-8 * std::max(1.0, neg.diagonal().cwiseAbs().maxCoeff()) : ridge * 10;
    }
    if (dir.size() == 0) dir = g;
    // Newton decrement: about twice the likelihood gain still available.
    const double decrement = g.dot(dir);

    // Step halving: accept the first step that does not lower the likelihood.
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd next;
    Evaluation next_ev;
    for (int half = 0; half < 40; ++half) {
      next = u + step * dir;
      next_ev = eval_u(next);
      if (std::isfinite(next_ev.loglik) && next_ev.loglik >= ev.loglik) {
        accepted = true;
        break;
      }
      step /= 2;
    }
    const bool flat = !accepted || next_ev.loglik == ev.loglik;
    if (flat && decrement < kStationaryDecrement) {
      // Remaining gain is below double resolution of the log-likelihood.
      if (accepted) {
        u = next;
        ev = std::move(next_ev);
      }
      fit.converged = !diverges;
      break;
    }
    if (!accepted) break;

    u = next;
    ev = std::move(next_ev);
    fit.loglik_trace.push_back(ev.loglik);

    if (with_beta && std::abs(u[k]) > options.beta_cap) {
      u[k] = std::copysign(options.beta_cap, u[k]);
      ev = eval_u(u);
      fit.separated = true;
      break;
    }
  }
  if (diverges) {
    fit.separated = true;
    fit.converged = false;
  } else if (!fit.converged && !fit.separated &&
             ev.grad.cwiseAbs().maxCoeff() < options.gradient_tolerance) {
    fit.converged = true;
  }

  fit.thresholds = thresholds_from(u, k);
  fit.beta = beta_of(u);
  fit.loglik = ev.loglik;
  fit.fi = 0;
  for (double t : fit.thresholds) fit.fi += std::abs(t);
  return fit;
}

FeatureRanking rank_features(const ScoreTable& table, const std::map<std::string, int>& labels,
                             const ClmOptions& options) {
  table.validate();
  FeatureRanking out;
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    const std::string& name = table.columns[j];
    std::vector<double> x;
    std::vector<int> y;
    for (std::size_t i = 0; i < table.row_ids.size(); ++i) {
      const auto it = labels.find(table.row_ids[i]);
      if (it == labels.end() || !table.values[i][j]) continue;
      x.push_back(*table.values[i][j]);
      y.push_back(it->second);
    }
    std::vector<int> levels = y;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() < 2) {
      out.skipped.push_back({name, "fewer than two outcome classes in complete cases"});
      continue;
    }
    if (x.size() < levels.size() + 2) {
      out.skipped.push_back({name, "only " + std::to_string(x.size()) + " complete rows"});
      continue;
    }
    try {
      const ClmFit fit = fit_clm(x, y, options);
      out.ranked.push_back({name, fit.fi, fit.beta, fit.converged, fit.separated, x.size(), false});
    } catch (const DomainError& e) {
      out.skipped.push_back({name, "constant scores"});
    }
  }
  std::sort(out.ranked.begin(), out.ranked.end(), [](const RankedMeasure& a, const RankedMeasure& b) {
    return a.fi != b.fi ? a.fi > b.fi : a.measure < b.measure;
  });
  if (!out.ranked.empty()) {
    double sum = 0;
    for (const auto& r : out.ranked) sum += r.fi;
    out.mean_fi = sum / static_cast<double>(out.ranked.size());
    for (auto& r : out.ranked) r.above_mean = r.fi > out.mean_fi;
  }
  return out;
}

std::map<std::string, int> read_labels(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::map<std::string, int> out;
  std::size_t line_no = 0;
  bool header = true;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    const auto fields = parse_csv_line(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() != 2) throw ValidationError(where + ": expected 'doc_id,label'");
    if (header) {
      header = false;
      continue;
    }
    long long v = 0;
    if (!parse_int(fields[1], v)) throw ValidationError(where + ": label must be an integer");
    if (!out.emplace(fields[0], static_cast<int>(v)).second) {
      throw ValidationError(where + ": duplicate doc_id '" + fields[0] + "'");
    }
  }
  return out;
}

}  // namespace speechcx
