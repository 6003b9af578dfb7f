#include "fitztk/conjugate.hpp"

#include <algorithm>
#include <cmath>

namespace fitztk {

GridFunction::GridFunction(std::vector<double> xs, std::vector<ExtendedReal> vals) {
  axes.push_back(std::move(xs));
  values = std::move(vals);
  validate();
}

GridFunction::GridFunction(std::vector<double> xs, std::vector<double> ys,
                           std::vector<ExtendedReal> vals) {
  axes.push_back(std::move(xs));
  axes.push_back(std::move(ys));
  values = std::move(vals);
  validate();
}

std::size_t GridFunction::node_count() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

void GridFunction::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw InvariantError("GridFunction: 1 or 2 axes required");
  }
  for (const auto& a : axes) {
    if (a.empty()) throw InvariantError("GridFunction: empty axis");
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (!(a[i] > a[i - 1])) throw InvariantError("GridFunction: axis must be strictly increasing");
    }
  }
  if (values.size() != node_count()) {
    throw InvariantError("GridFunction: value count does not match the grid");
  }
  bool any_finite = false;
  for (const ExtendedReal& v : values) {
    if (v.is_minus_inf()) throw InvariantError("GridFunction: -inf values are not allowed");
    any_finite = any_finite || v.is_finite();
  }
  if (!any_finite) throw InvariantError("GridFunction: improper (no finite value)");
}

namespace {

// 1-D conjugate of (xs, vals) evaluated at the ascending slopes ss.
// Rows without finite nodes yield -inf (the empty supremum); such rows only
// occur as intermediates of the 2-D factorization.
std::vector<ExtendedReal> conj_axis(const std::vector<double>& xs,
                                    const std::vector<ExtendedReal>& vals,
                                    const std::vector<double>& ss, bool fast) {
  std::vector<double> hx, hf;
  hx.reserve(xs.size());
  hf.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (vals[i].is_finite()) {
      hx.push_back(xs[i]);
      hf.push_back(vals[i].value());
    }
  }
  std::vector<ExtendedReal> out(ss.size(), ExtendedReal::minus_inf());
  if (hx.empty()) return out;

  if (!fast) {
    for (std::size_t k = 0; k < ss.size(); ++k) {
      double best = ss[k] * hx[0] - hf[0];
      for (std::size_t i = 1; i < hx.size(); ++i) {
        best = std::max(best, ss[k] * hx[i] - hf[i]);
      }
      out[k] = ExtendedReal(best);
    }
    return out;
  }

  // lower convex hull of the finite samples; chord slopes nondecreasing
  std::vector<std::size_t> hull;
  auto drop_middle = [&](std::size_t a, std::size_t b, std::size_t c) {
    // (x_b, f_b) at or above the chord a -> c
    double lhs = (hf[b] - hf[a]) * (hx[c] - hx[a]);
    double rhs = (hf[c] - hf[a]) * (hx[b] - hx[a]);
    return lhs >= rhs;
  };
  for (std::size_t i = 0; i < hx.size(); ++i) {
    while (hull.size() >= 2 && drop_middle(hull[hull.size() - 2], hull.back(), i)) {
      hull.pop_back();
    }
    hull.push_back(i);
  }

  std::size_t j = 0;
  for (std::size_t k = 0; k < ss.size(); ++k) {
    double s = ss[k];
    while (j + 1 < hull.size() &&
           s * hx[hull[j + 1]] - hf[hull[j + 1]] >= s * hx[hull[j]] - hf[hull[j]]) {
      ++j;
    }
    out[k] = ExtendedReal(s * hx[hull[j]] - hf[hull[j]]);
  }
  return out;
}

GridFunction conjugate_impl(const GridFunction& f,
                            const std::vector<std::vector<double>>& dual_axes, bool fast) {
  if (dual_axes.size() != f.axes.size()) {
    throw InvariantError("conjugate: dual axis count must match the primal grid");
  }
  for (const auto& a : dual_axes) {
    if (a.empty()) throw InvariantError("conjugate: empty dual axis");
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (!(a[i] > a[i - 1])) throw InvariantError("conjugate: dual axis must be strictly increasing");
    }
  }

  if (f.dims() == 1) {
    std::vector<ExtendedReal> vals = conj_axis(f.axes[0], f.values, dual_axes[0], fast);
    return GridFunction(dual_axes[0], std::move(vals));
  }

  const std::size_t nx = f.axes[0].size();
  const std::size_t ny = f.axes[1].size();
  const std::size_t m1 = dual_axes[0].size();
  const std::size_t m2 = dual_axes[1].size();

  if (!fast) {
    std::vector<ExtendedReal> vals(m1 * m2, ExtendedReal::minus_inf());
    for (std::size_t k1 = 0; k1 < m1; ++k1) {
      for (std::size_t k2 = 0; k2 < m2; ++k2) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < nx; ++i) {
          for (std::size_t jj = 0; jj < ny; ++jj) {
            ExtendedReal v = f.at(i, jj);
            if (!v.is_finite()) continue;
            double cand = dual_axes[0][k1] * f.axes[0][i] +
                          (dual_axes[1][k2] * f.axes[1][jj] - v.value());
            best = std::max(best, cand);
          }
        }
        vals[k1 * m2 + k2] = ExtendedReal(best);
      }
    }
    return GridFunction(dual_axes[0], dual_axes[1], std::move(vals));
  }

  // inner pass: conjugate each x-row along y onto the second dual axis
  std::vector<ExtendedReal> inner(nx * m2, ExtendedReal::minus_inf());
  std::vector<ExtendedReal> row(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t jj = 0; jj < ny; ++jj) row[jj] = f.at(i, jj);
    std::vector<ExtendedReal> h = conj_axis(f.axes[1], row, dual_axes[1], true);
    for (std::size_t k2 = 0; k2 < m2; ++k2) inner[i * m2 + k2] = h[k2];
  }

  // outer pass: conjugate -h along x for each fixed dual slope
  std::vector<ExtendedReal> vals(m1 * m2, ExtendedReal::minus_inf());
  std::vector<ExtendedReal> col(nx);
  for (std::size_t k2 = 0; k2 < m2; ++k2) {
    for (std::size_t i = 0; i < nx; ++i) {
      ExtendedReal h = inner[i * m2 + k2];
      col[i] = h.is_minus_inf() ? ExtendedReal::plus_inf() : ExtendedReal(-h.value());
    }
    std::vector<ExtendedReal> g = conj_axis(f.axes[0], col, dual_axes[0], true);
    for (std::size_t k1 = 0; k1 < m1; ++k1) vals[k1 * m2 + k2] = g[k1];
  }
  return GridFunction(dual_axes[0], dual_axes[1], std::move(vals));
}

std::vector<double> finite_difference_slopes(const std::vector<double>& xs,
                                             const std::vector<ExtendedReal>& vals) {
  std::vector<double> slopes;
  std::ptrdiff_t prev = -1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!vals[i].is_finite()) continue;
    if (prev >= 0) {
      slopes.push_back((vals[i].value() - vals[prev].value()) / (xs[i] - xs[prev]));
    }
    prev = static_cast<std::ptrdiff_t>(i);
  }
  return slopes;
}

std::vector<double> dual_axis_from_slopes(std::vector<double> slopes, std::size_t cardinality,
                                          bool enrich) {
  double lo = -1.0, hi = 1.0;
  if (!slopes.empty()) {
    auto [mn, mx] = std::minmax_element(slopes.begin(), slopes.end());
    double span = *mx - *mn;
    if (span < 1e-12) span = std::max(1.0, std::abs(*mn));
    lo = *mn - 0.05 * span;
    hi = *mx + 0.05 * span;
  }
  std::size_t n = std::max<std::size_t>(cardinality, 2);
  std::vector<double> axis(n);
  for (std::size_t i = 0; i < n; ++i) {
    axis[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (enrich) {
    axis.insert(axis.end(), slopes.begin(), slopes.end());
  }
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  return axis;
}

std::vector<std::vector<double>> default_axes(const GridFunction& f, bool enrich) {
  std::vector<std::vector<double>> duals;
  if (f.dims() == 1) {
    duals.push_back(dual_axis_from_slopes(finite_difference_slopes(f.axes[0], f.values),
                                          f.axes[0].size(), enrich));
    return duals;
  }
  const std::size_t nx = f.axes[0].size();
  const std::size_t ny = f.axes[1].size();
  std::vector<double> sx, sy;
  std::vector<ExtendedReal> line(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) line[j] = f.at(i, j);
    auto s = finite_difference_slopes(f.axes[1], line);
    sy.insert(sy.end(), s.begin(), s.end());
  }
  std::vector<ExtendedReal> colv(nx);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) colv[i] = f.at(i, j);
    auto s = finite_difference_slopes(f.axes[0], colv);
    sx.insert(sx.end(), s.begin(), s.end());
  }
  duals.push_back(dual_axis_from_slopes(std::move(sx), nx, enrich));
  duals.push_back(dual_axis_from_slopes(std::move(sy), ny, enrich));
  return duals;
}

}  // namespace

std::vector<double> default_dual_axis(const std::vector<double>& xs,
                                      const std::vector<ExtendedReal>& vals) {
  return dual_axis_from_slopes(finite_difference_slopes(xs, vals), xs.size(), false);
}

GridFunction brute_conjugate(const GridFunction& f,
                             const std::vector<std::vector<double>>& dual_axes) {
  return conjugate_impl(f, dual_axes, false);
}

GridFunction fast_conjugate(const GridFunction& f,
                            const std::vector<std::vector<double>>& dual_axes) {
  return conjugate_impl(f, dual_axes, true);
}

GridFunction brute_conjugate(const GridFunction& f) {
  return conjugate_impl(f, default_axes(f, false), false);
}

GridFunction fast_conjugate(const GridFunction& f) {
  return conjugate_impl(f, default_axes(f, false), true);
}

GridFunction biconjugate(const GridFunction& f) {
  GridFunction fstar = fast_conjugate(f, default_axes(f, true));
  return fast_conjugate(fstar, f.axes);
}

std::vector<SlackReport> fenchel_young_check(const GridFunction& f, const GridFunction& fstar,
                                             int samples, Rng& rng, const TolerancePolicy& pol) {
  if (f.dims() != fstar.dims()) {
    throw InvariantError("fenchel_young_check: dimension mismatch");
  }
  std::vector<SlackReport> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    if (f.dims() == 1) {
      std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(f.axes[0].size()) - 1));
      std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(fstar.axes[0].size()) - 1));
      ExtendedReal lhs(f.axes[0][i] * fstar.axes[0][j]);
      ExtendedReal rhs = f.values[i] + fstar.values[j];
      out.push_back(make_slack(lhs, rhs, pol));
    } else {
      std::size_t i1 = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(f.axes[0].size()) - 1));
      std::size_t i2 = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(f.axes[1].size()) - 1));
      std::size_t j1 = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(fstar.axes[0].size()) - 1));
      std::size_t j2 = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(fstar.axes[1].size()) - 1));
      ExtendedReal lhs(f.axes[0][i1] * fstar.axes[0][j1] + f.axes[1][i2] * fstar.axes[1][j2]);
      ExtendedReal rhs = f.at(i1, i2) + fstar.at(j1, j2);
      out.push_back(make_slack(lhs, rhs, pol));
    }
  }
  return out;
}

}  // namespace fitztk
