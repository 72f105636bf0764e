#include "pseudocp/kernels.hpp"

#include <algorithm>
#include <exception>

namespace pseudocp {

namespace {

// Runs body(i) for every i; the first exception thrown by any iteration is
// rethrown once the loop has finished.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  std::exception_ptr error;
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(pseudocp_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

VectorField evaluate_points_serial(const Immersion& im, const std::vector<ParamPoint>& grid) {
  VectorField out;
  out.reserve(grid.size());
  for (const auto& u : grid) out.push_back(im.point(u));
  return out;
}

VectorField evaluate_points_parallel(const Immersion& im, const std::vector<ParamPoint>& grid) {
  VectorField out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = im.point(grid[i]); });
  return out;
}

std::vector<ShapeReport> shape_reports_serial(const Immersion& im,
                                              const std::vector<ParamPoint>& grid) {
  std::vector<ShapeReport> out;
  out.reserve(grid.size());
  for (const auto& u : grid) out.push_back(shape_operator(im, u));
  return out;
}

std::vector<ShapeReport> shape_reports_parallel(const Immersion& im,
                                                const std::vector<ParamPoint>& grid) {
  std::vector<ShapeReport> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = shape_operator(im, grid[i]); });
  return out;
}

std::vector<double> codazzi_residuals_serial(const Immersion& im,
                                             const std::vector<ParamPoint>& grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& u : grid) out.push_back(codazzi_residual(im, u));
  return out;
}

std::vector<double> codazzi_residuals_parallel(const Immersion& im,
                                               const std::vector<ParamPoint>& grid) {
  std::vector<double> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = codazzi_residual(im, grid[i]); });
  return out;
}

RuledReport verify_ruled(const Immersion& im, const std::vector<ParamPoint>& grid,
                         std::size_t codazzi_stride, double tol) {
  RuledReport rep;
  rep.samples = grid.size();
  for (const auto& r : shape_reports_parallel(im, grid)) {
    rep.dd_block_max = std::max(rep.dd_block_max, r.dd_block_max);
  }
  std::vector<ParamPoint> subset;
  const std::size_t stride = std::max<std::size_t>(codazzi_stride, 1);
  for (std::size_t i = 0; i < grid.size(); i += stride) subset.push_back(grid[i]);
  rep.codazzi_samples = subset.size();
  for (double c : codazzi_residuals_parallel(im, subset)) {
    rep.codazzi_max = std::max(rep.codazzi_max, c);
  }
  rep.pass = rep.dd_block_max <= tol && rep.codazzi_max <= tol;
  return rep;
}

MinimalityReport minimality(const Immersion& im, const std::vector<ParamPoint>& grid,
                            double tol) {
  if (grid.empty()) throw EmptyGridError("minimality needs at least one grid point");
  MinimalityReport rep;
  for (const auto& r : shape_reports_parallel(im, grid)) {
    rep.max_mu = std::max(rep.max_mu, std::abs(r.mu));
    rep.max_trace = std::max(rep.max_trace, std::abs(r.g_trace));
  }
  rep.minimal = rep.max_mu <= tol;
  return rep;
}

}  // namespace pseudocp
