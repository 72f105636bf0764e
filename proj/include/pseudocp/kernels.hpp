#pragma once

// Grid kernels over parameter points. Each *_parallel kernel is an OpenMP
// loop; the *_serial twin is the reference it is tested against.

#include <vector>

#include "pseudocp/ruled.hpp"

namespace pseudocp {

VectorField evaluate_points_serial(const Immersion& im, const std::vector<ParamPoint>& grid);
VectorField evaluate_points_parallel(const Immersion& im, const std::vector<ParamPoint>& grid);

std::vector<ShapeReport> shape_reports_serial(const Immersion& im,
                                              const std::vector<ParamPoint>& grid);
std::vector<ShapeReport> shape_reports_parallel(const Immersion& im,
                                                const std::vector<ParamPoint>& grid);

std::vector<double> codazzi_residuals_serial(const Immersion& im,
                                             const std::vector<ParamPoint>& grid);
std::vector<double> codazzi_residuals_parallel(const Immersion& im,
                                               const std::vector<ParamPoint>& grid);

}  // namespace pseudocp
