#pragma once

#include <stdexcept>
#include <string>

namespace pseudocp {

/// Root of every exception thrown by the library.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PSEUDOCP_DECLARE_ERROR(Name)              \
  class Name : public GeometryError {             \
   public:                                        \
    using GeometryError::GeometryError;           \
  }

PSEUDOCP_DECLARE_ERROR(SignatureError);
PSEUDOCP_DECLARE_ERROR(DimensionError);
PSEUDOCP_DECLARE_ERROR(SpherePointError);
PSEUDOCP_DECLARE_ERROR(NotProjectablePoint);
PSEUDOCP_DECLARE_ERROR(LogMapError);
PSEUDOCP_DECLARE_ERROR(BasePointError);
PSEUDOCP_DECLARE_ERROR(CausalCharacterError);
PSEUDOCP_DECLARE_ERROR(FrameError);
PSEUDOCP_DECLARE_ERROR(PlaneError);
PSEUDOCP_DECLARE_ERROR(IndexError);
PSEUDOCP_DECLARE_ERROR(SamplingError);
PSEUDOCP_DECLARE_ERROR(SpeedError);
PSEUDOCP_DECLARE_ERROR(LiftError);
PSEUDOCP_DECLARE_ERROR(ChartError);
PSEUDOCP_DECLARE_ERROR(ImmersionError);
PSEUDOCP_DECLARE_ERROR(DegenerateHypersurfaceError);
PSEUDOCP_DECLARE_ERROR(EmptyGridError);
PSEUDOCP_DECLARE_ERROR(ClassificationError);
PSEUDOCP_DECLARE_ERROR(DomainError);
PSEUDOCP_DECLARE_ERROR(CrossCheckError);

#undef PSEUDOCP_DECLARE_ERROR

}  // namespace pseudocp
