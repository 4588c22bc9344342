#pragma once

#include <stdexcept>
#include <string>

namespace lpb {

// Base error; `kind()` is a stable machine-readable tag used by the CLI
// to pick exit codes and emit structured stderr.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define LPB_DEFINE_ERROR(Name, Kind)                          \
    class Name : public Error {                               \
    public:                                                   \
        explicit Name(const std::string& msg)                 \
            : Error(Kind, msg) {}                             \
    }

LPB_DEFINE_ERROR(UnboundedBody, "unbounded_body");
LPB_DEFINE_ERROR(EmptyInterior, "empty_interior");
LPB_DEFINE_ERROR(SingularMatrix, "singular_matrix");
LPB_DEFINE_ERROR(QuadratureMissing, "quadrature_missing");
LPB_DEFINE_ERROR(EmptyMeasure, "empty_measure");
LPB_DEFINE_ERROR(HemisphereViolation, "hemisphere_violation");
LPB_DEFINE_ERROR(NotConverged, "not_converged");
LPB_DEFINE_ERROR(DimensionMismatch, "dimension_mismatch");
LPB_DEFINE_ERROR(TrivialFunction, "trivial_function");
LPB_DEFINE_ERROR(MeshOverlayFailure, "mesh_overlay_failure");
LPB_DEFINE_ERROR(DegenerateDirection, "degenerate_direction");
LPB_DEFINE_ERROR(NonpositiveSupport, "nonpositive_support");
LPB_DEFINE_ERROR(DivergentIntegral, "divergent_integral");
LPB_DEFINE_ERROR(InputError, "input");

#undef LPB_DEFINE_ERROR

}  // namespace lpb
