#pragma once
/**
 * @file   errors.hpp
 * @brief  Exception hierarchy raised by the library.
 */

#include <stdexcept>
#include <string>

namespace cpf
{
    /// Base class of every error thrown by cpf.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Invalid user-provided input (parameters, scenario, path definition).
    class ValidationError : public Error
    {
    public:
        using Error::Error;
    };

    /// A path exceeds the declared curvature bound.
    class CurvatureBoundExceeded : public ValidationError
    {
    public:
        using ValidationError::ValidationError;
    };

    /// A B-spline whose first derivative vanishes somewhere.
    class DegenerateSpline : public ValidationError
    {
    public:
        using ValidationError::ValidationError;
    };

    /// No feasible coordination-set parameters exist for the given limits.
    class Infeasible : public ValidationError
    {
    public:
        using ValidationError::ValidationError;
    };

    /// Several global closest points tie for a query far from the path.
    class ProjectionAmbiguous : public Error
    {
    public:
        using Error::Error;
    };

    /// 1 - kappa * rho <= 0 in the error dynamics.
    class SingularDenominator : public Error
    {
    public:
        using Error::Error;
    };

    /// A control law was asked to act outside the region it is defined on.
    class WrongRegion : public Error
    {
    public:
        using Error::Error;
    };

    /// The lateral error left the controlled universe |rho| <= R2.
    class OutsideUniverse : public Error
    {
    public:
        using Error::Error;
    };

} // namespace cpf
