#pragma once

#include <stdexcept>
#include <string>

namespace flagflow {

// Errors are split in two families so that front ends can map them to exit
// codes: bad input (parameters, domains) versus numerical failures.
enum class ErrorKind { Parameter, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define FLAGFLOW_DEFINE_ERROR(Name, Kind)                                     \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
    }

FLAGFLOW_DEFINE_ERROR(ParameterError, Parameter);
FLAGFLOW_DEFINE_ERROR(DomainError, Parameter);
FLAGFLOW_DEFINE_ERROR(HemisphereError, Parameter);
FLAGFLOW_DEFINE_ERROR(ChartDomainError, Parameter);
FLAGFLOW_DEFINE_ERROR(RootFindingError, Numerical);
FLAGFLOW_DEFINE_ERROR(NotAnEquilibriumError, Numerical);
FLAGFLOW_DEFINE_ERROR(ConsistencyError, Numerical);
FLAGFLOW_DEFINE_ERROR(StepUnderflowError, Numerical);
FLAGFLOW_DEFINE_ERROR(EmptyTrajectoryError, Numerical);

#undef FLAGFLOW_DEFINE_ERROR

} // namespace flagflow
