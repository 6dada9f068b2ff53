// errors.hpp: Exception types raised by the solvers

#pragma once

#include <stdexcept>
#include <string>

namespace squidcouple {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define SQUIDCOUPLE_ERROR(Name)                                         \
    struct Name : Error {                                               \
        using Error::Error;                                             \
        const char* kind() const noexcept override { return #Name; }    \
    }

SQUIDCOUPLE_ERROR(InvalidArgument);
SQUIDCOUPLE_ERROR(NoConvergence);
SQUIDCOUPLE_ERROR(BeyondCritical);
SQUIDCOUPLE_ERROR(SingularPhase);
SQUIDCOUPLE_ERROR(NoSignChange);
SQUIDCOUPLE_ERROR(InfiniteLifetime);
SQUIDCOUPLE_ERROR(OutOfRange);
SQUIDCOUPLE_ERROR(StepTooLarge);
SQUIDCOUPLE_ERROR(NotUnitary);
SQUIDCOUPLE_ERROR(DegenerateSplittings);
SQUIDCOUPLE_ERROR(InfeasibleLocalGate);
SQUIDCOUPLE_ERROR(ConfigError);

#undef SQUIDCOUPLE_ERROR

}  // namespace squidcouple
