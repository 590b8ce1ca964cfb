#pragma once

#include <stdexcept>
#include <string>

namespace uniteq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FactorTimeout : Error {
    using Error::Error;
};
struct NotSquarefree : Error {
    using Error::Error;
};
struct EllIsThree : Error {
    using Error::Error;
};
struct EllIsTwo : Error {
    using Error::Error;
};
struct PTooLarge : Error {
    using Error::Error;
};
struct SubsetBlowup : Error {
    using Error::Error;
};
struct ConductorNotExact : Error {
    using Error::Error;
};
struct NonConstantSymmetricFunction : Error {
    using Error::Error;
};
struct RamificationAssumptionFailed : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct RankDeficient : Error {
    using Error::Error;
};
struct PrecisionExhausted : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};
struct NotClosed : Error {
    using Error::Error;
};
struct NoProgress : Error {
    using Error::Error;
};

} // namespace uniteq
