#pragma once

#include <stdexcept>
#include <string>

namespace minsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInputError : Error {
    using Error::Error;
};

struct UndefinedSimilarityError : Error {
    using Error::Error;
};

struct UniverseMismatchError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct InvalidLawError : Error {
    using Error::Error;
};

struct EnumerationLimitError : Error {
    using Error::Error;
};

struct ConditioningFailureError : Error {
    using Error::Error;
};

}  // namespace minsim
