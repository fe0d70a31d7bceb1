#pragma once

#include <stdexcept>
#include <string>

namespace divkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define DIVKIT_ERROR(Name)                        \
    struct Name : Error {                         \
        explicit Name(const std::string& what)    \
            : Error(#Name ": " + what) {}         \
    }

DIVKIT_ERROR(NonPositiveWeight);
DIVKIT_ERROR(TooShort);
DIVKIT_ERROR(AllZeroCounts);
DIVKIT_ERROR(NonPositiveAlpha);
DIVKIT_ERROR(UnknownId);
DIVKIT_ERROR(NonPositiveX);
DIVKIT_ERROR(IndexOutOfRange);
DIVKIT_ERROR(DimensionMismatch);
DIVKIT_ERROR(Overflow);
DIVKIT_ERROR(InvalidPair);
DIVKIT_ERROR(ZeroDenominator);
DIVKIT_ERROR(OneSidedMismatch);
DIVKIT_ERROR(InvalidChain);

#undef DIVKIT_ERROR

}  // namespace divkit
