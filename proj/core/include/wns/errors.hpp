#pragma once

#include <stdexcept>
#include <string>

namespace wns {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

#define WNS_DEFINE_ERROR(Name)                                  \
    struct Name : Error {                                       \
        explicit Name(const std::string& m) : Error(#Name ": " + m) {} \
    }

WNS_DEFINE_ERROR(GridMismatch);
WNS_DEFINE_ERROR(NonZeroMean);
WNS_DEFINE_ERROR(NegativeTime);
WNS_DEFINE_ERROR(WindowTooShort);
WNS_DEFINE_ERROR(UnsupportedKind);
WNS_DEFINE_ERROR(UnknownDirection);
WNS_DEFINE_ERROR(OutOfBall);
WNS_DEFINE_ERROR(NonIntegerPeriod);
WNS_DEFINE_ERROR(UnderResolved);
WNS_DEFINE_ERROR(NotDivergenceFree);
WNS_DEFINE_ERROR(EnergyConstraintViolated);
WNS_DEFINE_ERROR(DatumTooLarge);
WNS_DEFINE_ERROR(NegativePumping);
WNS_DEFINE_ERROR(SeamMismatch);
WNS_DEFINE_ERROR(OutOfRange);
WNS_DEFINE_ERROR(ConfigError);
WNS_DEFINE_ERROR(IoError);

#undef WNS_DEFINE_ERROR

}  // namespace wns
