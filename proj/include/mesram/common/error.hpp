#pragma once

#include <stdexcept>
#include <string>

namespace mesram {

/// Base class for every error raised by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MESRAM_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

MESRAM_DEFINE_ERROR(InvalidInput);
MESRAM_DEFINE_ERROR(ConfigError);
MESRAM_DEFINE_ERROR(LookupError);
MESRAM_DEFINE_ERROR(FormatError);
MESRAM_DEFINE_ERROR(PreconditionError);

// device
MESRAM_DEFINE_ERROR(SwitchingFailure);
MESRAM_DEFINE_ERROR(IndeterminateState);

// cell
MESRAM_DEFINE_ERROR(IllegalSignaling);
MESRAM_DEFINE_ERROR(BusyError);
MESRAM_DEFINE_ERROR(RestoreFailure);

// array
MESRAM_DEFINE_ERROR(AddressError);
MESRAM_DEFINE_ERROR(MultiRowActivation);

// arch / bnn
MESRAM_DEFINE_ERROR(SpecError);
MESRAM_DEFINE_ERROR(ShapeError);
MESRAM_DEFINE_ERROR(MappingError);

#undef MESRAM_DEFINE_ERROR

}  // namespace mesram
