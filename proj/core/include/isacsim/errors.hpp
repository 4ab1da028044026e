#pragma once

#include <stdexcept>
#include <string>

namespace isacsim {

/// Base class for all library errors. Configuration problems derive from
/// ConfigError, runtime numerical breakdowns from NumericalError; the CLI
/// maps these onto exit codes 2 and 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// frame
struct NonUniformSpacing : ConfigError { using ConfigError::ConfigError; };
struct NotDownlink : ConfigError { using ConfigError::ConfigError; };

// waveform
struct TooManySubcarriers : ConfigError { using ConfigError::ConfigError; };

// scene
struct RangeBeyondWindow : ConfigError { using ConfigError::ConfigError; };

// rdproc
struct WrongOrigin : ConfigError { using ConfigError::ConfigError; };
struct TooFewNoiseCells : ConfigError { using ConfigError::ConfigError; };

// clutter
struct Diverged : NumericalError { using NumericalError::NumericalError; };
struct DimensionMismatch : ConfigError { using ConfigError::ConfigError; };
struct TooFewPulses : ConfigError { using ConfigError::ConfigError; };

// detect
struct WindowTooLarge : ConfigError { using ConfigError::ConfigError; };
struct NoPeaksFound : Error { using Error::Error; };
struct TooFewSamples : ConfigError { using ConfigError::ConfigError; };
struct DegenerateGeometry : NumericalError { using NumericalError::NumericalError; };

// track
struct InvalidArray : ConfigError { using ConfigError::ConfigError; };
struct AmbiguousAngle : ConfigError { using ConfigError::ConfigError; };
struct NonPsdCovariance : NumericalError { using NumericalError::NumericalError; };

}  // namespace isacsim
