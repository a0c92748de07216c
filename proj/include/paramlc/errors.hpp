#pragma once

#include <stdexcept>
#include <string>

namespace paramlc {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// specfun
class NonConvergence : public Error { public: using Error::Error; };
class PoleParameter : public Error { public: using Error::Error; };

// exact_ness / fockspace
class DegenerateState : public Error { public: using Error::Error; };
class CutoffTooSmall : public Error { public: using Error::Error; };
class BadModeIndex : public Error { public: using Error::Error; };
class EigenFailure : public Error { public: using Error::Error; };
class Infeasible : public Error { public: using Error::Error; };

// liouville
class DimensionOverflow : public Error { public: using Error::Error; };
class DegenerateKernel : public Error { public: using Error::Error; };

// semiclassics / stochastics
class StepUnstable : public Error { public: using Error::Error; };
class BelowThreshold : public Error { public: using Error::Error; };
class StepTooLarge : public Error { public: using Error::Error; };
class NotAntisymmetric : public Error { public: using Error::Error; };

// cli
class ConfigInvalid : public Error { public: using Error::Error; };

} // namespace paramlc
