#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A basis matrix is (numerically) singular where a nonsingular one is required.
class SingularBasis : public Error {
public:
    using Error::Error;
};

// Predicted enumeration candidate count exceeds the configured cap; the
// request is infeasible at desk scale.
class RadiusTooLarge : public Error {
public:
    using Error::Error;
};

// A basis determinant deviates from ±1 beyond tolerance and rescaling was not
// permitted by the caller.
class NotUnimodular : public Error {
public:
    using Error::Error;
};

// The zero vector was passed where a nonzero vector is required.
class ZeroVector : public Error {
public:
    using Error::Error;
};

// Vector/function/lattice dimensions disagree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// The ambient dimension is below the minimum an operation supports.
class DimensionTooSmall : public Error {
public:
    using Error::Error;
};

// A sampler spec is invalid for the requested dimension.
class SpecMismatch : public Error {
public:
    using Error::Error;
};

// Goldstein–Mayer modulus is not a prime ≥ 101.
class InvalidPrime : public Error {
public:
    using Error::Error;
};

// An even function was required (inversion machinery) but the argument is not
// even.
class OddFunction : public Error {
public:
    using Error::Error;
};

// An odd function was required (annihilation check) but the argument is not
// odd.
class NotOdd : public Error {
public:
    using Error::Error;
};

// An evaluation point is within the configured margin of a discontinuity of
// the test function; the inversion identity only holds almost everywhere.
class BoundaryPoint : public Error {
public:
    using Error::Error;
};

// A nonnegative function was required but the argument can take negative
// values.
class NegativeFunction : public Error {
public:
    using Error::Error;
};

// Fewer samples than the estimator/check requires.
class TooFewSamples : public Error {
public:
    using Error::Error;
};

// Declared parity contradicts sampled function values.
class ParityViolation : public Error {
public:
    using Error::Error;
};

// No closed-form expression is available (cross-integrals of unsupported
// shape combinations).
class NoClosedForm : public Error {
public:
    using Error::Error;
};

// Experiment configuration is invalid (CLI exit code 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace siegel
