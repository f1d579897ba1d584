#pragma once

#include <stdexcept>
#include <string>

namespace dmim {

// Base class for all numeric-domain failures raised by this library.
// Flag/structure problems at the CLI layer are a different beast and are
// not funneled through here.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter outside its documented domain (a >= b, sigma <= 0, ...).
class InvalidParams : public Error {
public:
    using Error::Error;
};

// Integration interval with lower >= upper or NaN endpoints.
class InvalidDomain : public Error {
public:
    using Error::Error;
};

// Integrand produced NaN/Inf at an interior evaluation point.
class NonFinite : public Error {
public:
    using Error::Error;
};

// Subdivision budget exhausted before the tolerance was met.
class NonConvergent : public Error {
public:
    using Error::Error;
};

// Series term budget exhausted (extreme parameters only).
class SlowConvergence : public Error {
public:
    using Error::Error;
};

// An integral needed for an entropy/certificate does not converge.
class DivergentIntegral : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    using Error::Error;
};

class NonFiniteSample : public Error {
public:
    using Error::Error;
};

// A supposed CDF evaluated outside [0,1] at a sample point.
class InvalidCdf : public Error {
public:
    using Error::Error;
};

// Input so extreme that a formula degenerates (denominator underflow).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

// Custom distribution whose variance cannot be computed.
class MissingVariance : public Error {
public:
    using Error::Error;
};

// Operation not defined for this distribution family.
class UnsupportedFamily : public Error {
public:
    using Error::Error;
};

} // namespace dmim
