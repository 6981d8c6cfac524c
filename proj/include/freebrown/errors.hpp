#pragma once

#include <stdexcept>
#include <string>

namespace freebrown {

// Base class for all numerical failures raised by the library.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class NonFiniteInput : public NumericError {
public:
    explicit NonFiniteInput(const std::string& what) : NumericError(what) {}
};

class DivergentIntegral : public NumericError {
public:
    explicit DivergentIntegral(const std::string& what) : NumericError(what) {}
};

class QuadratureFailure : public NumericError {
public:
    explicit QuadratureFailure(const std::string& what) : NumericError(what) {}
};

class OnSupport : public NumericError {
public:
    explicit OnSupport(const std::string& what) : NumericError(what) {}
};

class ImaginaryResidual : public NumericError {
public:
    explicit ImaginaryResidual(const std::string& what) : NumericError(what) {}
};

class ResolutionTooCoarse : public NumericError {
public:
    explicit ResolutionTooCoarse(const std::string& what) : NumericError(what) {}
};

class BracketFailure : public NumericError {
public:
    explicit BracketFailure(const std::string& what) : NumericError(what) {}
};

class OutsideDomain : public NumericError {
public:
    explicit OutsideDomain(const std::string& what) : NumericError(what) {}
};

class OutsideLambda : public NumericError {
public:
    explicit OutsideLambda(const std::string& what) : NumericError(what) {}
};

class OutsideLambdaClosure : public NumericError {
public:
    explicit OutsideLambdaClosure(const std::string& what) : NumericError(what) {}
};

class OutsideOmega : public NumericError {
public:
    explicit OutsideOmega(const std::string& what) : NumericError(what) {}
};

class BeyondLifetime : public NumericError {
public:
    explicit BeyondLifetime(const std::string& what) : NumericError(what) {}
};

class NegativeSquare : public NumericError {
public:
    explicit NegativeSquare(const std::string& what) : NumericError(what) {}
};

class ConvergenceFailure : public NumericError {
public:
    explicit ConvergenceFailure(const std::string& what) : NumericError(what) {}
};

class UnsupportedSampling : public NumericError {
public:
    explicit UnsupportedSampling(const std::string& what) : NumericError(what) {}
};

} // namespace freebrown
