#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uu {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ingest
class DuplicateInSource : public Error { public: using Error::Error; };
class ConflictingValue : public Error { public: using Error::Error; };
class NonFiniteValue : public Error { public: using Error::Error; };

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }
private:
    std::size_t line_;
};

// statistics
class EmptySample : public Error { public: using Error::Error; };
class InsufficientSample : public Error { public: using Error::Error; };
class ZeroCoverage : public Error { public: using Error::Error; };
class DivergentEstimate : public Error { public: using Error::Error; };
class InsufficientUnique : public Error { public: using Error::Error; };

// monte carlo
class SourceLargerThanPopulation : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class InvalidDistribution : public Error { public: using Error::Error; };

// simulator / cli
class InvalidConfig : public Error { public: using Error::Error; };

} // namespace uu
