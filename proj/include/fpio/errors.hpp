#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fpio {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the admissible domain (R >= 1, l/c <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An input failed an invariant check: lossless mirror identities,
/// Hermiticity, normalization, kernel symmetry.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numeric degeneracy: singular cavity, degenerate metric, undefined
/// linewidth or distribution, singular N(alpha) composition.
class SingularError : public Error {
public:
    using Error::Error;
};

/// |D(omega)| fell below the inversion floor.
class ResonanceError : public SingularError {
public:
    using SingularError::SingularError;
};

/// Scenario configuration problem. `path()` names the offending field
/// (dot separated, e.g. "cavity.length_over_c").
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& what)
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace fpio
