/*
   Copyright 2026 The cabl Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cabl {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed files, out-of-domain arguments, incomplete data.
// The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A computation that could not be carried out on otherwise valid input
// (singular matrices, failed fits, undefined ratios). CLI exit code 1.
class NumericError : public Error {
public:
    using Error::Error;
};

class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ConflictError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IncompletePanelError : public ValidationError {
public:
    IncompletePanelError(const std::string& specimen, const std::string& element)
        : ValidationError("specimen '" + specimen + "' has no measurement for " + element),
          specimen_(specimen), element_(element) {}

    const std::string& specimen() const noexcept { return specimen_; }
    const std::string& element() const noexcept { return element_; }

private:
    std::string specimen_;
    std::string element_;
};

class InsufficientReplicatesError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Raised by tests that need degrees of freedom when handed a single
// Poisson-counted observation.
class NoDegreesOfFreedomError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DesignError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class TooFewBinsError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class RankError : public NumericError {
public:
    using NumericError::NumericError;
};

class FitError : public NumericError {
public:
    using NumericError::NumericError;
};

class UndefinedRatioError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace cabl
